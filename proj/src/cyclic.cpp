#include "linset/cyclic.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "linset/errors.hpp"
#include "linset/io.hpp"
#include "linset/linear_set.hpp"

namespace linset {

namespace {

Vec unit_vec(const Tower& t, int len, int idx) {
    Vec v(size_t(len), t.zero());
    v[size_t(idx)] = t.one();
    return v;
}

// Span of the coordinate blocks selected by keep, as an F_{q^n}-subspace.
template <typename Pred>
Subspace block_span(const CyclicState& cs, Pred keep) {
    const Tower& t = *cs.prime.tower;
    std::vector<Vec> gens;
    for (int i = 0; i < cs.n(); ++i) {
        if (!keep(i)) continue;
        for (int j = 0; j < cs.r(); ++j) gens.push_back(unit_vec(t, cs.rn(), i * cs.r() + j));
    }
    return Subspace::span(cs.prime, gens, t.n());
}

Vec random_nonzero_vec(std::mt19937_64& rng, const Tower& t, int len) {
    Vec v(size_t(len), t.zero());
    do {
        for (Fe& x : v) x = random_element(rng, t);
    } while (vec_is_zero(v));
    return v;
}

std::string serialize_tuple(const Tower& t, const std::vector<Vec>& tuple) {
    std::string out;
    for (const Vec& v : tuple) {
        for (size_t j = 0; j < v.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(t.to_value(v[j]));
        }
        out += '\n';
    }
    return out;
}

}  // namespace

CyclicState cyclic_state(const Ambient& a) {
    if (!a.tower || a.r < 1) throw AmbientMismatchError("cyclic model needs a rank >= 1 ambient");
    return CyclicState{a, Ambient{a.tower, a.r * a.tower->n()}};
}

Vec apply_sigma(const CyclicState& cs, const Vec& w, int64_t k) {
    const Tower& t = *cs.prime.tower;
    const int rn = cs.rn();
    if (int(w.size()) != rn) throw AmbientMismatchError("apply_sigma: vector length mismatch");
    const int n = cs.n();
    const int kk = int(((k % n) + n) % n);
    const int shift = kk * cs.r();
    Vec out(size_t(rn), t.zero());
    for (int j = 0; j < rn; ++j) {
        int src = j - shift;
        if (src < 0) src += rn;
        out[size_t(j)] = t.frobenius(w[size_t(src)], kk);
    }
    return out;
}

Subspace apply_sigma(const CyclicState& cs, const Subspace& s, int64_t k) {
    if (!s.ambient().same(cs.prime))
        throw AmbientMismatchError("apply_sigma: subspace does not live in the block model");
    std::vector<Vec> rows;
    for (const Vec& b : s.base_basis_vectors()) rows.push_back(apply_sigma(cs, b, k));
    return Subspace::span(cs.prime, rows, s.base_degree());
}

Vec embed_fix(const CyclicState& cs, const Vec& v) {
    const Tower& t = *cs.base.tower;
    if (int(v.size()) != cs.r()) throw AmbientMismatchError("embed_fix: vector length mismatch");
    Vec out(size_t(cs.rn()), t.zero());
    for (int l = 0; l < cs.n(); ++l)
        for (int j = 0; j < cs.r(); ++j) out[size_t(l * cs.r() + j)] = t.frobenius(v[size_t(j)], l);
    return out;
}

Subspace fix_sigma(const CyclicState& cs) {
    const Tower& t = *cs.base.tower;
    std::vector<Vec> gens;
    for (int j = 0; j < cs.r(); ++j)
        for (int l = 0; l < cs.n(); ++l) {
            Vec v(size_t(cs.r()), t.zero());
            v[size_t(j)] = t.pow(t.gen(), l);
            gens.push_back(embed_fix(cs, v));
        }
    Subspace f = Subspace::span(cs.prime, gens, 1);
    if (f.dim() != cs.rn()) throw Error("fix_sigma: fixed space has unexpected dimension");
    return f;
}

Subspace block_space(const CyclicState& cs, int i) {
    if (i < 0 || i >= cs.n()) throw AmbientMismatchError("block_space: block index out of range");
    return block_span(cs, [&](int j) { return j == i; });
}

UiDecomposition decompose(const Subspace& u) {
    CyclicState cs = cyclic_state(u.ambient());
    const Tower& t = *cs.base.tower;
    const int n = cs.n();
    const int m = u.dim();
    if (m > (cs.r() - 1) * n)
        throw RankError("decompose: rank " + std::to_string(m) + " exceeds (r-1)n = " +
                        std::to_string((cs.r() - 1) * n));

    std::vector<Vec> emb;
    for (const Vec& b : u.basis_vectors()) emb.push_back(embed_fix(cs, b));
    Subspace un = Subspace::span(cs.prime, emb, n);
    if (un.dim_over_base() != m)
        throw Error("decompose: embedded span has top-field dimension " +
                    std::to_string(un.dim_over_base()) + ", expected " + std::to_string(m));
    if (!emb.empty() && apply_sigma(cs, emb.front(), n) != emb.front())
        throw Error("decompose: sigma does not have order dividing n");

    std::vector<Subspace> ui;
    ui.reserve(size_t(n));
    for (int i = 0; i < n; ++i)
        ui.push_back(intersect(un, block_span(cs, [&](int j) { return j != i; })));
    for (int i = 0; i < n; ++i)
        if (apply_sigma(cs, ui[size_t(i)]) != ui[size_t((i + 1) % n)])
            throw Error("decompose: sigma does not shift the block kernels");

    int d = n;
    for (int cand : t.subfield_degrees())
        if (ui[size_t(cand % n)] == ui[0]) {
            d = cand;
            break;
        }

    std::vector<Subspace> ubar_i;
    ubar_i.reserve(size_t(d));
    int dim_sum = 0;
    for (int i = 0; i < d; ++i) {
        Subspace big = sum(un, block_span(cs, [&](int h) { return h % d != i; }));
        Subspace part = intersect(big, block_span(cs, [&](int h) { return h % d == i; }));
        dim_sum += part.dim();
        ubar_i.push_back(std::move(part));
    }
    Subspace ubar = ubar_i.front();
    for (int i = 1; i < d; ++i) ubar = sum(ubar, ubar_i[size_t(i)]);
    if (ubar.dim() != dim_sum) throw Error("decompose: block summands are not independent");

    return UiDecomposition{std::move(cs), u,       std::move(un),    std::move(ui),
                           d,             std::move(ubar_i), std::move(ubar)};
}

Subspace fixed_projection(const UiDecomposition& dec) {
    const CyclicState& cs = dec.state;
    Subspace fixed = intersect(dec.Ubar, fix_sigma(cs));
    std::vector<Vec> proj;
    for (const Vec& b : fixed.basis_vectors()) proj.emplace_back(b.begin(), b.begin() + cs.r());
    return Subspace::span(cs.base, proj, 1);
}

VerificationOutcome check_cyclic_inclusion(const UiDecomposition& dec) {
    const std::string id = "cyclic_inclusion";
    nlohmann::json details{{"d", dec.d},
                           {"span_dim", dec.Un.dim_over_base()},
                           {"cover_dim", dec.Ubar.dim_over_base()}};
    if (dec.Ubar.contains(dec.Un)) return make_pass(id, details);
    return make_fail(id, serialize_subspace(dec.u), details);
}

VerificationOutcome check_cyclic_projection(const UiDecomposition& dec) {
    const std::string id = "cyclic_projection";
    Subspace proj = fixed_projection(dec);
    Subspace closure = scalar_span_over(dec.u, dec.d);
    nlohmann::json details{
        {"d", dec.d}, {"projection_dim", proj.dim()}, {"closure_dim", closure.dim()}};
    if (proj == closure) return make_pass(id, details);
    return make_fail(id,
                     "# input\n" + serialize_subspace(dec.u) + "# projection\n" +
                         serialize_subspace(proj),
                     details);
}

VerificationOutcome check_cyclic_equality(const UiDecomposition& dec, uint64_t enum_cap) {
    const std::string id = "cyclic_equality";
    const Tower& t = *dec.u.tower();
    nlohmann::json details{{"d", dec.d}, {"q", t.q()}, {"n", t.n()}};
    if (uint64_t(t.n()) > t.q()) return make_hypothesis_unmet(id, details);
    if (dec.u.is_zero()) return make_vacuous(id, details);
    const int minw = LinearSet::of(dec.u, enum_cap).min_weight();
    details["min_weight"] = minw;
    if (minw < 2) return make_hypothesis_unmet(id, details);
    Subspace pull = fixed_projection(dec);
    details["rank"] = dec.u.dim();
    details["pullback_rank"] = pull.dim();
    if (same_linear_set(dec.u, pull, enum_cap)) return make_pass(id, details);
    return make_fail(
        id, "# input\n" + serialize_subspace(dec.u) + "# pullback\n" + serialize_subspace(pull),
        details);
}

VerificationOutcome check_reducibility(const UiDecomposition& dec, int samples, uint64_t seed,
                                       uint64_t enum_cap) {
    const std::string id = "reducibility";
    const CyclicState& cs = dec.state;
    const Tower& t = *cs.base.tower;
    nlohmann::json details{{"q", t.q()}, {"n", t.n()}, {"samples", samples}, {"seed", seed}};
    if (uint64_t(t.n()) > t.q()) return make_hypothesis_unmet(id, details);
    if (dec.u.is_zero()) return make_vacuous(id, details);
    LinearSet ls = LinearSet::of(dec.u, enum_cap);
    const int minw = ls.min_weight();
    details["min_weight"] = minw;
    if (minw < 2) return make_hypothesis_unmet(id, details);

    std::mt19937_64 rng(seed);
    const std::vector<Vec> span_rows = dec.Un.base_basis_vectors();
    uint64_t hits = 0;
    for (int s = 0; s < samples; ++s) {
        // Even draws start from a random nonzero vector of Un; its nonzero
        // blocks become tuple entries, so the span of the tuple meets Un.
        Vec support;
        const bool seeded = (s % 2 == 0) && !span_rows.empty();
        if (seeded) {
            do {
                support.assign(size_t(cs.rn()), t.zero());
                for (const Vec& row : span_rows) {
                    Fe c = random_element(rng, t);
                    if (c.is_zero()) continue;
                    for (int j = 0; j < cs.rn(); ++j)
                        support[size_t(j)] = t.add(support[size_t(j)], t.mul(c, row[size_t(j)]));
                }
            } while (vec_is_zero(support));
        }
        std::vector<Vec> tuple;
        tuple.reserve(size_t(cs.n()));
        for (int i = 0; i < cs.n(); ++i) {
            Vec block(size_t(cs.r()), t.zero());
            if (seeded)
                std::copy(support.begin() + ptrdiff_t(i) * cs.r(),
                          support.begin() + ptrdiff_t(i + 1) * cs.r(), block.begin());
            if (vec_is_zero(block)) block = random_nonzero_vec(rng, t, cs.r());
            Vec lifted(size_t(cs.rn()), t.zero());
            std::copy(block.begin(), block.end(), lifted.begin() + ptrdiff_t(i) * cs.r());
            tuple.push_back(std::move(lifted));
        }
        Subspace sp = Subspace::span(cs.prime, tuple, t.n());
        const bool meets_span = !intersect(sp, dec.Un).is_zero();
        bool meets_part = false;
        for (const Subspace& part : dec.Ui)
            if (!intersect(sp, part).is_zero()) {
                meets_part = true;
                break;
            }
        if (seeded && !meets_span)
            throw Error("check_reducibility: seeded tuple misses the embedded span");
        if (meets_span) ++hits;
        if (meets_span != meets_part) {
            details["sample_index"] = s;
            details["meets_span"] = meets_span;
            details["meets_part"] = meets_part;
            return make_fail(
                id, "# input\n" + serialize_subspace(dec.u) + "# tuple\n" + serialize_tuple(t, tuple),
                details);
        }
    }
    details["hits"] = hits;
    return make_pass(id, details);
}

}  // namespace linset
