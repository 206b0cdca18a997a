#include "linset/duality.hpp"

#include <limits>
#include <utility>

#include "linset/enumerate.hpp"
#include "linset/errors.hpp"
#include "linset/io.hpp"
#include "linset/linear_set.hpp"

namespace linset {

namespace {

void require_ambient(const BilinearForm& f, const Subspace& u) {
    if (u.r() != f.r() || !u.tower()->same_field(*f.tower()))
        throw AmbientMismatchError("form and subspace live in different ambients");
}

// Row vector u^T G over F_{q^n}.
Vec left_product(const Tower& t, const std::vector<Vec>& gram, const Vec& u) {
    const size_t r = gram.size();
    Vec out(r, t.zero());
    for (size_t j = 0; j < r; ++j) {
        Fe acc = t.zero();
        for (size_t i = 0; i < r; ++i) acc = t.add(acc, t.mul(u[i], gram[i][j]));
        out[j] = acc;
    }
    return out;
}

}  // namespace

BilinearForm::BilinearForm(TowerPtr t, int r, std::vector<Vec> gram)
    : t_(std::move(t)), r_(r), gram_(std::move(gram)) {}

BilinearForm BilinearForm::standard(const TowerPtr& t, int r) {
    if (r < 1) throw RankError("form needs ambient rank >= 1");
    std::vector<Vec> gram;
    gram.assign(size_t(r), Vec(size_t(r), t->zero()));
    for (int i = 0; i < r; ++i) gram[size_t(i)][size_t(i)] = t->one();
    return BilinearForm(t, r, std::move(gram));
}

BilinearForm BilinearForm::from_gram(const TowerPtr& t, std::vector<Vec> gram) {
    const size_t r = gram.size();
    if (r == 0) throw RankError("form needs ambient rank >= 1");
    for (const Vec& row : gram)
        if (row.size() != r) throw FormError("Gram matrix is not square");
    bool symmetric = true;
    bool alternating = true;
    for (size_t i = 0; i < r; ++i) {
        if (gram[i][i] != t->zero()) alternating = false;
        for (size_t j = 0; j < r; ++j) {
            if (gram[i][j] != gram[j][i]) symmetric = false;
            if (gram[i][j] != t->neg(gram[j][i])) alternating = false;
        }
    }
    if (!symmetric && !alternating)
        throw FormError("Gram matrix is neither symmetric nor alternating");
    if (rref(*t, gram).rows.size() != r) throw FormError("Gram matrix is degenerate");
    return BilinearForm(t, int(r), std::move(gram));
}

Fe BilinearForm::sigma(const Vec& u, const Vec& v) const {
    if (int(u.size()) != r_ || int(v.size()) != r_)
        throw AmbientMismatchError("vector length does not match the form rank");
    const Tower& t = *t_;
    Fe acc = t.zero();
    for (size_t i = 0; i < size_t(r_); ++i) {
        Fe row = t.zero();
        for (size_t j = 0; j < size_t(r_); ++j)
            row = t.add(row, t.mul(gram_[i][j], v[j]));
        acc = t.add(acc, t.mul(u[i], row));
    }
    return acc;
}

Fe BilinearForm::trace_form(const Vec& u, const Vec& v) const {
    return t_->rel_trace(sigma(u, v), 1);
}

Subspace dual_subspace(const Subspace& u, const BilinearForm& f) {
    require_ambient(f, u);
    const Tower& t = *u.tower();
    const int n = t.n();
    const int r = u.r();
    const int rn = r * n;
    // One F_q-linear condition per basis vector of U: with c = u_i^T G the
    // column for basis vector e_k b^l is Tr(c_k b^l).
    std::vector<Vec> rows;
    rows.reserve(size_t(u.dim()));
    Fe beta = t.gen();
    for (const Vec& ui : u.basis_vectors()) {
        const Vec c = left_product(t, f.gram(), ui);
        Vec row(size_t(rn), t.zero());
        for (int k = 0; k < r; ++k) {
            Fe pw = t.one();
            for (int l = 0; l < n; ++l) {
                row[size_t(k * n + l)] = t.rel_trace(t.mul(c[size_t(k)], pw), 1);
                pw = t.mul(pw, beta);
            }
        }
        rows.push_back(std::move(row));
    }
    std::vector<Vec> kernel = null_space(t, rows, rn);
    std::vector<Vec> gens;
    gens.reserve(kernel.size());
    for (const Vec& kv : kernel) gens.push_back(unflatten_vec(t, kv, 1));
    Subspace out = Subspace::span(u.ambient(), gens, 1);
    if (out.dim() != rn - u.dim())
        throw Error("trace form is degenerate on the ambient");
    return out;
}

Subspace dual_subspace(const Subspace& u) {
    return dual_subspace(u, BilinearForm::standard(u.tower(), u.r()));
}

Subspace fqn_complement(const Subspace& r0, const BilinearForm& f) {
    require_ambient(f, r0);
    const Tower& t = *r0.tower();
    const int n = t.n();
    if (!is_linear_over(r0, n))
        throw NotSubfieldLinearError("complement input must be closed under the top field");
    const Subspace rn_marked = r0.with_base_degree(n);
    std::vector<Vec> rows;
    for (const Vec& vi : rn_marked.base_basis_vectors())
        rows.push_back(left_product(t, f.gram(), vi));
    std::vector<Vec> kernel = null_space(t, rows, r0.r());
    Subspace out = Subspace::span(r0.ambient(), kernel, n);
    if (out.dim_over_base() != r0.r() - rn_marked.dim_over_base())
        throw Error("sigma is degenerate on the ambient");
    return out;
}

Subspace fqn_complement(const Subspace& r0) {
    return fqn_complement(r0, BilinearForm::standard(r0.tower(), r0.r()));
}

VerificationOutcome check_duality_dims(const Subspace& u, const Subspace& r0,
                                       const BilinearForm& f) {
    static const std::string id = "duality_dims";
    require_ambient(f, u);
    if (!u.ambient().same(r0.ambient()))
        throw AmbientMismatchError("pair lives in different ambients");
    const Tower& t = *u.tower();
    const int n = t.n();
    const int r = u.r();
    const int tdim = u.dim();
    const Subspace rmark = r0.with_base_degree(n);
    const int s = rmark.dim_over_base();

    const Subspace du = dual_subspace(u, f);
    const Subspace rc = fqn_complement(rmark, f);
    const int lhs = intersect(du, rc).dim() - intersect(u, rmark).dim();
    const int rhs = r * n - tdim - s * n;
    nlohmann::json details{{"t", tdim}, {"s", s}, {"lhs", lhs}, {"rhs", rhs},
                           {"dual_dim", du.dim()}, {"complement_dim", rc.dim_over_base()}};
    const bool dims_ok = du.dim() == r * n - tdim && rc.dim_over_base() == r - s;
    if (lhs == rhs && dims_ok) return make_pass(id, details);
    return make_fail(id, "# U\n" + serialize_subspace(u) + "# R\n" + serialize_subspace(rmark),
                     details);
}

VerificationOutcome check_duality_dims(const Subspace& u, const Subspace& r0) {
    return check_duality_dims(u, r0, BilinearForm::standard(u.tower(), u.r()));
}

VerificationOutcome check_dual_linearity(const Subspace& u, const BilinearForm& f) {
    static const std::string id = "dual_linearity";
    require_ambient(f, u);
    const Tower& t = *u.tower();
    const int n = t.n();
    const int r = u.r();
    const int m = u.dim();
    if (m % n != 0)
        throw RankError("rank " + std::to_string(m) + " is not a multiple of " +
                        std::to_string(n));
    const Subspace dual = dual_subspace(u, f);

    // Hyperplanes are the sigma-orthogonals of points; the section dimension
    // dim(U cap v^perp) equals m - n plus the fiber dimension of the dual at
    // v. Both sides are computed independently and compared.
    std::vector<Vec> cs;
    for (const Vec& ui : u.basis_vectors()) cs.push_back(left_product(t, f.gram(), ui));

    int min_excess = std::numeric_limits<int>::max();
    bool weight_one = false;
    uint64_t hyperplanes = 0;
    VerificationOutcome bad = make_pass(id);
    bool failed = false;
    for_each_proj_rep(t, r, [&](const Vec& v) {
        if (failed) return;
        ++hyperplanes;
        const int wv = weight_by_intersection(dual, v);
        std::vector<Vec> rows;
        rows.reserve(cs.size());
        for (const Vec& c : cs) {
            Fe val = t.zero();
            for (size_t j = 0; j < size_t(r); ++j)
                val = t.add(val, t.mul(c[j], v[j]));
            rows.push_back(flatten_vec(t, Vec{val}, 1));
        }
        const int direct = m - int(rref(t, rows).rows.size());
        if (direct != m - n + wv) {
            std::vector<int64_t> coords;
            for (Fe cv : v) coords.push_back(t.to_value(cv));
            bad = make_fail(id, serialize_subspace(u),
                            {{"point", coords}, {"section", direct}, {"fiber", wv}});
            failed = true;
            return;
        }
        if (wv == 1) weight_one = true;
        if (wv >= 2) min_excess = std::min(min_excess, wv);
    });
    if (failed) return bad;
    if (weight_one)
        return make_hypothesis_unmet(id, {{"rank", m}, {"hyperplanes", hyperplanes}});

    const int d = min_excess == std::numeric_limits<int>::max() ? n : min_excess;
    nlohmann::json details{{"degree", d}, {"min_section", m - n + d},
                           {"hyperplanes", hyperplanes}};
    if (n % d == 0 && is_linear_over(u, d) && is_linear_over(dual, d))
        return make_pass(id, details);
    return make_fail(id, serialize_subspace(u), details);
}

VerificationOutcome check_dual_linearity(const Subspace& u) {
    return check_dual_linearity(u, BilinearForm::standard(u.tower(), u.r()));
}

}  // namespace linset
