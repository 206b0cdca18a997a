#include "linset/linear_set.hpp"

#include <algorithm>
#include <cstdint>

#include "linset/enumerate.hpp"
#include "linset/errors.hpp"
#include "linset/io.hpp"

namespace linset {

namespace {

uint64_t upow(uint64_t base, int e) {
    uint64_t x = 1;
    for (int i = 0; i < e; ++i) x *= base;
    return x;
}

// Weight from multiplicity: mult = q^w - 1 exactly, anything else is a
// corrupted tally.
int weight_from_mult(uint64_t q, uint64_t mult) {
    uint64_t x = 1;
    int w = 0;
    while (x < mult + 1) {
        x *= q;
        ++w;
    }
    if (x != mult + 1)
        throw Error("point multiplicity " + std::to_string(mult) + " is not q^w - 1");
    return w;
}

}  // namespace

Vec normalize_point(const Tower& t, const Vec& v) {
    size_t k = 0;
    while (k < v.size() && v[k] == t.zero()) ++k;
    if (k == v.size()) throw EmptySubspaceError("zero vector spans no point");
    Vec out = v;
    const Fe s = t.inv(v[k]);
    for (auto& c : out) c = t.mul(c, s);
    return out;
}

int weight_by_intersection(const Subspace& u, const Vec& v) {
    const Tower& t = *u.tower();
    const int n = t.n();
    if (vec_is_zero(v)) throw EmptySubspaceError("weight of the zero vector");
    if (int(v.size()) != u.r()) throw AmbientMismatchError("vector length mismatch");
    // {lambda : lambda v in U} is the kernel of lambda -> lambda v mod U, an
    // F_q-linear map on the n-dimensional F_q-space F_{q^n}.
    std::vector<Vec> rows;
    rows.reserve(size_t(n));
    Fe b = t.one();
    for (int i = 0; i < n; ++i) {
        Vec flat = flatten_vec(t, vec_scale(t, b, v), 1);
        rows.push_back(reduce_against(t, flat, u.flat_rows(), u.flat_pivots()));
        b = t.mul(b, t.gen());
    }
    const int rank = int(rref(t, rows).rows.size());
    return n - rank;
}

LinearSet LinearSet::of(const Subspace& u, uint64_t enum_cap) {
    const Tower& t = *u.tower();
    const uint64_t count = u.vector_count();
    if (count == UINT64_MAX || count > enum_cap)
        throw BudgetExceededError("enumerating " + std::to_string(u.dim()) +
                                  "-dimensional subspace exceeds cap " +
                                  std::to_string(enum_cap));
    std::map<Vec, uint64_t> tally;
    for_each_nonzero_vector(u, [&](const Vec& v) { ++tally[normalize_point(t, v)]; });

    LinearSet ls;
    ls.amb_ = u.ambient();
    ls.rank_ = u.dim();
    ls.points_.reserve(tally.size());
    ls.weights_.reserve(tally.size());
    const uint64_t q = t.subfield_order(1);
    uint64_t mass = 0;
    for (const auto& [p, mult] : tally) {
        ls.points_.push_back(p);
        ls.weights_.push_back(weight_from_mult(q, mult));
        mass += mult;
    }
    if (mass != count - 1)
        throw Error("point multiplicities sum to " + std::to_string(mass) +
                    ", expected " + std::to_string(count - 1));
    ls.whole_ = ls.points_.size() == proj_point_count(t.size(), u.r());
    return ls;
}

std::map<int, uint64_t> LinearSet::weight_spectrum() const {
    std::map<int, uint64_t> out;
    for (int w : weights_) ++out[w];
    return out;
}

int LinearSet::min_weight() const {
    if (weights_.empty()) throw EmptySubspaceError("empty linear set has no weights");
    return *std::min_element(weights_.begin(), weights_.end());
}

int LinearSet::max_weight() const {
    if (weights_.empty()) throw EmptySubspaceError("empty linear set has no weights");
    return *std::max_element(weights_.begin(), weights_.end());
}

int LinearSet::weight_of(const Vec& v) const {
    const Vec p = normalize_point(*amb_.tower, v);
    const auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) return 0;
    return weights_[size_t(it - points_.begin())];
}

bool same_linear_set(const Subspace& a, const Subspace& b, uint64_t enum_cap) {
    if (!a.ambient().same(b.ambient()))
        throw AmbientMismatchError("comparing linear sets over different ambients");
    if (a == b) return true;
    const Subspace* small = nullptr;
    const Subspace* big = nullptr;
    if (b.contains(a)) {
        small = &a;
        big = &b;
    } else if (a.contains(b)) {
        small = &b;
        big = &a;
    }
    if (small == nullptr) {
        const LinearSet la = LinearSet::of(a, enum_cap);
        const LinearSet lb = LinearSet::of(b, enum_cap);
        return la.points() == lb.points();
    }
    if (small->is_zero()) return false;  // big is strictly larger, so nonzero
    const Tower& t = *a.tower();
    const int n = t.n();
    const int r = a.r();
    const uint64_t q = t.subfield_order(1);
    if (big->dim() > (r - 1) * n) {
        // Every point then meets big in positive dimension: its set is the
        // whole space, so equality means small covers every point.
        const uint64_t theta = proj_point_count(t.size(), r);
        return LinearSet::of(*small, enum_cap).size() == theta;
    }
    // Equality under containment holds iff the vectors of big supported on
    // small's points account for all of big: sum over L_small of q^{w_big} - 1
    // equals q^{dim big} - 1. This never enumerates big itself.
    const uint64_t target = big->vector_count();
    if (target == UINT64_MAX)
        throw BudgetExceededError("mass comparison overflows 64 bits");
    const LinearSet ls = LinearSet::of(*small, enum_cap);
    uint64_t mass = 0;
    for (const Vec& p : ls.points()) mass += upow(q, weight_by_intersection(*big, p)) - 1;
    return mass == target - 1;
}

LinearityResult field_of_linearity_by_closure(const Subspace& u, uint64_t enum_cap) {
    if (u.is_zero()) throw EmptySubspaceError("empty linear set has no field of linearity");
    const Tower& t = *u.tower();
    const bool unproven = t.n() > int(t.subfield_order(1));
    const auto& divs = t.subfield_degrees();
    for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
        const int d = *it;
        if (d == 1) break;
        if (same_linear_set(u, scalar_span_over(u, d), enum_cap)) return {d, unproven};
    }
    return {1, unproven};
}

TangentData tangent_data(const LinearSet& ls, const Vec& v) {
    const Tower& t = *ls.ambient().tower;
    const int r = ls.ambient().r;
    const Vec p0 = normalize_point(t, v);
    size_t piv = 0;
    while (p0[piv] == t.zero()) ++piv;
    const std::vector<Fe> elems = all_elements(t);

    TangentData out;
    std::vector<Vec> dirs;
    // Lines through p0 correspond bijectively to points of the quotient by
    // p0: representatives with coordinate piv forced to zero.
    for_each_proj_rep(t, r - 1, [&](const Vec& w) {
        Vec dir(size_t(r), t.zero());
        for (size_t i = 0, j = 0; i < size_t(r); ++i)
            if (i != piv) dir[i] = w[j++];
        bool tangent = true;
        for (const Fe lam : elems) {
            if (ls.contains_point(vec_add(t, dir, vec_scale(t, lam, p0)))) {
                tangent = false;
                break;
            }
        }
        if (tangent) {
            ++out.tangents;
            dirs.push_back(dir);
        }
    });
    dirs.push_back(p0);
    out.spans_all =
        Subspace::span(ls.ambient(), dirs, t.n()).dim_over_base() == r;
    return out;
}

VerificationOutcome check_min_weight_linearity(const Subspace& u, uint64_t enum_cap) {
    static const std::string id = "min_weight_linearity";
    const Tower& t = *u.tower();
    const int n = t.n();
    const int m = u.dim();
    if (m == 0 || m % n != 0)
        throw RankError("rank " + std::to_string(m) + " is not a positive multiple of " +
                        std::to_string(n));
    const LinearSet ls = LinearSet::of(u, enum_cap);
    const int w = ls.min_weight();
    nlohmann::json details{{"rank", m}, {"min_weight", w}};
    if (w < 2) return make_vacuous(id, details);
    const bool divides = n % w == 0;
    const bool closed = divides && is_linear_over(u, w);
    details["divides"] = divides;
    details["closed"] = closed;
    if (divides && closed) return make_pass(id, details);
    return make_fail(id, serialize_subspace(u), details);
}

VerificationOutcome check_closure_equality(const Subspace& u, uint64_t enum_cap) {
    static const std::string id = "closure_equality";
    const Tower& t = *u.tower();
    const int n = t.n();
    const int q = int(t.subfield_order(1));
    const int r = u.r();
    const int m = u.dim();
    if (u.is_zero()) return make_vacuous(id, {{"rank", 0}});
    if (n > q || m > (r - 1) * n)
        return make_hypothesis_unmet(
            id, {{"n", n}, {"q", q}, {"rank", m}, {"max_rank", (r - 1) * n}});
    const LinearSet ls = LinearSet::of(u, enum_cap);
    const int w = ls.min_weight();
    if (w < 2) return make_vacuous(id, {{"min_weight", w}});
    for (int d : t.subfield_degrees()) {
        if (d < w) continue;
        if (same_linear_set(u, scalar_span_over(u, d), enum_cap))
            return make_pass(id, {{"min_weight", w}, {"degree", d}});
    }
    return make_fail(id, serialize_subspace(u), {{"min_weight", w}});
}

VerificationOutcome check_spanning_tangents(const Subspace& u, uint64_t enum_cap) {
    static const std::string id = "spanning_tangents";
    const Tower& t = *u.tower();
    const int n = t.n();
    const int r = u.r();
    const int m = u.dim();
    if (r <= 2 || m == 0 || m > n * (r - 2))
        return make_hypothesis_unmet(id,
                                     {{"r", r}, {"rank", m}, {"max_rank", n * (r - 2)}});
    const LinearSet ls = LinearSet::of(u, enum_cap);
    for (const Vec& p : ls.points()) {
        const TangentData td = tangent_data(ls, p);
        if (td.tangents < uint64_t(r - 1) || !td.spans_all) {
            std::vector<int64_t> coords;
            for (Fe c : p) coords.push_back(t.to_value(c));
            return make_fail(id, serialize_subspace(u),
                             {{"point", coords},
                              {"tangents", td.tangents},
                              {"spans", td.spans_all}});
        }
    }
    return make_pass(id, {{"points", ls.size()}});
}

VerificationOutcome check_mass_formula(const Subspace& u, uint64_t enum_cap) {
    static const std::string id = "mass_formula";
    const Tower& t = *u.tower();
    const uint64_t q = t.subfield_order(1);
    const LinearSet ls = LinearSet::of(u, enum_cap);
    uint64_t mass = 0;
    for (size_t i = 0; i < ls.points().size(); ++i) {
        const Vec& p = ls.points()[i];
        const int w = ls.weights()[i];
        mass += upow(q, w) - 1;
        const int wi = weight_by_intersection(u, p);
        if (wi != w) {
            std::vector<int64_t> coords;
            for (Fe c : p) coords.push_back(t.to_value(c));
            return make_fail(id, serialize_subspace(u),
                             {{"point", coords}, {"tally", w}, {"intersection", wi}});
        }
    }
    const uint64_t expected = u.vector_count() - 1;
    nlohmann::json spectrum;
    for (const auto& [w, c] : ls.weight_spectrum()) spectrum[std::to_string(w)] = c;
    nlohmann::json details{{"size", ls.size()}, {"mass", mass}, {"spectrum", spectrum}};
    if (mass != expected) {
        details["expected"] = expected;
        return make_fail(id, serialize_subspace(u), details);
    }
    const uint64_t theta = proj_point_count(t.size(), u.r());
    if (theta != UINT64_MAX && ls.size() > theta)
        return make_fail(id, serialize_subspace(u), details);
    return make_pass(id, details);
}

}  // namespace linset
