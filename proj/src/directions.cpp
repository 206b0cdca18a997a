#include "linset/directions.hpp"

#include <set>
#include <utility>

#include "linset/enumerate.hpp"
#include "linset/errors.hpp"
#include "linset/linear_set.hpp"

namespace linset {

DirectionSet dir_set(const Subspace& u, bool pairwise_oracle, uint64_t enum_cap) {
    const Tower& t = *u.tower();
    const LinearSet ls = LinearSet::of(u, enum_cap);
    DirectionSet out;
    out.proj_ambient = Ambient{u.tower(), u.r() + 1};
    out.ideal_points.reserve(ls.points().size());
    for (const Vec& p : ls.points()) {
        Vec q = p;
        q.push_back(t.zero());
        out.ideal_points.push_back(std::move(q));
    }
    out.weights = ls.weights();

    if (pairwise_oracle) {
        const uint64_t count = u.vector_count();
        if (count == UINT64_MAX || (count > 1 && count > enum_cap / count))
            throw BudgetExceededError("pairwise direction oracle needs |U|^2 within cap");
        std::vector<Vec> vecs;
        vecs.reserve(size_t(count));
        for_each_vector(u, [&](const Vec& v) { vecs.push_back(v); });
        std::set<Vec> dirs;
        for (size_t i = 0; i < vecs.size(); ++i)
            for (size_t j = 0; j < vecs.size(); ++j)
                if (i != j) dirs.insert(normalize_point(t, vec_sub(t, vecs[i], vecs[j])));
        bool same = dirs.size() == out.ideal_points.size();
        if (same) {
            size_t k = 0;
            for (const Vec& d : dirs) {
                Vec q = d;
                q.push_back(t.zero());
                if (q != out.ideal_points[k++]) same = false;
            }
        }
        if (!same) throw Error("pairwise direction definition disagrees with the subspace shortcut");
    }
    return out;
}

std::map<int, uint64_t> line_profile(const Subspace& u, uint64_t enum_cap) {
    const Tower& t = *u.tower();
    if (proj_point_count(t.size(), u.r()) > enum_cap)
        throw BudgetExceededError("line profile needs the origin-line count within cap");
    std::map<int, uint64_t> profile;
    for_each_proj_rep(t, u.r(), [&](const Vec& rep) {
        const int w = weight_by_intersection(u, rep);
        if (w > 0) ++profile[w];
    });
    return profile;
}

VerificationOutcome check_dir_theorem(const Subspace& u, DirMode mode, uint64_t enum_cap) {
    const std::string id = mode == DirMode::a ? "directions_a" : "directions_b";
    const Tower& t = *u.tower();
    const int n = t.n();
    const int q = int(t.subfield_order(1));
    const int m = u.dim();
    if (m == 0) return make_vacuous(id, {{"rank", 0}});
    if (mode == DirMode::a && m % n != 0)
        return make_hypothesis_unmet(id, {{"rank", m}, {"n", n}});
    if (mode == DirMode::b && q < n) return make_hypothesis_unmet(id, {{"q", q}, {"n", n}});

    const LinearSet ls = LinearSet::of(u, enum_cap);
    const int w = ls.min_weight();
    if (mode == DirMode::a) {
        const int det = detect_base_degree(u);
        nlohmann::json details{{"min_weight", w}, {"detected", det}};
        if (w == 1)
            return det == 1 ? make_vacuous(id, details)
                            : make_fail(id, serialize_subspace(u), details);
        if (n % w == 0 && det == w) return make_pass(id, details);
        return make_fail(id, serialize_subspace(u), details);
    }
    if (w == 1) return make_vacuous(id, {{"min_weight", 1}});
    for (int d : t.subfield_degrees()) {
        if (d < w) continue;
        if (same_linear_set(u, scalar_span_over(u, d), enum_cap))
            return make_pass(id, {{"min_weight", w}, {"degree", d}});
    }
    return make_fail(id, serialize_subspace(u), {{"min_weight", w}});
}

TrichotomyResult direction_trichotomy(const FunctionTable& f) {
    const Tower& t = *f.tower;
    const uint64_t Q = t.size();
    const uint64_t p = uint64_t(t.p());
    const int h = t.degree();
    if (f.values.size() != Q)
        throw SizeMismatchError("function table has " + std::to_string(f.values.size()) +
                                " entries for a field of order " + std::to_string(Q));
    if (f.values[0] != t.zero()) throw NotAdditiveError("f(0) != 0");
    std::vector<Fe> elems(Q);
    for (uint64_t v = 0; v < Q; ++v) elems[size_t(v)] = t.from_value(v);
    for (uint64_t x = 0; x < Q; ++x) {
        for (uint64_t y = x; y < Q; ++y) {
            const uint64_t z = t.to_value(t.add(elems[size_t(x)], elems[size_t(y)]));
            if (f.values[size_t(z)] != t.add(f.values[size_t(x)], f.values[size_t(y)]))
                throw NotAdditiveError("f(x + y) != f(x) + f(y) at x=" + std::to_string(x) +
                                       ", y=" + std::to_string(y));
        }
    }

    std::vector<Vec> gens;
    gens.reserve(Q);
    for (uint64_t x = 0; x < Q; ++x) gens.push_back(Vec{elems[size_t(x)], f.values[size_t(x)]});
    const Subspace graph = Subspace::span(Ambient{f.tower, 2}, gens, 1);
    if (graph.dim() != h) throw Error("additive graph has unexpected dimension");

    const LinearSet ls = LinearSet::of(graph);
    TrichotomyResult res;
    res.N = ls.size();
    res.e = ls.min_weight();
    res.s = 1;
    for (int i = 0; i < res.e; ++i) res.s *= p;
    if (res.e == h) {
        res.case_id = 3;
        res.lower = 1;
        res.upper = 1;
    } else if (res.e == 0) {
        res.case_id = 1;
        res.lower = (Q + 4) / 2;  // smallest integer >= (Q+3)/2
        res.upper = Q + 1;
    } else {
        res.case_id = 2;
        res.lower = Q / res.s + 1;
        res.upper = h % res.e == 0 ? (Q - 1) / (res.s - 1) : 0;
    }
    if (res.s > 2 && h % res.e == 0)
        res.fs_linearity_checked = is_linear_over(graph, res.e);
    return res;
}

VerificationOutcome check_direction_trichotomy(const FunctionTable& f) {
    static const std::string id = "trichotomy";
    const TrichotomyResult r = direction_trichotomy(f);
    nlohmann::json details{{"N", r.N},         {"s", r.s},         {"e", r.e},
                           {"case", r.case_id}, {"lower", r.lower}, {"upper", r.upper}};
    bool ok = false;
    switch (r.case_id) {
        case 1:
        case 2:
            ok = (r.case_id == 1 || f.tower->degree() % r.e == 0) && r.lower <= r.N &&
                 r.N <= r.upper;
            break;
        case 3:
            ok = r.N == 1;
            break;
        default:
            break;
    }
    if (r.s > 2) {
        details["fs_linear"] = r.fs_linearity_checked;
        ok = ok && r.fs_linearity_checked;
    }
    if (ok) return make_pass(id, details);
    return make_fail(id, serialize_function_table(f), details);
}

}  // namespace linset
