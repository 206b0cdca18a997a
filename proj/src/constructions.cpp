#include "linset/constructions.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

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

// Trace of F_{q^d} onto F_q, valid only for x inside F_{q^d}.
Fe partial_trace(const Tower& t, Fe x, int d) {
    Fe s = t.zero();
    for (int i = 0; i < d; ++i) s = t.add(s, t.frobenius(x, i));
    return s;
}

std::vector<int64_t> point_coords(const Tower& t, const Vec& p) {
    std::vector<int64_t> out;
    out.reserve(p.size());
    for (Fe c : p) out.push_back(int64_t(t.to_value(c)));
    return out;
}

}  // namespace

Subspace remark_example(const TowerPtr& tp, uint64_t enum_cap) {
    const Tower& t = *tp;
    if (t.n() != 6)
        throw HypothesisError("remark_example needs a degree-6 tower, got degree " +
                              std::to_string(t.n()));
    Ambient amb{tp, 2};
    std::vector<Vec> gens;
    for (Fe x : t.subfield_elements(3)) {
        if (x.is_zero()) continue;
        gens.push_back(Vec{x, t.zero()});
        if (partial_trace(t, x, 3).is_zero()) gens.push_back(Vec{t.zero(), x});
    }
    Subspace u = Subspace::span(amb, gens, 1);
    if (u.dim() != 5)
        throw Error("remark_example: expected rank 5, got " + std::to_string(u.dim()));

    const uint64_t q = t.subfield_order(1);
    const std::map<int, uint64_t> want{{2, upow(q, 3)}, {3, 1}};
    if (LinearSet::of(u, enum_cap).weight_spectrum() != want)
        throw Error("remark_example: unexpected weight spectrum");
    return u;
}

Subspace example_new(const TowerPtr& tp, uint64_t seed, uint64_t enum_cap) {
    const Tower& t = *tp;
    const int n = t.n();
    const uint64_t q = t.subfield_order(1);
    if (n < 6 || n % 4 != 2)
        throw HypothesisError("example_new needs degree 2 mod 4 and at least 6, got " +
                              std::to_string(n));
    if (q < uint64_t(n))
        throw HypothesisError("example_new needs q >= n, got q = " + std::to_string(q) +
                              ", n = " + std::to_string(n));
    const int half = n / 2;
    const Fe gamma = t.subfield_gen(half);

    Fe b0 = t.one();
    Fe b1 = gamma;
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        const std::vector<Fe> sub = t.subfield_elements(half);
        const std::vector<Fe> fq = t.subfield_elements(1);
        auto draw = [&] { return sub[size_t(rand_below(rng, sub.size()))]; };
        do {
            b0 = draw();
        } while (b0.is_zero());
        auto in_line = [&](Fe x) {
            for (Fe c : fq)
                if (t.mul(c, b0) == x) return true;
            return false;
        };
        do {
            b1 = draw();
        } while (in_line(b1));
    }

    Ambient amb{tp, 3};
    std::vector<Vec> gens;
    Fe pw = t.one();
    for (int l = 0; l < half; ++l) {
        gens.push_back(Vec{pw, t.zero(), t.zero()});
        pw = t.mul(pw, gamma);
    }
    gens.push_back(Vec{t.zero(), b0, t.zero()});
    gens.push_back(Vec{t.zero(), b1, t.zero()});
    gens.push_back(Vec{t.zero(), t.zero(), t.one()});
    Subspace u = Subspace::span(amb, gens, 1);
    if (u.dim() != half + 3)
        throw Error("example_new: expected rank " + std::to_string(half + 3) + ", got " +
                    std::to_string(u.dim()));

    const LinearSet ls = LinearSet::of(u, enum_cap);
    uint64_t in_plane = 0;
    bool weight_two = false;
    for (size_t i = 0; i < ls.points().size(); ++i) {
        const int w = ls.weights()[i];
        if (ls.points()[i][2] == t.zero()) {
            ++in_plane;
            if (w < 2 || w > half)
                throw Error("example_new: subline weight " + std::to_string(w) +
                            " out of range");
            if (w == 2) weight_two = true;
        } else if (w != 1) {
            throw Error("example_new: off-plane point of weight " + std::to_string(w));
        }
    }
    if (in_plane != upow(q, half) + 1)
        throw Error("example_new: subline has " + std::to_string(in_plane) + " points");
    if (!weight_two) throw Error("example_new: no weight-2 point on the subline");
    return u;
}

std::map<uint64_t, uint64_t> example_secant_sizes(const Subspace& u, uint64_t enum_cap) {
    const Tower& t = *u.tower();
    if (u.r() != 3) throw AmbientMismatchError("secant profile needs r = 3");
    const std::vector<Vec> plane_gens{Vec{t.one(), t.zero(), t.zero()},
                                      Vec{t.zero(), t.one(), t.zero()}};
    const Subspace plane = Subspace::span(u.ambient(), plane_gens, t.n());
    if (intersect(u, plane).dim() + 1 != u.dim())
        throw Error("secant profile: plane section must have codimension 1 in the subspace");

    const LinearSet ls = LinearSet::of(u, enum_cap);
    std::vector<Vec> in_plane;
    std::vector<Vec> off_plane;
    for (const Vec& p : ls.points())
        (p[2] == t.zero() ? in_plane : off_plane).push_back(p);

    std::map<uint64_t, uint64_t> sizes;
    if (in_plane.size() >= 2) ++sizes[in_plane.size()];
    for (const Vec& a : in_plane) {
        // Off-plane points grouped by the line joining them to a; the key is
        // the normalized dual coordinate vector of that line.
        std::map<std::array<uint64_t, 3>, uint64_t> per_line;
        for (const Vec& b : off_plane) {
            Vec c{t.sub(t.mul(a[1], b[2]), t.mul(a[2], b[1])),
                  t.sub(t.mul(a[2], b[0]), t.mul(a[0], b[2])),
                  t.sub(t.mul(a[0], b[1]), t.mul(a[1], b[0]))};
            c = normalize_point(t, c);
            ++per_line[{t.to_value(c[0]), t.to_value(c[1]), t.to_value(c[2])}];
        }
        for (const auto& [key, count] : per_line) ++sizes[count + 1];
    }
    return sizes;
}

std::vector<int> line_dims_through(const Subspace& u, const Vec& v) {
    const Tower& t = *u.tower();
    const int r = u.r();
    const int n = t.n();
    if (r < 2) throw RankError("line sections need r >= 2");
    const Vec p0 = normalize_point(t, v);
    size_t piv = 0;
    while (p0[piv] == t.zero()) ++piv;
    const Fe beta = t.subfield_gen(n);

    // Image of the F_{q^n}-span of p0 in V/U, echelonized once; every line
    // through p0 extends it by the image of the span of one direction.
    std::vector<Vec> prows;
    Fe pw = t.one();
    for (int i = 0; i < n; ++i) {
        prows.push_back(reduce_against(t, flatten_vec(t, vec_scale(t, pw, p0), 1),
                                       u.flat_rows(), u.flat_pivots()));
        pw = t.mul(pw, beta);
    }
    const Echelon pech = rref(t, std::move(prows));

    std::vector<int> dims;
    for_each_proj_rep(t, r - 1, [&](const Vec& w) {
        Vec dir(size_t(r), t.zero());
        for (size_t i = 0, j = 0; i < size_t(r); ++i)
            if (i != piv) dir[i] = w[j++];
        std::vector<Vec> drows;
        Fe dw = t.one();
        for (int i = 0; i < n; ++i) {
            Vec row = reduce_against(t, flatten_vec(t, vec_scale(t, dw, dir), 1),
                                     u.flat_rows(), u.flat_pivots());
            drows.push_back(reduce_against(t, std::move(row), pech.rows, pech.pivots));
            dw = t.mul(dw, beta);
        }
        const Echelon dech = rref(t, std::move(drows));
        dims.push_back(2 * n - int(pech.rows.size()) - int(dech.rows.size()));
    });
    return dims;
}

VerificationOutcome check_subline_divisor(const Subspace& w, int sub_degree,
                                          uint64_t enum_cap) {
    static const std::string id = "subline_divisor";
    const Tower& t = *w.tower();
    if (w.r() != 2) throw AmbientMismatchError("subline divisor check needs r = 2");
    const int big = t.n();
    if (sub_degree <= 0 || big % sub_degree != 0)
        throw NotDivisorError(std::to_string(sub_degree) +
                              " does not divide the ambient degree " + std::to_string(big));
    const uint64_t q = t.subfield_order(1);
    nlohmann::json details{{"ambient_degree", big}, {"sub_degree", sub_degree}, {"q", q}};
    if (q < uint64_t(big)) return make_hypothesis_unmet(id, details);

    const uint64_t size = LinearSet::of(w, enum_cap).size();
    if (size != upow(q, sub_degree) + 1)
        throw SizeMismatchError("set has " + std::to_string(size) + " points, expected " +
                                std::to_string(upow(q, sub_degree) + 1));
    const int d = detect_base_degree(w);
    details["closure_degree"] = d;
    details["size"] = size;
    if (sub_degree % d != 0) return make_fail(id, serialize_subspace(w), details);
    return make_pass(id, details);
}

VerificationOutcome check_size_bounds(const Subspace& u, uint64_t enum_cap) {
    static const std::string id = "size_bounds";
    const Tower& t = *u.tower();
    const int n = t.n();
    const int r = u.r();
    const int m = u.dim();
    if (r < 2) throw RankError("size bounds need r >= 2");
    if (u.is_zero()) return make_vacuous(id);

    const uint64_t q = t.subfield_order(1);
    const LinearityResult lin = field_of_linearity_by_closure(u, enum_cap);
    nlohmann::json details{{"r", r},
                           {"n", n},
                           {"rank", m},
                           {"k", m - (r - 2) * n},
                           {"linearity_degree", lin.degree},
                           {"unproven_maximal", lin.unproven_maximal}};
    if (lin.degree != 1) return make_hypothesis_unmet(id, details);

    const LinearSet ls = LinearSet::of(u, enum_cap);
    details["size"] = ls.size();
    std::vector<Vec> w1;
    for (size_t i = 0; i < ls.points().size(); ++i)
        if (ls.weights()[i] == 1) w1.push_back(ls.points()[i]);
    details["weight_one_points"] = w1.size();
    if (w1.empty()) return make_hypothesis_unmet(id, details);

    const uint64_t theta = proj_point_count(t.size(), r - 1);
    details["theta"] = theta;
    if (theta > enum_cap || uint64_t(w1.size()) > enum_cap / theta)
        throw BudgetExceededError("size bounds visit " + std::to_string(w1.size()) + " x " +
                                  std::to_string(theta) + " line sections, cap " +
                                  std::to_string(enum_cap));
    uint64_t tangent_free = 0;
    for (const Vec& p : w1) {
        const std::vector<int> dims = line_dims_through(u, p);
        if (dims.size() != theta) throw Error("size bounds: line count mismatch");
        uint64_t mass = 0;
        uint64_t lower = 1;
        bool tangent = false;
        for (int h : dims) {
            mass += upow(q, h) - q;
            if (h >= 2)
                lower += upow(q, h - 1);
            else
                tangent = true;
        }
        details["point"] = point_coords(t, p);
        if (mass + q != upow(q, m)) {
            details["mass"] = mass;
            return make_fail(id, serialize_subspace(u), details);
        }
        if (lower > ls.size()) {
            details["lower_bound"] = lower;
            return make_fail(id, serialize_subspace(u), details);
        }
        if (!tangent) {
            ++tangent_free;
            if (upow(q, m - 1) + theta > ls.size()) {
                details["lower_bound"] = upow(q, m - 1) + theta;
                return make_fail(id, serialize_subspace(u), details);
            }
        }
    }
    details.erase("point");
    details["tangent_free_points"] = tangent_free;
    return make_pass(id, details);
}

}  // namespace linset
