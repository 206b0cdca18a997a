#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "linset/outcome.hpp"
#include "linset/subspace.hpp"

namespace linset {

// Canonical representative of the projective point through v: first nonzero
// entry scaled to 1. Throws EmptySubspaceError on the zero vector.
[[nodiscard]] Vec normalize_point(const Tower& t, const Vec& v);

// Weight of the point through v with respect to U: the F_q-dimension of
// {lambda in F_{q^n} : lambda v in U}. Independent of the enumeration tally.
[[nodiscard]] int weight_by_intersection(const Subspace& u, const Vec& v);

// The points spanned by the nonzero vectors of a subspace, with per-point
// weights from the multiplicity tally. Construction enumerates the q^m
// vectors once; the mass identity sum(q^w - 1) = q^m - 1 is asserted.
class LinearSet {
public:
    static LinearSet of(const Subspace& u, uint64_t enum_cap = kDefaultEnumCap);

    [[nodiscard]] const Ambient& ambient() const { return amb_; }
    [[nodiscard]] int rank() const { return rank_; }
    [[nodiscard]] uint64_t size() const { return points_.size(); }
    [[nodiscard]] bool whole_space() const { return whole_; }
    [[nodiscard]] const std::vector<Vec>& points() const { return points_; }
    [[nodiscard]] const std::vector<int>& weights() const { return weights_; }

    [[nodiscard]] std::map<int, uint64_t> weight_spectrum() const;
    [[nodiscard]] int min_weight() const;  // throws EmptySubspaceError when empty
    [[nodiscard]] int max_weight() const;
    // 0 when the point is not in the set; input need not be normalized.
    [[nodiscard]] int weight_of(const Vec& v) const;
    [[nodiscard]] bool contains_point(const Vec& v) const { return weight_of(v) > 0; }

private:
    Ambient amb_;
    int rank_ = 0;
    bool whole_ = false;
    std::vector<Vec> points_;
    std::vector<int> weights_;
};

// Point-set equality of the two linear sets. Containment of one subspace in
// the other is resolved by a weight-mass count over the smaller point list,
// so closures of U can be compared without enumerating them.
[[nodiscard]] bool same_linear_set(const Subspace& a, const Subspace& b,
                                   uint64_t enum_cap = kDefaultEnumCap);

struct LinearityResult {
    int degree = 1;              // largest d | n with L_U = L_{<U>_{F_{q^d}}}
    bool unproven_maximal = false;  // set when n > q: no guarantee of maximality
};
[[nodiscard]] LinearityResult field_of_linearity_by_closure(const Subspace& u,
                                                            uint64_t enum_cap = kDefaultEnumCap);

// Number of lines through the point of v meeting the set only there, plus
// the F_{q^n}-span of those lines. spans_all means the tangent lines at v
// together span the whole projective space.
struct TangentData {
    uint64_t tangents = 0;
    bool spans_all = false;
};
[[nodiscard]] TangentData tangent_data(const LinearSet& ls, const Vec& v);

// Checks: each returns a VerificationOutcome; fail carries the serialized
// defining subspace as witness.

// If the rank is a multiple of n and every point has weight >= w >= 2
// (w maximal), then w | n and U is F_{q^w}-closed.
[[nodiscard]] VerificationOutcome check_min_weight_linearity(const Subspace& u,
                                                             uint64_t enum_cap = kDefaultEnumCap);

// If n <= q, rank <= (r-1)n, and every weight is >= w >= 2, then some d with
// w <= d | n satisfies L_U = L_{<U>_{F_{q^d}}}.
[[nodiscard]] VerificationOutcome check_closure_equality(const Subspace& u,
                                                         uint64_t enum_cap = kDefaultEnumCap);

// For r > 2 and rank <= n(r-2): through every point of the set there are at
// least r-1 tangent lines spanning the whole space.
[[nodiscard]] VerificationOutcome check_spanning_tangents(const Subspace& u,
                                                          uint64_t enum_cap = kDefaultEnumCap);

// Mass identity plus tally-vs-intersection weight agreement on every point.
[[nodiscard]] VerificationOutcome check_mass_formula(const Subspace& u,
                                                     uint64_t enum_cap = kDefaultEnumCap);

}  // namespace linset
