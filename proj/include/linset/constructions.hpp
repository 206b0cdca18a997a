#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "linset/linear_set.hpp"
#include "linset/outcome.hpp"
#include "linset/subspace.hpp"

namespace linset {

// Named subspaces with distinctive weight geometry, together with counting
// checks on set sizes at weight-one points.

// Rank-5 subspace {(x, y) : x, y in F_{q^3} <= F_{q^6}, y of zero trace to
// F_q} over a degree-6 tower. Every point of its set has weight at least 2:
// one point of weight 3 and q^3 points of weight 2. Both facts are asserted
// by enumeration. Throws HypothesisError unless the tower degree is 6.
[[nodiscard]] Subspace remark_example(const TowerPtr& t,
                                      uint64_t enum_cap = kDefaultEnumCap);

// Rank n/2+3 subspace of F_{q^n}^3 for n = 2 mod 4, n >= 6, q >= n. With
// gamma generating F_{q^{n/2}} and B a 2-dimensional F_q-subspace of
// F_{q^{n/2}} picked from the seed (seed 0 takes B = <1, gamma>), the
// subspace is
//   U = <gamma^l e1 : l < n/2> + <b e2 : b basis of B> + <e3>.
// Its set meets the line x3 = 0 in the subline PG(1, q^{n/2}), where every
// weight is at least 2 and some point has weight exactly 2; every point off
// that line has weight 1. These facts are asserted by enumeration.
// Throws HypothesisError on a tower violating the shape constraints.
[[nodiscard]] Subspace example_new(const TowerPtr& t, uint64_t seed = 0,
                                   uint64_t enum_cap = kDefaultEnumCap);

// Sizes of the line sections of the set of u with at least two points, as a
// map from section size to number of such lines. Requires r = 3 and the
// shape U = (U cap W) + <x> with x outside W, where W is the coordinate
// plane x3 = 0; under that shape every secant line meets the set inside W,
// so grouping the off-plane points by the lines through each in-plane point
// covers every secant. Throws Error when the shape requirement fails.
[[nodiscard]] std::map<uint64_t, uint64_t> example_secant_sizes(
    const Subspace& u, uint64_t enum_cap = kDefaultEnumCap);

// F_q-dimensions of U cap L over the lines L through the point of v, where
// L ranges over the (q^{n(r-1)}-1)/(q^n-1) lines of PG(r-1, q^n) through
// that point in a fixed enumeration order. Requires r >= 2.
[[nodiscard]] std::vector<int> line_dims_through(const Subspace& u, const Vec& v);

// For w in a rank-2 ambient over F_{q^N}: if q >= N, sub_degree divides N,
// and the set of w has exactly q^{sub_degree}+1 points, then the maximal
// closure degree of w divides sub_degree. Reports hypothesis_unmet when
// q < N; throws SizeMismatchError when the point count differs from
// q^{sub_degree}+1 and NotDivisorError when sub_degree does not divide N.
[[nodiscard]] VerificationOutcome check_subline_divisor(
    const Subspace& w, int sub_degree, uint64_t enum_cap = kDefaultEnumCap);

// At every weight-one point P of the set of u, with h_i the dimensions of
// the line sections through P:
//   sum_i (q^{h_i} - q) = q^m - q          (vector count through P),
//   |L_U| >= 1 + sum over h_i >= 2 of q^{h_i - 1},
// and, when no line through P is tangent, |L_U| >= q^{m-1} + theta with
// theta the number of lines through P. Requires F_q as maximum field of
// linearity and at least one weight-one point; reports hypothesis_unmet
// otherwise, with the n > q caveat recorded in the details.
[[nodiscard]] VerificationOutcome check_size_bounds(
    const Subspace& u, uint64_t enum_cap = kDefaultEnumCap);

}  // namespace linset
