#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "linset/io.hpp"
#include "linset/outcome.hpp"
#include "linset/subspace.hpp"

namespace linset {

// Ideal points determined by an F_q-subspace of the affine space F_{q^n}^k:
// the points at infinity of the lines joining pairs of subspace vectors.
// Homogeneous coordinates have one extra trailing coordinate, zero on the
// hyperplane at infinity.
struct DirectionSet {
    Ambient proj_ambient;           // rank k+1 over the same tower
    std::vector<Vec> ideal_points;  // normalized, sorted, trailing zero
    std::vector<int> weights;

    [[nodiscard]] uint64_t size() const { return ideal_points.size(); }
};

// Differences of subspace vectors are subspace vectors, so the direction set
// is the linear set of U pushed to the hyperplane at infinity. With
// pairwise_oracle the quadratic two-point definition is recomputed and
// compared; a mismatch throws Error.
[[nodiscard]] DirectionSet dir_set(const Subspace& u, bool pairwise_oracle = false,
                                   uint64_t enum_cap = kDefaultEnumCap);

// For each w >= 1, the number of lines through the origin meeting U in
// exactly q^w vectors. Computed per line from intersection fibers, not from
// the enumeration tally.
[[nodiscard]] std::map<int, uint64_t> line_profile(const Subspace& u,
                                                   uint64_t enum_cap = kDefaultEnumCap);

enum class DirMode { a, b };

// Let w be maximal with every origin-line meeting U in 0 or >= q^w vectors.
// Mode a (needs n | dim U): w | n and F_{q^w} is the largest subfield under
// which U is closed. Mode b (needs q >= n): some d with w <= d | n has
// dir(U) = dir of the F_{q^d}-closure.
[[nodiscard]] VerificationOutcome check_dir_theorem(const Subspace& u, DirMode mode,
                                                    uint64_t enum_cap = kDefaultEnumCap);

struct TrichotomyResult {
    int case_id = 0;     // 1, 2 or 3
    uint64_t N = 0;      // number of directions determined by f
    uint64_t s = 1;      // p^e, maximal with every incident line count divisible by s
    int e = 0;
    uint64_t lower = 0;  // case bounds on N
    uint64_t upper = 0;
    bool fs_linearity_checked = false;  // s > 2: graph verified F_s-closed
};

// Classification of the direction count of an additive map on F_Q, Q = p^h.
// Throws NotAdditiveError when the table is not F_p-linear.
[[nodiscard]] TrichotomyResult direction_trichotomy(const FunctionTable& f);
[[nodiscard]] VerificationOutcome check_direction_trichotomy(const FunctionTable& f);

}  // namespace linset
