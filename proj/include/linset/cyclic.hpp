#pragma once

#include <cstdint>
#include <vector>

#include "linset/outcome.hpp"
#include "linset/subspace.hpp"

namespace linset {

// Shift-twist model of V = F_{q^n}^r inside V' = F_{q^n}^{rn}. V' splits
// into n coordinate blocks V_i of width r; sigma sends block i to block i+1
// (mod n) while raising every entry to the q-th power, so sigma has order n
// and its fixed vectors are exactly the Frobenius orbits (x, x^q, ...,
// x^{q^{n-1}}) of block vectors x.
struct CyclicState {
    Ambient base;   // V, rank r over F_{q^n}
    Ambient prime;  // V', rank r*n over the same tower

    [[nodiscard]] int r() const { return base.r; }
    [[nodiscard]] int n() const { return base.tower->n(); }
    [[nodiscard]] int rn() const { return prime.r; }
};

[[nodiscard]] CyclicState cyclic_state(const Ambient& a);

// sigma^k as a coordinate map: entry j of the image is entry j - k*r
// (mod rn) of the input raised to the q^k. Additive and F_q-linear, but only
// q-semilinear over F_{q^n}.
[[nodiscard]] Vec apply_sigma(const CyclicState& cs, const Vec& w, int64_t k = 1);
// Image subspace; well defined because sigma^k maps F_{q^e}-closed sets to
// F_{q^e}-closed sets.
[[nodiscard]] Subspace apply_sigma(const CyclicState& cs, const Subspace& s, int64_t k = 1);

// (v, v^q, ..., v^{q^{n-1}}) written blockwise; an F_q-linear bijection from
// V onto the fixed space of sigma.
[[nodiscard]] Vec embed_fix(const CyclicState& cs, const Vec& v);

// Fixed space of sigma as an F_q-subspace of V'; F_q-dimension rn.
[[nodiscard]] Subspace fix_sigma(const CyclicState& cs);

// Coordinate block V_i as an F_{q^n}-subspace of V'.
[[nodiscard]] Subspace block_space(const CyclicState& cs, int i);

// Block decomposition data of one F_q-subspace U of V:
//   Un     = F_{q^n}-span of the embedded U inside V'; its F_{q^n}-dimension
//            equals dim_q U.
//   Ui[i]  = Un intersected with the blocks other than i; sigma maps Ui[i]
//            onto Ui[i+1 mod n].
//   d      = least divisor of n with Ui[0] fixed by sigma^d; 1 iff Ui[0] is
//            sigma-invariant.
//   Ubar_i = span of Un and the blocks outside residue class i mod d,
//            intersected with the blocks in class i; Ubar is their direct
//            sum and always contains Un.
struct UiDecomposition {
    CyclicState state;
    Subspace u;
    Subspace Un;
    std::vector<Subspace> Ui;
    int d = 1;
    std::vector<Subspace> Ubar_i;
    Subspace Ubar;
};

// Throws RankError when dim_q U > (r-1)n; the decomposition targets proper
// linear sets, not the whole space.
[[nodiscard]] UiDecomposition decompose(const Subspace& u);

// Projection of Ubar intersect Fix(sigma) onto block 0, read back as an
// F_q-subspace of V.
[[nodiscard]] Subspace fixed_projection(const UiDecomposition& dec);

// Un is contained in Ubar.
[[nodiscard]] VerificationOutcome check_cyclic_inclusion(const UiDecomposition& dec);

// fixed_projection(dec) equals the F_{q^d}-closure of U.
[[nodiscard]] VerificationOutcome check_cyclic_projection(const UiDecomposition& dec);

// For n <= q and every point weight >= 2: U and the pulled-back fixed part
// of Ubar define the same linear set. Reports hypothesis_unmet when n > q or
// a weight-1 point exists; the conclusion can genuinely fail on weight-1
// inputs, where the F_{q^d}-closure defines a strictly larger set.
[[nodiscard]] VerificationOutcome check_cyclic_equality(const UiDecomposition& dec,
                                                        uint64_t enum_cap = kDefaultEnumCap);

// For n <= q and every point weight >= 2: a span of nonzero block
// representatives v_i in V_i meets Un iff it meets some Ui. Samples random
// tuples; even-indexed draws are seeded from vectors of Un so the nonzero
// branch is exercised. Reports hypothesis_unmet when a precondition fails.
[[nodiscard]] VerificationOutcome check_reducibility(const UiDecomposition& dec, int samples,
                                                     uint64_t seed,
                                                     uint64_t enum_cap = kDefaultEnumCap);

}  // namespace linset
