#pragma once

#include <vector>

#include "linset/outcome.hpp"
#include "linset/subspace.hpp"

namespace linset {

// Non-degenerate reflexive bilinear form sigma(u, v) = u^T G v on the rank-r
// space over F_{q^n}. The Gram matrix must be symmetric, or alternating with
// zero diagonal; both give the same left and right orthogonals.
class BilinearForm {
public:
    // Identity Gram matrix: the standard dot product.
    static BilinearForm standard(const TowerPtr& t, int r);
    static BilinearForm from_gram(const TowerPtr& t, std::vector<Vec> gram);

    [[nodiscard]] const TowerPtr& tower() const { return t_; }
    [[nodiscard]] int r() const { return r_; }
    [[nodiscard]] const std::vector<Vec>& gram() const { return gram_; }

    [[nodiscard]] Fe sigma(const Vec& u, const Vec& v) const;
    // Composition with the trace onto F_q: a non-degenerate F_q-bilinear form
    // on the same space viewed as F_q^{rn}.
    [[nodiscard]] Fe trace_form(const Vec& u, const Vec& v) const;

private:
    BilinearForm(TowerPtr t, int r, std::vector<Vec> gram);

    TowerPtr t_;
    int r_ = 0;
    std::vector<Vec> gram_;
};

// Orthogonal complement of U under the trace form, an F_q-subspace of
// F_q-dimension rn - dim U. Involutive.
[[nodiscard]] Subspace dual_subspace(const Subspace& u, const BilinearForm& f);
[[nodiscard]] Subspace dual_subspace(const Subspace& u);

// Orthogonal complement under sigma of an F_{q^n}-closed subspace, returned
// with base degree n. Coincides with dual_subspace as a vector set.
[[nodiscard]] Subspace fqn_complement(const Subspace& r, const BilinearForm& f);
[[nodiscard]] Subspace fqn_complement(const Subspace& r);

// The two orthogonality dimension laws for a pair (U, R), R F_{q^n}-closed:
// complement dimensions and dim(U' cap R') - dim(U cap R) = rn - t - sn.
[[nodiscard]] VerificationOutcome check_duality_dims(const Subspace& u, const Subspace& r,
                                                     const BilinearForm& f);
[[nodiscard]] VerificationOutcome check_duality_dims(const Subspace& u, const Subspace& r);

// For n | dim U with no hyperplane meeting U in dimension m-n+1: U is
// F_{q^d}-closed where m-n+d is the minimum hyperplane intersection
// dimension exceeding m-n. Cross-checks hyperplane sections against point
// fibers of the dual. Throws RankError when n does not divide dim U.
[[nodiscard]] VerificationOutcome check_dual_linearity(const Subspace& u,
                                                       const BilinearForm& f);
[[nodiscard]] VerificationOutcome check_dual_linearity(const Subspace& u);

}  // namespace linset
