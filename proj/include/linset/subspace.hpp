#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "linset/tower.hpp"

namespace linset {

// Ambient vector space V = F_{q^n}^r over a fixed tower.
struct Ambient {
    TowerPtr tower;
    int r = 0;

    [[nodiscard]] bool same(const Ambient& o) const {
        return r == o.r && tower && o.tower && tower->same_field(*o.tower);
    }
};

// Entrywise vector helpers on length-r vectors over F_{q^n}.
[[nodiscard]] Vec vec_add(const Tower& t, const Vec& a, const Vec& b);
[[nodiscard]] Vec vec_sub(const Tower& t, const Vec& a, const Vec& b);
[[nodiscard]] Vec vec_scale(const Tower& t, Fe c, const Vec& a);
[[nodiscard]] Vec vec_frobenius(const Tower& t, const Vec& a, int64_t i);
[[nodiscard]] bool vec_is_zero(const Vec& a);

// Coordinate flattening: one F_{q^n} entry becomes n/e coordinates over
// F_{q^e} (power basis of the primitive element). flatten_vec maps r entries
// to r*(n/e) entries; unflatten_vec inverts.
[[nodiscard]] Vec flatten_vec(const Tower& t, const Vec& v, int e);
[[nodiscard]] Vec unflatten_vec(const Tower& t, const Vec& row, int e);

struct Echelon {
    std::vector<Vec> rows;    // reduced row echelon, zero rows dropped
    std::vector<int> pivots;  // strictly increasing pivot columns
};

// One RREF kernel serves every base-field level: entries of the input rows
// must lie in a common subfield, and all arithmetic stays inside it.
[[nodiscard]] Echelon rref(const Tower& t, std::vector<Vec> rows);
[[nodiscard]] Vec reduce_against(const Tower& t, Vec row, const std::vector<Vec>& rows,
                                 const std::vector<int>& pivots);
// Basis of {x : rows * x = 0}; ncols is the row length.
[[nodiscard]] std::vector<Vec> null_space(const Tower& t, const std::vector<Vec>& rows, int ncols);

// F_{q^e}-subspace of V in canonical form. The canonical representation is
// the F_q-level RREF (rn columns); the declared base degree e is metadata
// with the invariant that the vector set is F_{q^e}-closed. An F_{q^e}-level
// RREF (r n/e columns, dim/e rows) is kept alongside for serialization and
// fast intersections. Immutable after construction.
class Subspace {
public:
    static Subspace zero_subspace(const Ambient& a, int e = 1);
    static Subspace full_space(const Ambient& a);
    // Smallest F_{q^e}-subspace containing the given vectors; result keeps
    // base degree e.
    static Subspace span(const Ambient& a, const std::vector<Vec>& vectors, int e);

    [[nodiscard]] const Ambient& ambient() const { return amb_; }
    [[nodiscard]] const TowerPtr& tower() const { return amb_.tower; }
    [[nodiscard]] int r() const { return amb_.r; }
    [[nodiscard]] int base_degree() const { return e_; }
    [[nodiscard]] int dim() const { return int(rows_fq_.size()); }  // over F_q
    [[nodiscard]] int dim_over_base() const { return dim() / e_; }
    [[nodiscard]] bool is_zero() const { return rows_fq_.empty(); }
    [[nodiscard]] uint64_t vector_count() const;  // q^dim, saturates at UINT64_MAX

    [[nodiscard]] const std::vector<Vec>& flat_rows() const { return rows_fq_; }
    [[nodiscard]] const std::vector<int>& flat_pivots() const { return pivots_fq_; }
    [[nodiscard]] const std::vector<Vec>& base_rows() const { return rows_e_; }
    [[nodiscard]] std::vector<Vec> basis_vectors() const;       // F_q basis as V-vectors
    [[nodiscard]] std::vector<Vec> base_basis_vectors() const;  // F_{q^e} basis as V-vectors

    [[nodiscard]] bool member(const Vec& v) const;
    [[nodiscard]] bool contains(const Subspace& other) const;

    // Same set re-marked at base degree e; throws NotSubfieldLinearError if
    // the set is not F_{q^e}-closed.
    [[nodiscard]] Subspace with_base_degree(int e) const;
    // Re-marked at the largest divisor d | n under which the set is closed.
    [[nodiscard]] Subspace remarked_to_max_closure() const;

    // Set equality: ambient and F_q-canonical rows; the base-degree marking
    // is not part of identity.
    friend bool operator==(const Subspace& a, const Subspace& b);
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Subspace(Ambient a, int e) : amb_(std::move(a)), e_(e) {}
    void finish_from_fq_rows(Echelon ech);

    Ambient amb_;
    int e_ = 1;
    std::vector<Vec> rows_fq_;
    std::vector<int> pivots_fq_;
    std::vector<Vec> rows_e_;

    friend class ExhaustiveSubspaces;
};

// Intersection and sum are computed at the largest common base level and
// re-marked at the maximal detected closure.
[[nodiscard]] Subspace intersect(const Subspace& a, const Subspace& b);
[[nodiscard]] Subspace sum(const Subspace& a, const Subspace& b);

// F_{q^d}-closure <U>_{F_{q^d}}, marked with base degree d.
[[nodiscard]] Subspace scalar_span_over(const Subspace& u, int d);
[[nodiscard]] bool is_linear_over(const Subspace& u, int d);
[[nodiscard]] int detect_base_degree(const Subspace& u);

// Graph U_f = {(x, f(x))} of the additive polynomial f(x) = sum coeffs[i] x^{q^i}
// in the rank-2 ambient over the given tower; coeffs has length n.
[[nodiscard]] Subspace graph_subspace(const TowerPtr& t, const Vec& coeffs);

// Uniformly random m-dimensional F_q-subspace: m independent uniform vectors,
// redrawn together on dependence. Deterministic per seed.
[[nodiscard]] Subspace random_subspace(const Ambient& a, int m, uint64_t seed);

// Gaussian binomial [a choose b]_q; saturates at UINT64_MAX on overflow.
[[nodiscard]] uint64_t gaussian_binomial(int a, int b, uint64_t q);

// Uniform draw from [0, bound) by rejection; avoids distribution classes so
// streams are identical across standard libraries.
[[nodiscard]] uint64_t rand_below(std::mt19937_64& rng, uint64_t bound);
[[nodiscard]] Fe random_element(std::mt19937_64& rng, const Tower& t);

// Enumerates every m-dimensional F_q-subspace of V exactly once via reduced
// echelon pivot patterns. Construction throws BudgetExceededError when the
// Gaussian binomial count exceeds the budget.
class ExhaustiveSubspaces {
public:
    ExhaustiveSubspaces(const Ambient& a, int m, uint64_t budget = uint64_t(1) << 22);

    [[nodiscard]] uint64_t count() const { return count_; }
    // Returns false when exhausted; otherwise fills out with the next subspace.
    bool next(Subspace& out);
    void reset();

private:
    void rebuild_free_slots();
    [[nodiscard]] Subspace current() const;

    Ambient amb_;
    int m_ = 0;
    int cols_ = 0;
    uint64_t count_ = 0;
    std::vector<Fe> fq_;  // the q scalars of F_q
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_slots_;  // (row, col) free positions
    std::vector<size_t> digits_;
    bool done_ = false;
    bool fresh_ = true;
};

}  // namespace linset
