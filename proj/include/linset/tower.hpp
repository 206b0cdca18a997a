#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "linset/errors.hpp"

namespace linset {

inline constexpr uint64_t kDefaultTableLimit = uint64_t(1) << 24;
inline constexpr uint64_t kDefaultEnumCap = uint64_t(1) << 24;

// Element of a tower's top field F_{q^n}. Stored as the discrete log with
// respect to the tower's primitive element; v = -1 marks zero. Elements carry
// no tower pointer, so mixing towers is the caller's responsibility (subspace
// level operations do guard ambients).
struct Fe {
    int32_t v = -1;

    [[nodiscard]] bool is_zero() const { return v < 0; }
    friend bool operator==(Fe a, Fe b) { return a.v == b.v; }
    friend bool operator!=(Fe a, Fe b) { return a.v != b.v; }
    friend bool operator<(Fe a, Fe b) { return a.v < b.v; }
};

using Vec = std::vector<Fe>;

// Field tower F_p <= F_q <= F_{q^d} <= F_{q^n} for d | n, q = p^h, with exact
// arithmetic via Zech logarithm tables. Immutable after construction; all
// methods are pure reads and safe for concurrent use.
class Tower {
public:
    // Deterministic: modulus is the smallest monic irreducible of degree h*n
    // over F_p (non-leading coefficients read as a base-p integer, highest
    // degree most significant) whose companion root is primitive. Throws
    // NotPrimeError, FieldTooLargeError.
    static std::shared_ptr<const Tower> make(int64_t p, int h, int n,
                                             uint64_t table_limit = kDefaultTableLimit);

    [[nodiscard]] int64_t p() const { return p_; }
    [[nodiscard]] int h() const { return h_; }
    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int degree() const { return deg_; }  // h*n over F_p
    [[nodiscard]] uint64_t q() const { return q_; }
    [[nodiscard]] uint64_t size() const { return size_; }  // p^{h n}
    [[nodiscard]] uint64_t subfield_order(int d) const;    // q^d, requires d | n
    [[nodiscard]] const std::vector<int64_t>& modulus() const { return modulus_; }
    [[nodiscard]] const std::vector<int>& subfield_degrees() const { return divisors_; }

    [[nodiscard]] Fe zero() const { return Fe{-1}; }
    [[nodiscard]] Fe one() const { return Fe{0}; }
    [[nodiscard]] Fe gen() const;              // primitive element beta
    [[nodiscard]] Fe subfield_gen(int d) const;  // beta^{(q^n-1)/(q^d-1)}, generates F_{q^d}^*

    // Integer encoding: digits base p, low-first, w.r.t. the power basis of
    // the primitive element over F_p. Bijection [0, p^{hn}) <-> field.
    [[nodiscard]] Fe from_value(uint64_t v) const;
    [[nodiscard]] uint64_t to_value(Fe x) const;
    [[nodiscard]] Fe from_int(int64_t c) const;  // (c mod p) * 1

    [[nodiscard]] Fe add(Fe a, Fe b) const;
    [[nodiscard]] Fe sub(Fe a, Fe b) const;
    [[nodiscard]] Fe neg(Fe a) const;
    [[nodiscard]] Fe mul(Fe a, Fe b) const;
    [[nodiscard]] Fe inv(Fe a) const;          // throws DivisionByZeroError on zero
    [[nodiscard]] Fe div(Fe a, Fe b) const;
    [[nodiscard]] Fe pow(Fe a, int64_t e) const;  // 0^0 = 1; negative e on zero throws
    [[nodiscard]] Fe frobenius(Fe a, int64_t i) const;  // a^{q^i}, period n in i
    [[nodiscard]] Fe rel_trace(Fe a, int d) const;      // Tr_{q^n/q^d}, requires d | n

    [[nodiscard]] bool in_subfield(Fe a, int d) const;
    // All q^d elements of F_{q^d}, deterministic order (zero, then ascending
    // powers of subfield_gen(d)).
    [[nodiscard]] std::vector<Fe> subfield_elements(int d) const;

    // Coordinates of x over F_{q^d} w.r.t. the power basis
    // {1, beta, ..., beta^{n/d-1}}; length n/d. uncoords inverts.
    [[nodiscard]] std::vector<Fe> coords(Fe x, int d) const;
    [[nodiscard]] Fe uncoords(const std::vector<Fe>& cs, int d) const;

    // Packed integer form of x in F_{q^d}: h*d base-p digits, low-first,
    // w.r.t. the power basis of subfield_gen(d). Throws NotSubfieldLinearError
    // if x lies outside F_{q^d}.
    [[nodiscard]] uint64_t subfield_value(Fe x, int d) const;
    [[nodiscard]] Fe subfield_from_value(uint64_t v, int d) const;

    // "p h n c0 c1 ... c_{hn}" with modulus coefficients low-degree first.
    [[nodiscard]] std::string serialize_line() const;

    [[nodiscard]] bool same_field(const Tower& o) const {
        return p_ == o.p_ && h_ == o.h_ && n_ == o.n_;
    }

private:
    Tower() = default;
    void build();
    void build_prime_field();
    void build_extension();
    void build_subfield_solvers();
    [[nodiscard]] std::vector<int64_t> poly_digits(uint64_t value) const;
    int divisor_index(int d) const;  // throws NotDivisorError

    int64_t p_ = 0;
    int h_ = 0;
    int n_ = 0;
    int deg_ = 0;
    uint64_t q_ = 0;
    uint64_t size_ = 0;
    std::vector<int64_t> modulus_;      // low-degree first, monic, length deg_+1
    std::vector<uint32_t> val_of_log_;  // value encoding of beta^k, k in [0, size-1)
    std::vector<int32_t> log_of_val_;   // inverse map, size_ entries, [0] unused
    std::vector<int32_t> zech_;         // zech[k] = log(1 + beta^k), -1 when zero
    std::vector<int> divisors_;         // divisors of n, ascending
    // Per divisor d: inverse of the deg x deg matrix over F_p whose columns
    // are gamma_d^i beta^j (i < h d, j < n/d) in the polynomial basis. Solves
    // both coords() and subfield_value().
    std::vector<std::vector<int64_t>> coord_inverse_;
    std::vector<int32_t> subfield_gen_log_;
};

using TowerPtr = std::shared_ptr<const Tower>;

}  // namespace linset
