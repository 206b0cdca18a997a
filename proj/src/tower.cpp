#include "linset/tower.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace linset {

namespace {

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int64_t mod_inverse(int64_t a, int64_t p) {
    // extended Euclid; a must be nonzero mod p
    int64_t t = 0, new_t = 1, r = p, new_r = ((a % p) + p) % p;
    while (new_r != 0) {
        int64_t quot = r / new_r;
        std::swap(t -= quot * new_t, new_t);
        std::swap(r -= quot * new_r, new_r);
    }
    if (r != 1) throw Error("mod_inverse: not invertible");
    return ((t % p) + p) % p;
}

uint64_t pow_mod_u64(uint64_t b, uint64_t e, uint64_t m) {
    if (m == 1) return 0;
    uint64_t acc = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return acc;
}

// Gauss-Jordan inverse of an m x m matrix over F_p, row-major entries.
std::vector<int64_t> invert_mod_p(std::vector<int64_t> a, int m, int64_t p) {
    std::vector<int64_t> inv(size_t(m) * m, 0);
    for (int i = 0; i < m; ++i) inv[size_t(i) * m + i] = 1;
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int row = col; row < m; ++row)
            if (a[size_t(row) * m + col] % p != 0) {
                piv = row;
                break;
            }
        if (piv < 0) throw Error("invert_mod_p: singular matrix");
        if (piv != col)
            for (int j = 0; j < m; ++j) {
                std::swap(a[size_t(piv) * m + j], a[size_t(col) * m + j]);
                std::swap(inv[size_t(piv) * m + j], inv[size_t(col) * m + j]);
            }
        int64_t scale = mod_inverse(a[size_t(col) * m + col], p);
        for (int j = 0; j < m; ++j) {
            a[size_t(col) * m + j] = a[size_t(col) * m + j] * scale % p;
            inv[size_t(col) * m + j] = inv[size_t(col) * m + j] * scale % p;
        }
        for (int row = 0; row < m; ++row) {
            if (row == col) continue;
            int64_t f = a[size_t(row) * m + col] % p;
            if (f == 0) continue;
            for (int j = 0; j < m; ++j) {
                a[size_t(row) * m + j] = ((a[size_t(row) * m + j] - f * a[size_t(col) * m + j]) % p + p) % p;
                inv[size_t(row) * m + j] =
                    ((inv[size_t(row) * m + j] - f * inv[size_t(col) * m + j]) % p + p) % p;
            }
        }
    }
    return inv;
}

}  // namespace

std::shared_ptr<const Tower> Tower::make(int64_t p, int h, int n, uint64_t table_limit) {
    if (!is_prime(p)) throw NotPrimeError("tower: p = " + std::to_string(p) + " is not prime");
    if (h < 1 || n < 1) throw Error("tower: h and n must be positive");
    auto t = std::shared_ptr<Tower>(new Tower());
    t->p_ = p;
    t->h_ = h;
    t->n_ = n;
    t->deg_ = h * n;
    uint64_t q = 1;
    for (int i = 0; i < h; ++i) {
        if (q > table_limit / uint64_t(p)) throw FieldTooLargeError("tower: p^h exceeds table limit");
        q *= uint64_t(p);
    }
    t->q_ = q;
    uint64_t size = 1;
    for (int i = 0; i < t->deg_; ++i) {
        if (size > table_limit / uint64_t(p))
            throw FieldTooLargeError("tower: p^{hn} = p^" + std::to_string(t->deg_) +
                                     " exceeds table limit " + std::to_string(table_limit));
        size *= uint64_t(p);
    }
    if (size > (uint64_t(1) << 31) - 1)
        throw FieldTooLargeError("tower: field size exceeds the 2^31-1 index range");
    t->size_ = size;
    t->build();
    return t;
}

void Tower::build() {
    for (int d = 1; d <= n_; ++d)
        if (n_ % d == 0) divisors_.push_back(d);
    if (deg_ == 1)
        build_prime_field();
    else
        build_extension();
    // log(1 + beta^k); -1 marks 1 + beta^k = 0
    zech_.assign(size_ - 1, -1);
    for (uint64_t k = 0; k + 1 < size_; ++k) {
        uint64_t val = val_of_log_[k];
        int64_t c0 = int64_t(val % uint64_t(p_));
        uint64_t bumped = val - uint64_t(c0) + uint64_t((c0 + 1) % p_);
        zech_[k] = bumped == 0 ? -1 : log_of_val_[bumped];
    }
    subfield_gen_log_.resize(divisors_.size());
    const uint64_t order = size_ - 1;
    for (size_t i = 0; i < divisors_.size(); ++i) {
        uint64_t sub_ord = 1;
        for (int j = 0; j < h_ * divisors_[i]; ++j) sub_ord *= uint64_t(p_);
        subfield_gen_log_[i] = int32_t((order / (sub_ord - 1)) % order);
    }
    build_subfield_solvers();
}

void Tower::build_prime_field() {
    modulus_ = {0, 1};
    uint64_t N = size_;
    int64_t g = 1;
    if (N > 2) {
        for (g = 2; g < int64_t(N); ++g) {
            uint64_t x = uint64_t(g) % N;
            uint64_t steps = 1;
            while (x != 1) {
                x = x * uint64_t(g) % N;
                ++steps;
            }
            if (steps == N - 1) break;
        }
        if (g >= int64_t(N)) throw Error("tower: no primitive root found");
    }
    val_of_log_.assign(N - 1, 1);
    log_of_val_.assign(N, -1);
    uint64_t x = 1;
    for (uint64_t k = 0; k + 1 < N; ++k) {
        val_of_log_[k] = uint32_t(x);
        log_of_val_[x] = int32_t(k);
        x = x * uint64_t(g) % N;
    }
}

void Tower::build_extension() {
    const uint64_t N = size_;
    const int64_t p = p_;
    const int D = deg_;
    uint64_t head_limit = 1;
    for (int i = 0; i < D; ++i) head_limit *= uint64_t(p);
    std::vector<int64_t> coeffs(D), r(D);
    std::vector<uint32_t> logs;
    std::vector<int32_t> ltab;
    for (uint64_t cand = 1; cand < head_limit; ++cand) {
        uint64_t v = cand;
        for (int i = 0; i < D; ++i) {
            coeffs[i] = int64_t(v % uint64_t(p));
            v /= uint64_t(p);
        }
        if (coeffs[0] == 0) continue;  // t must be a unit mod the candidate
        std::fill(r.begin(), r.end(), 0);
        r[0] = 1;
        logs.assign(N - 1, 0);
        ltab.assign(N, -1);
        logs[0] = 1;
        ltab[1] = 0;
        bool ok = false;
        for (uint64_t k = 1; k < N; ++k) {
            int64_t carry = r[D - 1];
            for (int i = D - 1; i > 0; --i) r[i] = r[i - 1];
            r[0] = 0;
            if (carry != 0)
                for (int i = 0; i < D; ++i)
                    if (coeffs[i] != 0) r[i] = ((r[i] - carry * coeffs[i]) % p + p) % p;
            uint64_t val = 0;
            for (int i = D - 1; i >= 0; --i) val = val * uint64_t(p) + uint64_t(r[i]);
            if (val == 1) {
                ok = (k == N - 1);
                break;
            }
            if (k == N - 1) break;
            if (ltab[val] >= 0) throw Error("tower: power walk revisited a value");
            logs[k] = uint32_t(val);
            ltab[val] = int32_t(k);
        }
        if (!ok) continue;
        modulus_.assign(coeffs.begin(), coeffs.end());
        modulus_.push_back(1);
        val_of_log_ = std::move(logs);
        log_of_val_ = std::move(ltab);
        return;
    }
    throw Error("tower: no primitive polynomial found");
}

void Tower::build_subfield_solvers() {
    coord_inverse_.resize(divisors_.size());
    for (size_t di = 0; di < divisors_.size(); ++di) {
        int d = divisors_[di];
        int hd = h_ * d;
        int blocks = n_ / d;
        Fe gamma = subfield_gen(d);
        std::vector<int64_t> mat(size_t(deg_) * deg_, 0);
        // column j*hd + i holds gamma^i beta^j in the polynomial basis
        Fe beta_pow = one();
        for (int j = 0; j < blocks; ++j) {
            Fe cell = beta_pow;
            for (int i = 0; i < hd; ++i) {
                std::vector<int64_t> digits = poly_digits(to_value(cell));
                for (int row = 0; row < deg_; ++row)
                    mat[size_t(row) * deg_ + (j * hd + i)] = digits[row];
                cell = mul(cell, gamma);
            }
            beta_pow = mul(beta_pow, gen());
        }
        coord_inverse_[di] = invert_mod_p(std::move(mat), deg_, p_);
    }
}

std::vector<int64_t> Tower::poly_digits(uint64_t value) const {
    std::vector<int64_t> digits(deg_);
    for (int i = 0; i < deg_; ++i) {
        digits[i] = int64_t(value % uint64_t(p_));
        value /= uint64_t(p_);
    }
    return digits;
}

int Tower::divisor_index(int d) const {
    for (size_t i = 0; i < divisors_.size(); ++i)
        if (divisors_[i] == d) return int(i);
    throw NotDivisorError("d = " + std::to_string(d) + " does not divide n = " + std::to_string(n_));
}

uint64_t Tower::subfield_order(int d) const {
    divisor_index(d);
    uint64_t s = 1;
    for (int i = 0; i < h_ * d; ++i) s *= uint64_t(p_);
    return s;
}

Fe Tower::gen() const { return Fe{size_ - 1 > 1 ? 1 : 0}; }

Fe Tower::subfield_gen(int d) const { return Fe{subfield_gen_log_[divisor_index(d)]}; }

Fe Tower::from_value(uint64_t v) const {
    if (v >= size_) throw ParseError("field value " + std::to_string(v) + " out of range");
    if (v == 0) return zero();
    return Fe{log_of_val_[v]};
}

uint64_t Tower::to_value(Fe x) const {
    if (x.is_zero()) return 0;
    return val_of_log_[uint32_t(x.v)];
}

Fe Tower::from_int(int64_t c) const {
    int64_t m = ((c % p_) + p_) % p_;
    return from_value(uint64_t(m));
}

Fe Tower::add(Fe a, Fe b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int64_t order = int64_t(size_) - 1;
    int64_t d = (int64_t(b.v) - int64_t(a.v)) % order;
    if (d < 0) d += order;
    int32_t z = zech_[d];
    if (z < 0) return zero();
    return Fe{int32_t((int64_t(a.v) + z) % order)};
}

Fe Tower::neg(Fe a) const {
    if (p_ == 2 || a.is_zero()) return a;
    const int64_t order = int64_t(size_) - 1;
    return Fe{int32_t((int64_t(a.v) + order / 2) % order)};
}

Fe Tower::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe Tower::mul(Fe a, Fe b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    const int64_t order = int64_t(size_) - 1;
    return Fe{int32_t((int64_t(a.v) + int64_t(b.v)) % order)};
}

Fe Tower::inv(Fe a) const {
    if (a.is_zero()) throw DivisionByZeroError("inverse of zero");
    const int64_t order = int64_t(size_) - 1;
    return Fe{int32_t((order - int64_t(a.v)) % order)};
}

Fe Tower::div(Fe a, Fe b) const { return mul(a, inv(b)); }

Fe Tower::pow(Fe a, int64_t e) const {
    if (a.is_zero()) {
        if (e == 0) return one();
        if (e < 0) throw DivisionByZeroError("zero raised to a negative power");
        return zero();
    }
    const int64_t order = int64_t(size_) - 1;
    int64_t em = e % order;
    if (em < 0) em += order;
    return Fe{int32_t(int64_t(a.v) * em % order)};
}

Fe Tower::frobenius(Fe a, int64_t i) const {
    if (a.is_zero()) return a;
    int64_t im = ((i % n_) + n_) % n_;
    const uint64_t order = size_ - 1;
    uint64_t e = pow_mod_u64(q_ % std::max<uint64_t>(order, 1), uint64_t(im), std::max<uint64_t>(order, 1));
    if (order == 1) return a;
    return Fe{int32_t(uint64_t(a.v) * e % order)};
}

Fe Tower::rel_trace(Fe a, int d) const {
    divisor_index(d);
    Fe acc = zero();
    Fe term = a;
    for (int i = 0; i < n_ / d; ++i) {
        acc = add(acc, term);
        term = frobenius(term, d);
    }
    return acc;
}

bool Tower::in_subfield(Fe a, int d) const {
    divisor_index(d);
    if (a.is_zero()) return true;
    uint64_t order = size_ - 1;
    if (order == 1) return true;
    uint64_t step = order / (subfield_order(d) - 1);
    return uint64_t(a.v) % step == 0;
}

std::vector<Fe> Tower::subfield_elements(int d) const {
    uint64_t count = subfield_order(d);
    std::vector<Fe> out;
    out.reserve(count);
    out.push_back(zero());
    Fe g = subfield_gen(d);
    Fe x = one();
    for (uint64_t i = 0; i + 1 < count; ++i) {
        out.push_back(x);
        x = mul(x, g);
    }
    return out;
}

std::vector<Fe> Tower::coords(Fe x, int d) const {
    int di = divisor_index(d);
    const int hd = h_ * d;
    const int blocks = n_ / d;
    std::vector<int64_t> digits = poly_digits(to_value(x));
    const std::vector<int64_t>& inv = coord_inverse_[di];
    std::vector<int64_t> c(deg_, 0);
    for (int row = 0; row < deg_; ++row) {
        int64_t acc = 0;
        for (int col = 0; col < deg_; ++col) acc += inv[size_t(row) * deg_ + col] * digits[col] % p_;
        c[row] = acc % p_;
    }
    Fe gamma = subfield_gen(d);
    std::vector<Fe> out(blocks);
    for (int j = 0; j < blocks; ++j) {
        Fe acc = zero();
        Fe gp = one();
        for (int i = 0; i < hd; ++i) {
            if (c[j * hd + i] != 0) acc = add(acc, mul(from_int(c[j * hd + i]), gp));
            gp = mul(gp, gamma);
        }
        out[j] = acc;
    }
    return out;
}

Fe Tower::uncoords(const std::vector<Fe>& cs, int d) const {
    divisor_index(d);
    const int blocks = n_ / d;
    if (int(cs.size()) != blocks)
        throw Error("uncoords: expected " + std::to_string(blocks) + " coordinates");
    Fe acc = zero();
    Fe bp = one();
    for (int j = 0; j < blocks; ++j) {
        if (!in_subfield(cs[j], d)) throw NotSubfieldLinearError("uncoords: coordinate outside F_{q^d}");
        acc = add(acc, mul(cs[j], bp));
        bp = mul(bp, gen());
    }
    return acc;
}

uint64_t Tower::subfield_value(Fe x, int d) const {
    int di = divisor_index(d);
    const int hd = h_ * d;
    std::vector<int64_t> digits = poly_digits(to_value(x));
    const std::vector<int64_t>& inv = coord_inverse_[di];
    uint64_t packed = 0;
    uint64_t scale = 1;
    for (int row = 0; row < deg_; ++row) {
        int64_t acc = 0;
        for (int col = 0; col < deg_; ++col) acc += inv[size_t(row) * deg_ + col] * digits[col] % p_;
        acc %= p_;
        if (row < hd) {
            packed += uint64_t(acc) * scale;
            scale *= uint64_t(p_);
        } else if (acc != 0) {
            throw NotSubfieldLinearError("subfield_value: element outside F_{q^d}");
        }
    }
    return packed;
}

Fe Tower::subfield_from_value(uint64_t v, int d) const {
    divisor_index(d);
    const int hd = h_ * d;
    uint64_t limit = 1;
    for (int i = 0; i < hd; ++i) limit *= uint64_t(p_);
    if (v >= limit) throw ParseError("subfield value " + std::to_string(v) + " out of range");
    Fe gamma = subfield_gen(d);
    Fe acc = zero();
    Fe gp = one();
    for (int i = 0; i < hd; ++i) {
        int64_t digit = int64_t(v % uint64_t(p_));
        v /= uint64_t(p_);
        if (digit != 0) acc = add(acc, mul(from_int(digit), gp));
        gp = mul(gp, gamma);
    }
    return acc;
}

std::string Tower::serialize_line() const {
    std::ostringstream os;
    os << p_ << ' ' << h_ << ' ' << n_;
    for (int64_t c : modulus_) os << ' ' << c;
    return os.str();
}

}  // namespace linset
