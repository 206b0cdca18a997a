#include "linset/subspace.hpp"

#include <algorithm>
#include <numeric>

namespace linset {

Vec vec_add(const Tower& t, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = t.add(a[i], b[i]);
    return out;
}

Vec vec_sub(const Tower& t, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = t.sub(a[i], b[i]);
    return out;
}

Vec vec_scale(const Tower& t, Fe c, const Vec& a) {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = t.mul(c, a[i]);
    return out;
}

Vec vec_frobenius(const Tower& t, const Vec& a, int64_t i) {
    Vec out(a.size());
    for (size_t j = 0; j < a.size(); ++j) out[j] = t.frobenius(a[j], i);
    return out;
}

bool vec_is_zero(const Vec& a) {
    for (Fe x : a)
        if (!x.is_zero()) return false;
    return true;
}

Vec flatten_vec(const Tower& t, const Vec& v, int e) {
    const int blocks = t.n() / e;
    Vec out;
    out.reserve(v.size() * size_t(blocks));
    for (Fe x : v) {
        std::vector<Fe> cs = t.coords(x, e);
        out.insert(out.end(), cs.begin(), cs.end());
    }
    return out;
}

Vec unflatten_vec(const Tower& t, const Vec& row, int e) {
    const int blocks = t.n() / e;
    if (row.size() % size_t(blocks) != 0) throw Error("unflatten_vec: length mismatch");
    Vec out(row.size() / size_t(blocks));
    std::vector<Fe> cs(blocks);
    for (size_t j = 0; j < out.size(); ++j) {
        for (int i = 0; i < blocks; ++i) cs[i] = row[j * size_t(blocks) + i];
        out[j] = t.uncoords(cs, e);
    }
    return out;
}

Echelon rref(const Tower& t, std::vector<Vec> rows) {
    Echelon out;
    if (rows.empty()) return out;
    const size_t cols = rows[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Fe scale = t.inv(rows[rank][col]);
        for (size_t j = col; j < cols; ++j) rows[rank][j] = t.mul(scale, rows[rank][j]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col].is_zero()) continue;
            Fe f = rows[i][col];
            for (size_t j = col; j < cols; ++j)
                rows[i][j] = t.sub(rows[i][j], t.mul(f, rows[rank][j]));
        }
        out.pivots.push_back(int(col));
        ++rank;
    }
    rows.resize(rank);
    out.rows = std::move(rows);
    return out;
}

Vec reduce_against(const Tower& t, Vec row, const std::vector<Vec>& rows,
                   const std::vector<int>& pivots) {
    for (size_t i = 0; i < rows.size(); ++i) {
        Fe f = row[size_t(pivots[i])];
        if (f.is_zero()) continue;
        for (size_t j = 0; j < row.size(); ++j) row[j] = t.sub(row[j], t.mul(f, rows[i][j]));
    }
    return row;
}

std::vector<Vec> null_space(const Tower& t, const std::vector<Vec>& rows, int ncols) {
    Echelon ech = rref(t, rows);
    std::vector<bool> is_piv(size_t(ncols), false);
    for (int pcol : ech.pivots) is_piv[size_t(pcol)] = true;
    std::vector<Vec> basis;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (is_piv[size_t(free_col)]) continue;
        Vec v(size_t(ncols), t.zero());
        v[size_t(free_col)] = t.one();
        for (size_t i = 0; i < ech.rows.size(); ++i)
            v[size_t(ech.pivots[i])] = t.neg(ech.rows[i][size_t(free_col)]);
        basis.push_back(std::move(v));
    }
    return basis;
}

void Subspace::finish_from_fq_rows(Echelon ech) {
    rows_fq_ = std::move(ech.rows);
    pivots_fq_ = std::move(ech.pivots);
    const Tower& t = *amb_.tower;
    if (e_ == 1) {
        rows_e_ = rows_fq_;
        return;
    }
    if (dim() % e_ != 0)
        throw NotSubfieldLinearError("subspace: F_q-dimension not divisible by base degree");
    std::vector<Vec> erows;
    erows.reserve(rows_fq_.size());
    for (const Vec& row : rows_fq_) erows.push_back(flatten_vec(t, unflatten_vec(t, row, 1), e_));
    Echelon eech = rref(t, std::move(erows));
    if (int(eech.rows.size()) * e_ != dim())
        throw NotSubfieldLinearError("subspace: set is not closed under the base field");
    rows_e_ = std::move(eech.rows);
}

Subspace Subspace::zero_subspace(const Ambient& a, int e) {
    (void)a.tower->subfield_order(e);  // validates e | n
    Subspace s(a, e);
    return s;
}

Subspace Subspace::full_space(const Ambient& a) {
    std::vector<Vec> std_basis;
    for (int j = 0; j < a.r; ++j) {
        Vec v(size_t(a.r), a.tower->zero());
        v[size_t(j)] = a.tower->one();
        std_basis.push_back(std::move(v));
    }
    return span(a, std_basis, a.tower->n());
}

Subspace Subspace::span(const Ambient& a, const std::vector<Vec>& vectors, int e) {
    const Tower& t = *a.tower;
    (void)t.subfield_order(e);  // validates e | n
    Subspace s(a, e);
    std::vector<Vec> rows;
    rows.reserve(vectors.size() * size_t(e));
    Fe gamma = t.subfield_gen(e);
    for (const Vec& v : vectors) {
        if (int(v.size()) != a.r) throw Error("span: vector length does not match ambient rank");
        Vec w = v;
        for (int i = 0; i < e; ++i) {
            rows.push_back(flatten_vec(t, w, 1));
            if (i + 1 < e) w = vec_scale(t, gamma, w);
        }
    }
    s.finish_from_fq_rows(rref(t, std::move(rows)));
    return s;
}

uint64_t Subspace::vector_count() const {
    uint64_t total = 1;
    const uint64_t q = amb_.tower->q();
    for (int i = 0; i < dim(); ++i) {
        if (total > UINT64_MAX / q) return UINT64_MAX;
        total *= q;
    }
    return total;
}

std::vector<Vec> Subspace::basis_vectors() const {
    std::vector<Vec> out;
    out.reserve(rows_fq_.size());
    for (const Vec& row : rows_fq_) out.push_back(unflatten_vec(*amb_.tower, row, 1));
    return out;
}

std::vector<Vec> Subspace::base_basis_vectors() const {
    std::vector<Vec> out;
    out.reserve(rows_e_.size());
    for (const Vec& row : rows_e_) out.push_back(unflatten_vec(*amb_.tower, row, e_));
    return out;
}

bool Subspace::member(const Vec& v) const {
    if (int(v.size()) != amb_.r) throw Error("member: vector length does not match ambient rank");
    Vec red = reduce_against(*amb_.tower, flatten_vec(*amb_.tower, v, 1), rows_fq_, pivots_fq_);
    return vec_is_zero(red);
}

bool Subspace::contains(const Subspace& other) const {
    if (!amb_.same(other.amb_)) throw AmbientMismatchError("contains: ambient mismatch");
    for (const Vec& row : other.rows_fq_) {
        if (!vec_is_zero(reduce_against(*amb_.tower, row, rows_fq_, pivots_fq_))) return false;
    }
    return true;
}

Subspace Subspace::with_base_degree(int e) const {
    const Tower& t = *amb_.tower;
    (void)t.subfield_order(e);
    if (e > 1 && !is_linear_over(*this, e))
        throw NotSubfieldLinearError("with_base_degree: set is not F_{q^e}-closed");
    Subspace s(amb_, e);
    Echelon ech;
    ech.rows = rows_fq_;
    ech.pivots = pivots_fq_;
    s.finish_from_fq_rows(std::move(ech));
    return s;
}

Subspace Subspace::remarked_to_max_closure() const { return with_base_degree(detect_base_degree(*this)); }

bool operator==(const Subspace& a, const Subspace& b) {
    if (!a.amb_.same(b.amb_)) throw AmbientMismatchError("==: ambient mismatch");
    return a.rows_fq_ == b.rows_fq_;
}

namespace {

// Generating rows for U at base level e (entries over F_{q^e}); minimal when
// e equals U's marking, redundant otherwise.
std::vector<Vec> generating_rows_at(const Subspace& u, int e) {
    if (e == u.base_degree()) return u.base_rows();
    if (e == 1) return u.flat_rows();
    const Tower& t = *u.tower();
    std::vector<Vec> rows;
    rows.reserve(u.flat_rows().size());
    for (const Vec& row : u.flat_rows()) rows.push_back(flatten_vec(t, unflatten_vec(t, row, 1), e));
    return rows;
}

}  // namespace

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (!a.ambient().same(b.ambient())) throw AmbientMismatchError("intersect: ambient mismatch");
    const Tower& t = *a.tower();
    const int e = std::gcd(a.base_degree(), b.base_degree());
    std::vector<Vec> ra = generating_rows_at(a, e);
    std::vector<Vec> rb = generating_rows_at(b, e);
    const size_t cols = size_t(a.r()) * size_t(t.n() / e);
    // Zassenhaus: rows [x|x] for x in A, [y|0] for y in B; rows of the RREF
    // whose left half vanishes carry a basis of the intersection on the right.
    std::vector<Vec> stacked;
    stacked.reserve(ra.size() + rb.size());
    for (const Vec& x : ra) {
        Vec w(2 * cols, t.zero());
        std::copy(x.begin(), x.end(), w.begin());
        std::copy(x.begin(), x.end(), w.begin() + long(cols));
        stacked.push_back(std::move(w));
    }
    for (const Vec& y : rb) {
        Vec w(2 * cols, t.zero());
        std::copy(y.begin(), y.end(), w.begin());
        stacked.push_back(std::move(w));
    }
    Echelon ech = rref(t, std::move(stacked));
    std::vector<Vec> meet_vectors;
    for (size_t i = 0; i < ech.rows.size(); ++i) {
        if (size_t(ech.pivots[i]) < cols) continue;
        Vec right(ech.rows[i].begin() + long(cols), ech.rows[i].end());
        meet_vectors.push_back(unflatten_vec(t, right, e));
    }
    Subspace meet = Subspace::span(a.ambient(), meet_vectors, e);
    return meet.remarked_to_max_closure();
}

Subspace sum(const Subspace& a, const Subspace& b) {
    if (!a.ambient().same(b.ambient())) throw AmbientMismatchError("sum: ambient mismatch");
    const Tower& t = *a.tower();
    const int e = std::gcd(a.base_degree(), b.base_degree());
    std::vector<Vec> vectors;
    for (const Vec& row : generating_rows_at(a, e)) vectors.push_back(unflatten_vec(t, row, e));
    for (const Vec& row : generating_rows_at(b, e)) vectors.push_back(unflatten_vec(t, row, e));
    return Subspace::span(a.ambient(), vectors, e).remarked_to_max_closure();
}

Subspace scalar_span_over(const Subspace& u, int d) {
    return Subspace::span(u.ambient(), u.basis_vectors(), d);
}

bool is_linear_over(const Subspace& u, int d) {
    const Tower& t = *u.tower();
    (void)t.subfield_order(d);  // validates d | n
    // Closure under one multiplicative generator of F_{q^d}, checked on basis
    // vectors, is equivalent to closure under all of F_{q^d}.
    Fe gamma = t.subfield_gen(d);
    for (const Vec& v : u.basis_vectors())
        if (!u.member(vec_scale(t, gamma, v))) return false;
    return true;
}

int detect_base_degree(const Subspace& u) {
    const auto& divs = u.tower()->subfield_degrees();
    for (auto it = divs.rbegin(); it != divs.rend(); ++it)
        if (u.dim() % *it == 0 && is_linear_over(u, *it)) return *it;
    return 1;
}

Subspace graph_subspace(const TowerPtr& tp, const Vec& coeffs) {
    const Tower& t = *tp;
    if (int(coeffs.size()) != t.n())
        throw Error("graph_subspace: expected n = " + std::to_string(t.n()) + " coefficients");
    Ambient amb{tp, 2};
    std::vector<Vec> vectors;
    Fe x = t.one();
    for (int j = 0; j < t.n(); ++j) {
        Fe fx = t.zero();
        for (int i = 0; i < t.n(); ++i)
            if (!coeffs[size_t(i)].is_zero()) fx = t.add(fx, t.mul(coeffs[size_t(i)], t.frobenius(x, i)));
        vectors.push_back(Vec{x, fx});
        x = t.mul(x, t.gen());
    }
    Subspace g = Subspace::span(amb, vectors, 1);
    if (g.dim() != t.n()) throw Error("graph_subspace: graph dimension mismatch");
    return g;
}

uint64_t rand_below(std::mt19937_64& rng, uint64_t bound) {
    if (bound == 0) throw Error("rand_below: empty range");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

Fe random_element(std::mt19937_64& rng, const Tower& t) {
    uint64_t u = rand_below(rng, t.size());
    return u == 0 ? t.zero() : Fe{int32_t(u - 1)};
}

Subspace random_subspace(const Ambient& a, int m, uint64_t seed) {
    const Tower& t = *a.tower;
    const int cols = a.r * t.n();
    if (m < 0 || m > cols) throw RankError("random_subspace: m out of range");
    std::mt19937_64 rng(seed);
    const std::vector<Fe> fq = t.subfield_elements(1);
    while (true) {
        std::vector<Vec> rows;
        rows.assign(size_t(m), Vec(size_t(cols)));
        for (auto& row : rows)
            for (auto& x : row) x = fq[rand_below(rng, fq.size())];
        if (int(rref(t, rows).rows.size()) != m) continue;
        std::vector<Vec> vectors;
        vectors.reserve(rows.size());
        for (const Vec& row : rows) vectors.push_back(unflatten_vec(t, row, 1));
        return Subspace::span(a, vectors, 1);
    }
}

uint64_t gaussian_binomial(int a, int b, uint64_t q) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    // [a b]_q via the Pascal recurrence [i j] = [i-1 j-1] + q^j [i-1 j],
    // saturating at UINT64_MAX.
    std::vector<uint64_t> row(size_t(b) + 1, 0);
    row[0] = 1;
    std::vector<uint64_t> qpow(size_t(b) + 1, 1);
    for (int j = 1; j <= b; ++j)
        qpow[size_t(j)] = qpow[size_t(j - 1)] > UINT64_MAX / q ? UINT64_MAX : qpow[size_t(j - 1)] * q;
    for (int i = 1; i <= a; ++i) {
        for (int j = std::min(i, b); j >= 1; --j) {
            uint64_t scaled = (row[size_t(j)] != 0 && qpow[size_t(j)] > UINT64_MAX / row[size_t(j)])
                                  ? UINT64_MAX
                                  : row[size_t(j)] * qpow[size_t(j)];
            uint64_t total = row[size_t(j - 1)] > UINT64_MAX - scaled ? UINT64_MAX
                                                                     : row[size_t(j - 1)] + scaled;
            row[size_t(j)] = total;
        }
    }
    return row[size_t(b)];
}

ExhaustiveSubspaces::ExhaustiveSubspaces(const Ambient& a, int m, uint64_t budget)
    : amb_(a), m_(m), cols_(a.r * a.tower->n()) {
    if (m < 0 || m > cols_) throw RankError("subspace enumeration: m out of range");
    count_ = gaussian_binomial(cols_, m_, a.tower->q());
    if (count_ > budget)
        throw BudgetExceededError("subspace enumeration: count " + std::to_string(count_) +
                                  " exceeds budget " + std::to_string(budget));
    fq_ = a.tower->subfield_elements(1);
    reset();
}

void ExhaustiveSubspaces::reset() {
    pivots_.resize(size_t(m_));
    std::iota(pivots_.begin(), pivots_.end(), 0);
    done_ = false;
    fresh_ = true;
    rebuild_free_slots();
}

void ExhaustiveSubspaces::rebuild_free_slots() {
    free_slots_.clear();
    std::vector<bool> is_piv(size_t(cols_), false);
    for (int pcol : pivots_) is_piv[size_t(pcol)] = true;
    for (int i = 0; i < m_; ++i)
        for (int j = pivots_[size_t(i)] + 1; j < cols_; ++j)
            if (!is_piv[size_t(j)]) free_slots_.emplace_back(i, j);
    digits_.assign(free_slots_.size(), 0);
}

Subspace ExhaustiveSubspaces::current() const {
    const Tower& t = *amb_.tower;
    Echelon ech;
    ech.pivots = pivots_;
    ech.rows.assign(size_t(m_), Vec(size_t(cols_), t.zero()));
    for (int i = 0; i < m_; ++i) ech.rows[size_t(i)][size_t(pivots_[size_t(i)])] = t.one();
    for (size_t s = 0; s < free_slots_.size(); ++s)
        ech.rows[size_t(free_slots_[s].first)][size_t(free_slots_[s].second)] = fq_[digits_[s]];
    Subspace out = Subspace::zero_subspace(amb_, 1);
    out.rows_fq_ = std::move(ech.rows);
    out.pivots_fq_ = std::move(ech.pivots);
    out.rows_e_ = out.rows_fq_;
    return out;
}

bool ExhaustiveSubspaces::next(Subspace& out) {
    if (done_) return false;
    if (fresh_) {
        fresh_ = false;
        out = current();
        return true;
    }
    // advance the free-value odometer
    size_t pos = 0;
    while (pos < digits_.size() && digits_[pos] + 1 == fq_.size()) digits_[pos++] = 0;
    if (pos < digits_.size()) {
        ++digits_[pos];
        out = current();
        return true;
    }
    // advance the pivot combination (lexicographic on column tuples)
    if (m_ == 0) {
        done_ = true;
        return false;
    }
    int i = m_ - 1;
    while (i >= 0 && pivots_[size_t(i)] == cols_ - m_ + i) --i;
    if (i < 0) {
        done_ = true;
        return false;
    }
    ++pivots_[size_t(i)];
    for (int j = i + 1; j < m_; ++j) pivots_[size_t(j)] = pivots_[size_t(j - 1)] + 1;
    rebuild_free_slots();
    out = current();
    return true;
}

}  // namespace linset
