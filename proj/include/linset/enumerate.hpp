#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "linset/errors.hpp"
#include "linset/subspace.hpp"
#include "linset/tower.hpp"

namespace linset {

// Every element of the field, zero first then ascending powers of the generator.
inline std::vector<Fe> all_elements(const Tower& t) {
    std::vector<Fe> out;
    out.reserve(size_t(t.size()));
    out.push_back(t.zero());
    for (uint64_t k = 0; k + 1 < t.size(); ++k) out.push_back(Fe{int32_t(k)});
    return out;
}

// Visits every vector in the row space of `basis` (coefficients from `scalars`),
// zero vector included, exactly once. The visited vector is updated incrementally:
// one basis-row delta per step, so the cost per vector is O(len) field additions.
template <typename F>
void for_each_combination(const Tower& t, const std::vector<Vec>& basis,
                          const std::vector<Fe>& scalars, F&& visit) {
    const size_t m = basis.size();
    const size_t s = scalars.size();
    const size_t len = m == 0 ? 0 : basis[0].size();
    std::vector<size_t> digit(m, 0);
    Vec cur(len, t.zero());
    // Precomputed deltas: stepping digit i from a to a+1 adds (s[a+1]-s[a])*row_i.
    std::vector<std::vector<Vec>> step(m);
    for (size_t i = 0; i < m; ++i) {
        step[i].resize(s);
        for (size_t a = 0; a + 1 < s; ++a)
            step[i][a] = vec_scale(t, t.sub(scalars[a + 1], scalars[a]), basis[i]);
        // wrap delta: from s[s-1] back to s[0]
        step[i][s - 1] = vec_scale(t, t.sub(scalars[0], scalars[s - 1]), basis[i]);
    }
    while (true) {
        visit(const_cast<const Vec&>(cur));
        size_t pos = 0;
        while (pos < m) {
            size_t a = digit[pos];
            cur = vec_add(t, cur, step[pos][a]);
            if (a + 1 < s) {
                ++digit[pos];
                break;
            }
            digit[pos] = 0;
            ++pos;
        }
        if (pos == m) return;
    }
}

// Visits every vector of the subspace, zero included, q^dim visits total.
template <typename F>
void for_each_vector(const Subspace& u, F&& visit) {
    const Tower& t = *u.tower();
    const std::vector<Fe> fq = t.subfield_elements(1);
    std::vector<Vec> basis = u.basis_vectors();
    if (basis.empty()) {
        Vec zero(size_t(u.r()), t.zero());
        visit(const_cast<const Vec&>(zero));
        return;
    }
    for_each_combination(t, basis, fq, std::forward<F>(visit));
}

template <typename F>
void for_each_nonzero_vector(const Subspace& u, F&& visit) {
    for_each_vector(u, [&](const Vec& v) {
        if (!vec_is_zero(v)) visit(v);
    });
}

// Number of points of the projective space of rank r over the field of order N.
inline uint64_t proj_point_count(uint64_t N, int r) {
    // (N^r - 1) / (N - 1), saturating at UINT64_MAX on overflow.
    uint64_t total = 0;
    uint64_t pw = 1;
    for (int i = 0; i < r; ++i) {
        if (total > UINT64_MAX - pw) return UINT64_MAX;
        total += pw;
        if (i + 1 < r && pw > UINT64_MAX / N) return UINT64_MAX;
        if (i + 1 < r) pw *= N;
    }
    return total;
}

// Visits one representative per projective point of the full rank-r space over
// the top field: representatives in normal form, first nonzero coordinate 1,
// lexicographic by coordinate tuple from the left.
template <typename F>
void for_each_proj_rep(const Tower& t, int r, F&& visit) {
    std::vector<Fe> elems = all_elements(t);
    Vec v(size_t(r), t.zero());
    // leading position k: v[k] = 1, v[0..k) = 0, v(k..r) arbitrary
    for (int k = 0; k < r; ++k) {
        std::fill(v.begin(), v.end(), t.zero());
        v[size_t(k)] = t.one();
        const int tail = r - k - 1;
        std::vector<size_t> digit(size_t(tail), 0);
        while (true) {
            visit(const_cast<const Vec&>(v));
            int pos = 0;
            while (pos < tail) {
                size_t a = digit[size_t(pos)] + 1;
                if (a < elems.size()) {
                    digit[size_t(pos)] = a;
                    v[size_t(k + 1 + pos)] = elems[a];
                    break;
                }
                digit[size_t(pos)] = 0;
                v[size_t(k + 1 + pos)] = elems[0];
                ++pos;
            }
            if (pos == tail) break;
        }
    }
}

}  // namespace linset
