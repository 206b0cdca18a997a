// Release gates: eight end-to-end verifications on fixed desk-scale grids,
// one printed pass/fail line each. Exit code 0 only when every selected
// gate passes. Run with --criterion N to execute a single gate.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "linset/constructions.hpp"
#include "linset/cyclic.hpp"
#include "linset/directions.hpp"
#include "linset/duality.hpp"
#include "linset/enumerate.hpp"
#include "linset/errors.hpp"
#include "linset/io.hpp"
#include "linset/linear_set.hpp"
#include "linset/subspace.hpp"
#include "linset/sweep.hpp"
#include "linset/tower.hpp"

using namespace linset;

namespace {

uint64_t upow(uint64_t b, int e) {
    uint64_t out = 1;
    while (e-- > 0) out *= b;
    return out;
}

template <typename F>
bool over_all_subspaces(const Ambient& amb, int m, F&& body) {
    ExhaustiveSubspaces es(amb, m, uint64_t(1) << 22);
    Subspace u = Subspace::zero_subspace(amb);
    while (es.next(u))
        if (!body(u)) return false;
    return true;
}

// Every F_q-subspace U induces the partition of its nonzero vectors by
// projective points, so sum_P (q^{w(P)} - 1) = q^{dim U} - 1. Checked on
// every subspace of every ambient with rn <= 6 over F_2.
bool gate_mass_identity() {
    for (int n = 1; n <= 6; ++n) {
        auto tp = Tower::make(2, 1, n);
        for (int r = 1; r * n <= 6; ++r) {
            Ambient amb{tp, r};
            for (int m = 0; m <= r * n; ++m) {
                bool ok = over_all_subspaces(
                    amb, m, [](const Subspace& u) { return !check_mass_formula(u).failed(); });
                if (!ok) return false;
            }
        }
    }
    return true;
}

// When every point weight is >= 2, the maximal uniform lower weight w
// divides n and U is closed under F_{q^w}. Exhaustive at (q, n, m) =
// (2, 2, 2), (2, 3, 3) and (3, 2, 2), rank-2 ambients.
bool gate_min_weight_linearity() {
    const std::vector<std::tuple<int64_t, int, int>> grids = {{2, 2, 2}, {2, 3, 3}, {3, 2, 2}};
    for (const auto& [p, n, m] : grids) {
        auto tp = Tower::make(p, 1, n);
        Ambient amb{tp, 2};
        bool ok = over_all_subspaces(amb, m, [](const Subspace& u) {
            return !check_min_weight_linearity(u).failed();
        });
        if (!ok) return false;
    }
    return true;
}

// With n <= q and all weights >= 2, some divisor d of n between the minimal
// weight and n gives the same linear set after extending scalars to F_{q^d}.
// Exhaustive over F_3 rank-2 grids, sampled over F_4 rank 3.
bool gate_closure_equality() {
    for (int n = 2; n <= 3; ++n) {
        auto tp = Tower::make(3, 1, n);
        Ambient amb{tp, 2};
        for (int m = 0; m <= n; ++m) {
            bool ok = over_all_subspaces(amb, m, [](const Subspace& u) {
                return !check_closure_equality(u).failed();
            });
            if (!ok) return false;
        }
    }
    auto tp = Tower::make(2, 2, 2);
    Ambient amb{tp, 3};
    for (int m = 1; m <= 4; ++m)
        for (uint64_t i = 0; i < 250; ++i) {
            Subspace u = random_subspace(amb, m, 77000 + uint64_t(m) * 1000 + i);
            if (check_closure_equality(u).failed()) return false;
        }
    return true;
}

// Trace-form duality on F_4^2: the complement dimension law, biduality,
// and the hyperplane-section versus dual-fiber equation for every pair of
// a subspace U and an F_4-closed partner R.
bool gate_duality() {
    auto tp = Tower::make(2, 1, 2);
    Ambient amb{tp, 2};
    std::vector<Subspace> partners;
    partners.push_back(Subspace::zero_subspace(amb, 2));
    for_each_proj_rep(*tp, 2, [&](const Vec& v) {
        partners.push_back(Subspace::span(amb, {v}, 2));
    });
    partners.push_back(Subspace::full_space(amb).with_base_degree(2));
    for (int m = 0; m <= 4; ++m) {
        bool ok = over_all_subspaces(amb, m, [&](const Subspace& u) {
            Subspace du = dual_subspace(u);
            if (du.dim() != 4 - u.dim()) return false;
            if (dual_subspace(du) != u) return false;
            for (const Subspace& r : partners)
                if (check_duality_dims(u, r).failed()) return false;
            return true;
        });
        if (!ok) return false;
    }
    return true;
}

// Every additive map on F_4, F_8 and F_9 lands in exactly one branch of the
// direction-count classification, and the identity map determines a single
// direction with full divisibility parameter s = Q.
bool gate_trichotomy() {
    const std::vector<std::pair<int64_t, int>> fields = {{2, 2}, {2, 3}, {3, 2}};
    for (const auto& [p, h] : fields) {
        auto tp = Tower::make(p, 1, h);
        const uint64_t Q = tp->size();
        std::vector<Fe> images(size_t(h), tp->zero());
        std::vector<uint64_t> digit(size_t(h), 0);
        while (true) {
            for (int i = 0; i < h; ++i) images[size_t(i)] = tp->from_value(digit[size_t(i)]);
            FunctionTable f;
            f.tower = tp;
            f.values.assign(size_t(Q), tp->zero());
            for (uint64_t x = 0; x < Q; ++x) {
                uint64_t rest = x;
                Fe acc = tp->zero();
                for (int i = 0; i < h; ++i) {
                    int64_t dig = int64_t(rest % uint64_t(p));
                    rest /= uint64_t(p);
                    acc = tp->add(acc, tp->mul(tp->from_int(dig), images[size_t(i)]));
                }
                f.values[size_t(x)] = acc;
            }
            TrichotomyResult tr = direction_trichotomy(f);
            if (tr.case_id < 1 || tr.case_id > 3) return false;
            if (check_direction_trichotomy(f).failed()) return false;
            bool is_identity = true;
            for (uint64_t x = 0; x < Q && is_identity; ++x)
                is_identity = f.values[size_t(x)] == tp->from_value(x);
            if (is_identity && (tr.N != 1 || tr.s != Q)) return false;
            size_t pos = 0;
            while (pos < size_t(h) && digit[pos] + 1 == Q) digit[pos++] = 0;
            if (pos == size_t(h)) break;
            ++digit[pos];
        }
    }
    return true;
}

// Cyclic block decomposition: the invariant part sits inside the rebuilt
// span, its fixed projection recovers the scalar closure, and the equality
// statement holds whenever its hypotheses do. Same grids as the closure
// gate, plus the degree-6 example whose blocks repeat with period 3.
bool gate_cyclic() {
    auto t6 = Tower::make(2, 1, 6);
    if (decompose(remark_example(t6)).d != 3) return false;
    auto run_one = [](const Subspace& u) {
        UiDecomposition dec = decompose(u);
        if (check_cyclic_inclusion(dec).failed()) return false;
        if (check_cyclic_projection(dec).failed()) return false;
        if (check_cyclic_equality(dec).failed()) return false;
        return true;
    };
    for (int n = 2; n <= 3; ++n) {
        auto tp = Tower::make(3, 1, n);
        Ambient amb{tp, 2};
        for (int m = 0; m <= n; ++m)
            if (!over_all_subspaces(amb, m, run_one)) return false;
    }
    auto tp = Tower::make(2, 2, 2);
    Ambient amb{tp, 3};
    for (int m = 1; m <= 4; ++m)
        for (uint64_t i = 0; i < 250; ++i)
            if (!run_one(random_subspace(amb, m, 77000 + uint64_t(m) * 1000 + i))) return false;
    return true;
}

// The rank-6 subspace of F_{7^6}^3 whose set has 7^5 + 7^3 + 1 points: the
// closed form matches enumeration, all points off the distinguished line are
// simple, no secant line carries exactly q + 1 points, and the field of
// linearity is F_7 itself.
bool gate_big_example() {
    auto tp = Tower::make(7, 1, 6);
    Subspace u = example_new(tp);
    if (u.dim() != 6) return false;
    LinearSet ls = LinearSet::of(u);
    if (ls.size() != upow(7, 5) + upow(7, 3) + 1) return false;
    const std::map<int, uint64_t> want_weights{{1, upow(7, 5)}, {2, upow(7, 3)}, {3, 1}};
    if (ls.weight_spectrum() != want_weights) return false;
    std::map<uint64_t, uint64_t> secants = example_secant_sizes(u);
    if (secants.count(8) != 0) return false;
    const std::map<uint64_t, uint64_t> want_secants{{50, 117649}, {344, 50}};
    if (secants != want_secants) return false;
    LinearityResult folc = field_of_linearity_by_closure(u);
    return folc.degree == 1 && !folc.unproven_maximal;
}

// Point-count identities at weight-one points: the line-section masses
// through such a point add up exactly, and the minimal set size
// q^{m-1} + 1 is attained on a rank-2 desk grid.
bool gate_counting() {
    auto tp = Tower::make(2, 1, 2);
    Ambient amb3{tp, 3};
    uint64_t pass = 0, unmet = 0;
    bool ok = over_all_subspaces(amb3, 3, [&](const Subspace& u) {
        VerificationOutcome o = check_size_bounds(u);
        if (o.failed()) return false;
        if (o.status == CheckStatus::pass)
            ++pass;
        else
            ++unmet;
        return true;
    });
    if (!ok || pass != 1080 || unmet != 315) return false;

    Ambient amb2{tp, 2};
    uint64_t min_size = UINT64_MAX, passing = 0;
    ok = over_all_subspaces(amb2, 2, [&](const Subspace& u) {
        VerificationOutcome o = check_size_bounds(u);
        if (o.failed()) return false;
        if (o.status == CheckStatus::pass) {
            ++passing;
            uint64_t size = o.details["size"];
            if (size < min_size) min_size = size;
        }
        return true;
    });
    return ok && passing == 30 && min_size == 3;
}

struct Gate {
    int id;
    const char* summary;
    bool (*fn)();
};

const Gate kGates[] = {
    {1, "mass identity on every subspace with rn <= 6 over F_2", gate_mass_identity},
    {2, "uniform minimal weight divides n and closes the subspace", gate_min_weight_linearity},
    {3, "scalar-closure degree exists between minimal weight and n", gate_closure_equality},
    {4, "duality: complement dimensions, biduality, section-fiber law", gate_duality},
    {5, "direction trichotomy covers every additive map on F_4, F_8, F_9", gate_trichotomy},
    {6, "cyclic model: inclusion, projection and equality gates", gate_cyclic},
    {7, "rank-6 set over F_{7^6}: size, weights, secants, linearity", gate_big_example},
    {8, "weight-one point counting identities and minimal set size", gate_counting},
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    bool all_ok = true;
    for (const Gate& g : kGates) {
        if (selected != 0 && g.id != selected) continue;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = g.fn();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "criterion %d threw: %s\n", g.id, e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                .count();
        std::printf("criterion %d: %s (%.2fs) %s\n", g.id, ok ? "pass" : "FAIL", secs,
                    g.summary);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
