#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "linset/outcome.hpp"
#include "linset/subspace.hpp"

namespace linset {

inline constexpr const char* kToolVersion = "1.0.0";

// Check names the sweep dispatcher understands, in canonical run order.
// trichotomy is absent by design: its cases are function tables, not
// subspaces, so it runs through the `directions` command instead.
[[nodiscard]] const std::vector<std::string>& sweep_check_names();

// Resource limits for one sweep run. case_millis is converted to a
// deterministic operation bound at a fixed rate, so two runs of the same
// config produce identical reports even for cases near the cutoff.
struct SweepBudget {
    uint64_t max_field = uint64_t(1) << 20;  // top field size cap per cell
    uint64_t max_cases = 20000;              // subspace count cap per cell
    uint64_t enum_cap = kDefaultEnumCap;     // vector-visit budget per check
    uint64_t case_millis = 0;                // 0 = unlimited
};

// A sweep visits the grid cells (p, h, n, r, m) in ascending order and runs
// the selected checks on every m-dimensional F_q-subspace of F_{q^n}^r
// (exhaustive mode) or on `samples` seeded random draws per cell.
struct SweepConfig {
    std::vector<int64_t> ps;
    std::vector<int> hs;
    std::vector<int> ns;
    std::vector<int> rs;
    std::vector<int> ms;
    bool exhaustive = true;
    uint64_t samples = 0;  // random mode: draws per grid cell
    uint64_t seed = 0;     // random mode: folded into every draw
    bool has_seed = false;
    std::vector<std::string> checks;  // subset of sweep_check_names()
    SweepBudget budget;
    bool emit_timings = false;   // timing fields vary run to run
    int reducibility_samples = 6;
};

// Text format: `key = value` lines under [grid], [run], [budget] or [report]
// section headers; `#` starts a comment. Grid values are comma lists whose
// items are integers or A..B ranges. Throws ConfigError on any malformed
// line, unknown key or check name, non-prime p, or a random mode without
// seed and samples. Missing grid axes simply yield an empty sweep.
[[nodiscard]] SweepConfig parse_sweep_config(const std::string& text);
[[nodiscard]] SweepConfig read_sweep_config_file(const std::string& path);

struct SweepReport {
    nlohmann::json doc;
    uint64_t failures = 0;
};

// Runs the configured sweep. Budget violations are recorded per cell or per
// case and skipped; they never abort the run. Every failure entry carries a
// replayable witness plus a greedily minimized one.
[[nodiscard]] SweepReport run_sweep(const SweepConfig& cfg);

// Per-check aggregate table of a report produced by run_sweep.
[[nodiscard]] std::string report_to_csv(const nlohmann::json& doc);

// Greedy witness shrinking: repeatedly drop one F_q basis row as long as
// `runner` still fails on the smaller subspace. A runner exception counts
// as not-failing.
[[nodiscard]] Subspace minimize_witness(
    const Subspace& u, const std::function<VerificationOutcome(const Subspace&)>& runner);

}  // namespace linset
