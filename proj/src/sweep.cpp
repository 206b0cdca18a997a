#include "linset/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "linset/constructions.hpp"
#include "linset/cyclic.hpp"
#include "linset/directions.hpp"
#include "linset/duality.hpp"
#include "linset/enumerate.hpp"
#include "linset/errors.hpp"
#include "linset/io.hpp"
#include "linset/linear_set.hpp"

namespace linset {

namespace {

// Work-to-time conversion for the case_millis budget: a case is skipped when
// its predicted operation count exceeds case_millis * kOpsPerMilli. Purely
// arithmetic in the case parameters, so the skip set is reproducible.
constexpr uint64_t kOpsPerMilli = 200000;

uint64_t sat_add(uint64_t a, uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

uint64_t sat_mul(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}

uint64_t sat_pow(uint64_t b, uint64_t e) {
    uint64_t out = 1;
    for (uint64_t i = 0; i < e; ++i) out = sat_mul(out, b);
    return out;
}

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

int64_t parse_integer(const std::string& tok, int lineno) {
    int64_t out = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last)
        throw ConfigError("line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
    return out;
}

uint64_t parse_unsigned(const std::string& tok, int lineno) {
    int64_t v = parse_integer(tok, lineno);
    if (v < 0)
        throw ConfigError("line " + std::to_string(lineno) + ": negative value: '" + tok + "'");
    return uint64_t(v);
}

// Comma list of integers and A..B ranges, e.g. "2, 4..6" -> {2, 4, 5, 6}.
std::vector<int64_t> parse_int_list(const std::string& value, int lineno) {
    std::vector<int64_t> out;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty list item");
        size_t dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_integer(tok, lineno));
            continue;
        }
        int64_t lo = parse_integer(trim(tok.substr(0, dots)), lineno);
        int64_t hi = parse_integer(trim(tok.substr(dots + 2)), lineno);
        if (lo > hi)
            throw ConfigError("line " + std::to_string(lineno) + ": empty range '" + tok + "'");
        for (int64_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty list");
    return out;
}

std::vector<int> to_int_axis(const std::vector<int64_t>& vs, int64_t lo, const std::string& key,
                             int lineno) {
    std::vector<int> out;
    out.reserve(vs.size());
    for (int64_t v : vs) {
        if (v < lo || v > 64)
            throw ConfigError("line " + std::to_string(lineno) + ": " + key +
                              " value out of range: " + std::to_string(v));
        out.push_back(int(v));
    }
    return out;
}

void sort_unique_int(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<std::string> parse_checks_value(const std::string& value, int lineno) {
    const std::vector<std::string>& known = sweep_check_names();
    std::set<std::string> requested;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        if (tok == "all") {
            for (const std::string& name : known) requested.insert(name);
            continue;
        }
        if (std::find(known.begin(), known.end(), tok) == known.end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown check '" + tok + "'");
        requested.insert(tok);
    }
    if (requested.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty check list");
    std::vector<std::string> out;
    for (const std::string& name : known)
        if (requested.count(name)) out.push_back(name);
    return out;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct CaseRef {
    int64_t p = 0;
    int h = 0, n = 0, r = 0, m = 0;
    uint64_t index = 0;
};

nlohmann::json case_json(const CaseRef& c) {
    return {{"p", c.p}, {"h", c.h}, {"n", c.n}, {"r", c.r}, {"m", c.m}, {"index", c.index}};
}

// Per-case draw seed: the run seed folded with the full case coordinates, so
// every case gets an independent deterministic stream.
uint64_t mix_case_seed(uint64_t seed, const CaseRef& c) {
    uint64_t s = splitmix64(seed ^ 0x6c696e736574ULL);
    s = splitmix64(s ^ uint64_t(c.p));
    s = splitmix64(s ^ uint64_t(c.h));
    s = splitmix64(s ^ uint64_t(c.n));
    s = splitmix64(s ^ uint64_t(c.r));
    s = splitmix64(s ^ uint64_t(c.m));
    s = splitmix64(s ^ c.index);
    return s == 0 ? 1 : s;
}

// All F_{q^n}-subspaces of the rank-r ambient, every dimension, via reduced
// echelon pivot patterns over the top field. Deterministic order. Throws
// BudgetExceededError when the total count exceeds cap.
std::vector<Subspace> top_subspaces(const Ambient& amb, uint64_t cap) {
    const Tower& t = *amb.tower;
    const int r = amb.r;
    uint64_t total = 0;
    for (int s = 0; s <= r; ++s) total = sat_add(total, gaussian_binomial(r, s, t.size()));
    if (total > cap)
        throw BudgetExceededError("closed-subspace enumeration needs " + std::to_string(total) +
                                  " > " + std::to_string(cap));
    std::vector<Subspace> out;
    out.reserve(size_t(total));
    std::vector<Fe> elems = all_elements(t);
    for (int s = 0; s <= r; ++s) {
        if (s == 0) {
            out.push_back(Subspace::zero_subspace(amb, t.n()));
            continue;
        }
        std::vector<int> piv(size_t(s), 0);
        for (int i = 0; i < s; ++i) piv[size_t(i)] = i;
        while (true) {
            std::vector<char> is_piv(size_t(r), 0);
            for (int c : piv) is_piv[size_t(c)] = 1;
            std::vector<std::pair<int, int>> slots;  // (row, col) free entries
            for (int i = 0; i < s; ++i)
                for (int c = piv[size_t(i)] + 1; c < r; ++c)
                    if (!is_piv[size_t(c)]) slots.emplace_back(i, c);
            std::vector<size_t> digit(slots.size(), 0);
            std::vector<Vec> rows(size_t(s), Vec(size_t(r), t.zero()));
            for (int i = 0; i < s; ++i) rows[size_t(i)][size_t(piv[size_t(i)])] = t.one();
            while (true) {
                for (size_t k = 0; k < slots.size(); ++k)
                    rows[size_t(slots[k].first)][size_t(slots[k].second)] = elems[digit[k]];
                out.push_back(Subspace::span(amb, rows, t.n()));
                size_t pos = 0;
                while (pos < slots.size() && digit[pos] + 1 == elems.size()) digit[pos++] = 0;
                if (pos == slots.size()) break;
                ++digit[pos];
            }
            // next pivot combination, lexicographic
            int i = s - 1;
            while (i >= 0 && piv[size_t(i)] == r - s + i) --i;
            if (i < 0) break;
            ++piv[size_t(i)];
            for (int j = i + 1; j < s; ++j) piv[size_t(j)] = piv[size_t(j - 1)] + 1;
        }
    }
    return out;
}

struct CheckCtx {
    uint64_t enum_cap = kDefaultEnumCap;
    int reducibility_samples = 6;
    uint64_t case_seed = 1;
};

VerificationOutcome duality_dims_all_pairs(const Subspace& u, const CheckCtx& cx) {
    std::vector<Subspace> partners = top_subspaces(u.ambient(), cx.enum_cap);
    uint64_t pairs = 0;
    uint64_t unmet = 0;
    for (const Subspace& r : partners) {
        VerificationOutcome o = check_duality_dims(u, r);
        if (o.failed()) {
            o.details["closed_partner"] = serialize_subspace(r);
            return o;
        }
        if (o.status == CheckStatus::hypothesis_unmet) ++unmet;
        ++pairs;
    }
    if (unmet > 0)
        return make_hypothesis_unmet("duality_dims", {{"pairs", pairs}, {"unmet", unmet}});
    return make_pass("duality_dims", {{"pairs", pairs}});
}

// Single-subspace entry point for every sweep check; used by the main loop
// and re-entered during witness minimization.
VerificationOutcome run_named_check(const std::string& name, const Subspace& u,
                                    const CheckCtx& cx) {
    const Tower& t = *u.tower();
    const int n = t.n();
    if (name == "mass_formula") return check_mass_formula(u, cx.enum_cap);
    if (name == "min_weight_linearity") return check_min_weight_linearity(u, cx.enum_cap);
    if (name == "closure_equality") return check_closure_equality(u, cx.enum_cap);
    if (name == "spanning_tangents") return check_spanning_tangents(u, cx.enum_cap);
    if (name == "duality_dims") return duality_dims_all_pairs(u, cx);
    if (name == "dual_linearity") {
        if (u.dim() % n != 0)
            return make_hypothesis_unmet("dual_linearity",
                                         {{"reason", "rank is not a multiple of n"}});
        return check_dual_linearity(u);
    }
    if (name == "directions_a") return check_dir_theorem(u, DirMode::a, cx.enum_cap);
    if (name == "directions_b") return check_dir_theorem(u, DirMode::b, cx.enum_cap);
    if (name == "size_bounds") return check_size_bounds(u, cx.enum_cap);
    if (u.dim() > (u.r() - 1) * n)
        return make_hypothesis_unmet(name, {{"reason", "rank exceeds (r-1)n"}});
    UiDecomposition dec = decompose(u);
    if (name == "cyclic_inclusion") return check_cyclic_inclusion(dec);
    if (name == "cyclic_projection") return check_cyclic_projection(dec);
    if (name == "cyclic_equality") return check_cyclic_equality(dec, cx.enum_cap);
    if (name == "reducibility")
        return check_reducibility(dec, cx.reducibility_samples, cx.case_seed, cx.enum_cap);
    throw ConfigError("unknown check '" + name + "'");
}

uint64_t predicted_ops(uint64_t q, int n, int r, int m, size_t nchecks) {
    uint64_t vec = sat_pow(q, uint64_t(m));
    uint64_t theta = proj_point_count(sat_pow(q, uint64_t(n)), r);
    uint64_t per = sat_mul(sat_add(vec, theta), uint64_t(n) * uint64_t(r));
    return sat_mul(per, uint64_t(nchecks));
}

struct Agg {
    uint64_t cases = 0, pass = 0, fail = 0, vacuous = 0, unmet = 0, skipped = 0;
};

nlohmann::json config_echo(const SweepConfig& cfg) {
    nlohmann::json grid = {{"p", cfg.ps}, {"h", cfg.hs}, {"n", cfg.ns},
                           {"r", cfg.rs}, {"m", cfg.ms}};
    nlohmann::json out = {
        {"grid", grid},
        {"mode", cfg.exhaustive ? "exhaustive" : "random"},
        {"checks", cfg.checks},
        {"budget",
         {{"max_field", cfg.budget.max_field},
          {"max_cases", cfg.budget.max_cases},
          {"enum_cap", cfg.budget.enum_cap},
          {"case_millis", cfg.budget.case_millis}}},
        {"timings", cfg.emit_timings},
        {"reducibility_samples", cfg.reducibility_samples},
    };
    if (!cfg.exhaustive) {
        out["samples"] = cfg.samples;
        out["seed"] = cfg.seed;
    }
    return out;
}

}  // namespace

const std::vector<std::string>& sweep_check_names() {
    static const std::vector<std::string> names = {
        "mass_formula",     "min_weight_linearity", "closure_equality", "spanning_tangents",
        "duality_dims",     "dual_linearity",       "directions_a",     "directions_b",
        "cyclic_inclusion", "cyclic_projection",    "cyclic_equality",  "reducibility",
        "size_bounds",
    };
    return names;
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    cfg.checks = sweep_check_names();
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "run" && section != "budget" &&
                section != "report")
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section == "grid") {
            std::vector<int64_t> vs = parse_int_list(value, lineno);
            if (key == "p") {
                for (int64_t v : vs)
                    if (!is_prime(v))
                        throw ConfigError("line " + std::to_string(lineno) +
                                          ": p must be prime, got " + std::to_string(v));
                cfg.ps = vs;
            } else if (key == "h") {
                cfg.hs = to_int_axis(vs, 1, key, lineno);
            } else if (key == "n") {
                cfg.ns = to_int_axis(vs, 1, key, lineno);
            } else if (key == "r") {
                cfg.rs = to_int_axis(vs, 1, key, lineno);
            } else if (key == "m") {
                cfg.ms = to_int_axis(vs, 0, key, lineno);
            } else {
                throw ConfigError("line " + std::to_string(lineno) + ": unknown grid key '" +
                                  key + "'");
            }
        } else if (section == "run") {
            if (key == "mode") {
                if (value == "exhaustive")
                    cfg.exhaustive = true;
                else if (value == "random")
                    cfg.exhaustive = false;
                else
                    throw ConfigError("line " + std::to_string(lineno) + ": mode must be " +
                                      "exhaustive or random, got '" + value + "'");
            } else if (key == "samples") {
                cfg.samples = parse_unsigned(value, lineno);
            } else if (key == "seed") {
                cfg.seed = parse_unsigned(value, lineno);
                cfg.has_seed = true;
            } else if (key == "checks") {
                cfg.checks = parse_checks_value(value, lineno);
            } else if (key == "reducibility_samples") {
                cfg.reducibility_samples = int(parse_unsigned(value, lineno));
            } else {
                throw ConfigError("line " + std::to_string(lineno) + ": unknown run key '" +
                                  key + "'");
            }
        } else if (section == "budget") {
            uint64_t v = parse_unsigned(value, lineno);
            if (key == "max_field")
                cfg.budget.max_field = v;
            else if (key == "max_cases")
                cfg.budget.max_cases = v;
            else if (key == "enum_cap")
                cfg.budget.enum_cap = v;
            else if (key == "case_millis")
                cfg.budget.case_millis = v;
            else
                throw ConfigError("line " + std::to_string(lineno) + ": unknown budget key '" +
                                  key + "'");
        } else if (section == "report") {
            if (key == "timings") {
                if (value == "true")
                    cfg.emit_timings = true;
                else if (value == "false")
                    cfg.emit_timings = false;
                else
                    throw ConfigError("line " + std::to_string(lineno) +
                                      ": timings must be true or false");
            } else {
                throw ConfigError("line " + std::to_string(lineno) + ": unknown report key '" +
                                  key + "'");
            }
        } else {
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        }
    }
    if (!cfg.exhaustive) {
        if (!cfg.has_seed) throw ConfigError("random mode requires an explicit seed");
        if (cfg.samples == 0) throw ConfigError("random mode requires samples >= 1");
    }
    std::sort(cfg.ps.begin(), cfg.ps.end());
    cfg.ps.erase(std::unique(cfg.ps.begin(), cfg.ps.end()), cfg.ps.end());
    sort_unique_int(cfg.hs);
    sort_unique_int(cfg.ns);
    sort_unique_int(cfg.rs);
    sort_unique_int(cfg.ms);
    return cfg;
}

SweepConfig read_sweep_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_config(ss.str());
}

Subspace minimize_witness(const Subspace& u,
                          const std::function<VerificationOutcome(const Subspace&)>& runner) {
    Subspace cur = u;
    bool shrunk = true;
    while (shrunk && cur.dim() > 0) {
        shrunk = false;
        std::vector<Vec> rows = cur.basis_vectors();
        for (size_t i = 0; i < rows.size(); ++i) {
            std::vector<Vec> rest;
            rest.reserve(rows.size() - 1);
            for (size_t j = 0; j < rows.size(); ++j)
                if (j != i) rest.push_back(rows[j]);
            Subspace cand = Subspace::span(cur.ambient(), rest, 1);
            if (cand.dim() == cur.dim()) continue;
            bool still_fails = false;
            try {
                still_fails = runner(cand).failed();
            } catch (const Error&) {
                still_fails = false;
            }
            if (still_fails) {
                cur = cand;
                shrunk = true;
                break;
            }
        }
    }
    return cur;
}

SweepReport run_sweep(const SweepConfig& cfg) {
    const std::vector<std::string>& known = sweep_check_names();
    std::vector<std::string> enabled;
    for (const std::string& name : cfg.checks)
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw ConfigError("unknown check '" + name + "'");
    for (const std::string& name : known)
        if (std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end())
            enabled.push_back(name);
    if (!cfg.exhaustive && (!cfg.has_seed || cfg.samples == 0))
        throw ConfigError("random mode requires an explicit seed and samples >= 1");

    std::map<std::string, Agg> agg;
    for (const std::string& name : enabled) agg[name];
    nlohmann::json failures = nlohmann::json::array();
    nlohmann::json cells = nlohmann::json::array();
    std::set<std::string> tower_lines;
    uint64_t total_cases = 0;
    uint64_t cells_skipped = 0;
    uint64_t cases_skipped_time = 0;
    uint64_t closure_recorded = 0;
    nlohmann::json closure_mismatches = nlohmann::json::array();
    const auto t_start = std::chrono::steady_clock::now();

    const bool want_equality =
        std::find(enabled.begin(), enabled.end(), "cyclic_equality") != enabled.end();

    for (int64_t p : cfg.ps) {
        for (int h : cfg.hs) {
            for (int n : cfg.ns) {
                for (int r : cfg.rs) {
                    for (int m : cfg.ms) {
                        if (m > r * n) continue;
                        nlohmann::json cell = {{"p", p}, {"h", h}, {"n", n}, {"r", r}, {"m", m}};
                        const auto c_start = std::chrono::steady_clock::now();
                        uint64_t field = sat_pow(uint64_t(p), uint64_t(h) * uint64_t(n));
                        if (field > cfg.budget.max_field) {
                            cell["skipped"] = "field_budget";
                            ++cells_skipped;
                            cells.push_back(cell);
                            continue;
                        }
                        uint64_t q = sat_pow(uint64_t(p), uint64_t(h));
                        uint64_t planned =
                            cfg.exhaustive ? gaussian_binomial(r * n, m, q) : cfg.samples;
                        if (cfg.exhaustive && planned > cfg.budget.max_cases) {
                            cell["skipped"] = "case_budget";
                            cell["count"] = planned;
                            ++cells_skipped;
                            cells.push_back(cell);
                            continue;
                        }
                        TowerPtr tp;
                        try {
                            tp = Tower::make(p, h, n);
                        } catch (const FieldTooLargeError&) {
                            cell["skipped"] = "field_budget";
                            ++cells_skipped;
                            cells.push_back(cell);
                            continue;
                        }
                        tower_lines.insert(tp->serialize_line());
                        Ambient amb{tp, r};
                        uint64_t cell_over_time = 0;

                        auto run_case = [&](const Subspace& u, const CaseRef& cref) {
                            ++total_cases;
                            CheckCtx cx;
                            cx.enum_cap = cfg.budget.enum_cap;
                            cx.reducibility_samples = cfg.reducibility_samples;
                            cx.case_seed = mix_case_seed(cfg.seed, cref);
                            if (cfg.budget.case_millis > 0 &&
                                predicted_ops(q, n, r, m, enabled.size()) >
                                    sat_mul(cfg.budget.case_millis, kOpsPerMilli)) {
                                ++cases_skipped_time;
                                ++cell_over_time;
                                for (const std::string& name : enabled) {
                                    ++agg[name].cases;
                                    ++agg[name].skipped;
                                }
                                return;
                            }
                            bool equality_ran = false;
                            for (const std::string& name : enabled) {
                                Agg& a = agg[name];
                                ++a.cases;
                                VerificationOutcome o;
                                try {
                                    o = run_named_check(name, u, cx);
                                } catch (const BudgetExceededError&) {
                                    ++a.skipped;
                                    continue;
                                } catch (const RankError&) {
                                    ++a.unmet;
                                    continue;
                                }
                                switch (o.status) {
                                    case CheckStatus::pass: ++a.pass; break;
                                    case CheckStatus::fail: ++a.fail; break;
                                    case CheckStatus::vacuous: ++a.vacuous; break;
                                    case CheckStatus::hypothesis_unmet: ++a.unmet; break;
                                }
                                if (name == "cyclic_equality" &&
                                    o.status != CheckStatus::vacuous)
                                    equality_ran = true;
                                if (o.failed()) {
                                    Subspace minimized = minimize_witness(
                                        u, [&](const Subspace& v) {
                                            return run_named_check(name, v, cx);
                                        });
                                    nlohmann::json entry = {
                                        {"check", name},
                                        {"case", case_json(cref)},
                                        {"witness", o.witness.empty() ? serialize_subspace(u)
                                                                      : o.witness},
                                        {"witness_minimized", serialize_subspace(minimized)},
                                        {"details", o.details},
                                    };
                                    if (!cfg.exhaustive) entry["case"]["seed"] = cx.case_seed;
                                    failures.push_back(std::move(entry));
                                }
                            }
                            // Closure degree against the cyclic block period:
                            // agreement is an open data question, so both are
                            // recorded and disagreements never fail the run.
                            if (want_equality && equality_ran && !u.is_zero() &&
                                u.dim() <= (u.r() - 1) * tp->n()) {
                                try {
                                    int d = decompose(u).d;
                                    int degree =
                                        field_of_linearity_by_closure(u, cx.enum_cap).degree;
                                    ++closure_recorded;
                                    if (d != degree) {
                                        nlohmann::json rec = case_json(cref);
                                        rec["block_period"] = d;
                                        rec["closure_degree"] = degree;
                                        closure_mismatches.push_back(std::move(rec));
                                    }
                                } catch (const BudgetExceededError&) {
                                }
                            }
                        };

                        if (cfg.exhaustive) {
                            ExhaustiveSubspaces es(amb, m, cfg.budget.max_cases);
                            Subspace u = Subspace::zero_subspace(amb);
                            uint64_t idx = 0;
                            while (es.next(u)) {
                                CaseRef cref{p, h, n, r, m, idx++};
                                run_case(u, cref);
                            }
                            cell["cases"] = idx;
                        } else {
                            for (uint64_t i = 0; i < cfg.samples; ++i) {
                                CaseRef cref{p, h, n, r, m, i};
                                Subspace u =
                                    random_subspace(amb, m, mix_case_seed(cfg.seed, cref));
                                run_case(u, cref);
                            }
                            cell["cases"] = cfg.samples;
                        }
                        if (cell_over_time > 0) cell["cases_over_time"] = cell_over_time;
                        if (cfg.emit_timings) {
                            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - c_start)
                                          .count();
                            cell["millis"] = uint64_t(ms);
                        }
                        cells.push_back(cell);
                    }
                }
            }
        }
    }

    nlohmann::json checks = nlohmann::json::object();
    uint64_t total_fail = 0;
    for (const auto& [name, a] : agg) {
        checks[name] = {{"cases", a.cases},     {"pass", a.pass},
                        {"fail", a.fail},       {"vacuous", a.vacuous},
                        {"hypothesis_unmet", a.unmet}, {"skipped_budget", a.skipped}};
        total_fail += a.fail;
    }
    nlohmann::json doc = {
        {"tool", "linset"},
        {"version", kToolVersion},
        {"config", config_echo(cfg)},
        {"towers", std::vector<std::string>(tower_lines.begin(), tower_lines.end())},
        {"cells", cells},
        {"checks", checks},
        {"failures", failures},
        {"closure_vs_cyclic",
         {{"recorded", closure_recorded}, {"mismatches", closure_mismatches}}},
        {"summary",
         {{"cases", total_cases},
          {"failures", total_fail},
          {"cells", cells.size()},
          {"cells_skipped", cells_skipped},
          {"cases_skipped_time", cases_skipped_time}}},
    };
    if (cfg.emit_timings) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
        doc["timings"] = {{"total_millis", uint64_t(ms)}};
    }
    return SweepReport{std::move(doc), total_fail};
}

std::string report_to_csv(const nlohmann::json& doc) {
    std::ostringstream out;
    out << "check,cases,pass,fail,vacuous,hypothesis_unmet,skipped_budget\n";
    if (doc.contains("checks"))
        for (const auto& [name, a] : doc["checks"].items())
            out << name << ',' << a["cases"] << ',' << a["pass"] << ',' << a["fail"] << ','
                << a["vacuous"] << ',' << a["hypothesis_unmet"] << ',' << a["skipped_budget"]
                << '\n';
    return out.str();
}

}  // namespace linset
