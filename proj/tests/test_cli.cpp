#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

const std::string cli = LINSET_CLI_PATH;

struct RunResult {
    int rc = -1;
    std::string out;
};

RunResult run_raw(const std::string& cmd, bool keep_stderr = false) {
    std::string full = cmd + (keep_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* p = popen(full.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::string out;
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

RunResult run(const std::string& args, bool keep_stderr = false) {
    return run_raw(cli + " " + args, keep_stderr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

}  // namespace

TEST_CASE("gen then analyze round trip, deterministic per seed") {
    RunResult g1 = run("gen --p 3 --n 2 --m 2 --seed 9 --out /tmp/linset_cli_g1.sub");
    RunResult g2 = run("gen --p 3 --n 2 --m 2 --seed 9 --out /tmp/linset_cli_g2.sub");
    REQUIRE(g1.rc == 0);
    REQUIRE(g2.rc == 0);
    CHECK(read_file("/tmp/linset_cli_g1.sub") == read_file("/tmp/linset_cli_g2.sub"));

    RunResult a = run("analyze --in /tmp/linset_cli_g1.sub");
    REQUIRE(a.rc == 0);
    json doc = json::parse(a.out);
    CHECK(doc["p"] == 3);
    CHECK(doc["n"] == 2);
    CHECK(doc["rank"] == 2);
    CHECK(doc["mass_formula"] == "pass");
}

TEST_CASE("examples remark pipes into analyze with field of linearity 3") {
    RunResult piped = run("examples --which remark --q 2 | " + cli + " analyze");
    REQUIRE(piped.rc == 0);
    json doc = json::parse(piped.out);
    CHECK(doc["field_of_linearity"] == 3);
    CHECK(doc["rank"] == 5);
    CHECK(doc["size"] == 9);
    CHECK(doc["weight_spectrum"]["2"] == 8);
    CHECK(doc["weight_spectrum"]["3"] == 1);
}

TEST_CASE("examples with --out reports on stdout and writes the file") {
    RunResult r = run("examples --which remark --q 3 --out /tmp/linset_cli_remark3.sub");
    REQUIRE(r.rc == 0);
    json rep = json::parse(r.out);
    CHECK(rep["which"] == "remark");
    CHECK(rep["size"] == 28);
    CHECK(rep["field_of_linearity"] == 3);
    std::string file = read_file("/tmp/linset_cli_remark3.sub");
    CHECK(file.rfind("3 1 6 2 1 5", 0) == 0);
}

TEST_CASE("cyclic reports block period 3 on the remark subspace") {
    REQUIRE(run("examples --which remark --q 2 --out /tmp/linset_cli_remark2.sub").rc == 0);
    RunResult r = run("cyclic --in /tmp/linset_cli_remark2.sub");
    REQUIRE(r.rc == 0);
    json doc = json::parse(r.out);
    CHECK(doc["d"] == 3);
    CHECK(doc["checks"]["inclusion"] == "pass");
    CHECK(doc["checks"]["projection"] == "pass");
    // n = 6 exceeds q = 2, so the equality statement is out of hypothesis
    CHECK(doc["checks"]["final"] == "hypothesis_unmet");
}

TEST_CASE("dual emits a subspace file, complements the rank, and is involutive") {
    REQUIRE(run("gen --p 2 --n 2 --m 3 --seed 4 --out /tmp/linset_cli_d0.sub").rc == 0);
    RunResult once = run("dual --in /tmp/linset_cli_d0.sub");
    REQUIRE(once.rc == 0);
    CHECK(once.out.rfind("2 1 2 2 1 1", 0) == 0);  // rank 4 - 3 = 1

    RunResult twice = run("dual --in /tmp/linset_cli_d0.sub | " + cli + " dual");
    REQUIRE(twice.rc == 0);
    CHECK(twice.out == read_file("/tmp/linset_cli_d0.sub"));

    RunResult wrapped = run("dual --in /tmp/linset_cli_d0.sub --format json");
    json doc = json::parse(wrapped.out);
    CHECK(doc["rank"] == 1);
}

TEST_CASE("directions sniffs subspace files and function tables") {
    REQUIRE(run("gen --p 2 --n 3 --m 2 --seed 2 --out /tmp/linset_cli_ds.sub").rc == 0);
    RunResult sub = run("directions --in /tmp/linset_cli_ds.sub");
    REQUIRE(sub.rc == 0);
    json sdoc = json::parse(sub.out);
    CHECK(sdoc["kind"] == "subspace");
    CHECK(sdoc["checks"].contains("directions_a"));

    // identity on F_4 determines a single direction with full divisibility
    write_file("/tmp/linset_cli_id.tab", "0 0\n1 1\n2 2\n3 3\n");
    RunResult fn = run("directions --in /tmp/linset_cli_id.tab");
    REQUIRE(fn.rc == 0);
    json fdoc = json::parse(fn.out);
    CHECK(fdoc["kind"] == "function");
    CHECK(fdoc["directions"] == 1);
    CHECK(fdoc["s"] == 4);
    CHECK(fdoc["checks"]["trichotomy"] == "pass");

    // frobenius on F_4: three directions, case 2
    write_file("/tmp/linset_cli_fr.tab", "0 0\n1 1\n2 3\n3 2\n");
    json fr = json::parse(run("directions --in /tmp/linset_cli_fr.tab").out);
    CHECK(fr["case"] == 2);
    CHECK(fr["directions"] == 3);

    write_file("/tmp/linset_cli_bad.tab", "0 0\n1 0\n2 0\n3 1\n");
    CHECK(run("directions --in /tmp/linset_cli_bad.tab").rc == 1);
}

TEST_CASE("sweep over the 35-plane grid: frozen aggregates, identical reruns") {
    write_file("/tmp/linset_cli_sweep.toml", R"([grid]
p = 2
h = 1
n = 2
r = 2
m = 2
[run]
mode = exhaustive
checks = all
)");
    RunResult a = run("sweep --config /tmp/linset_cli_sweep.toml");
    REQUIRE(a.rc == 0);
    json doc = json::parse(a.out);
    CHECK(doc["summary"]["cases"] == 35);
    CHECK(doc["summary"]["failures"] == 0);
    CHECK(doc["checks"]["mass_formula"]["pass"] == 35);

    RunResult b = run("sweep --config /tmp/linset_cli_sweep.toml");
    CHECK(a.out == b.out);

    RunResult csv = run("sweep --config /tmp/linset_cli_sweep.toml --format csv");
    CHECK(csv.out.find("mass_formula,35,35,0,0,0,0\n") != std::string::npos);

    RunResult narrowed =
        run("sweep --config /tmp/linset_cli_sweep.toml --checks size_bounds");
    json ndoc = json::parse(narrowed.out);
    CHECK(ndoc["checks"].size() == 1);
    CHECK(ndoc["checks"]["size_bounds"]["pass"] == 30);

    RunResult randomized = run("sweep --config /tmp/linset_cli_sweep.toml --mode random "
                               "--seed 3 --samples 2");
    json rdoc = json::parse(randomized.out);
    CHECK(rdoc["summary"]["cases"] == 2);
    CHECK(rdoc["config"]["seed"] == 3);
}

TEST_CASE("usage and failure exit codes") {
    CHECK(run("sweep --config /tmp/linset_cli_missing.toml").rc == 2);
    CHECK(run("analyze --in /tmp/linset_cli_missing.sub").rc == 2);
    CHECK(run("definitely-not-a-command").rc == 2);
    CHECK(run("gen --p 6 --n 2 --m 1").rc == 2);
    CHECK(run("examples --which new --q 3").rc == 2);
    CHECK(run("examples --which nothing").rc == 2);
    CHECK(run("").rc == 2);

    // a seedless random sweep is a config error
    write_file("/tmp/linset_cli_seedless.toml", "[run]\nmode = random\nsamples = 3\n");
    CHECK(run("sweep --config /tmp/linset_cli_seedless.toml").rc == 2);

    RunResult version = run("--version");
    CHECK(version.rc == 0);
    CHECK(version.out.find("linset") != std::string::npos);

    CHECK(run("--help").rc == 0);
}

TEST_CASE("LINSET_BUDGET env var caps enumeration work") {
    REQUIRE(run("examples --which remark --q 2 --out /tmp/linset_cli_rb.sub").rc == 0);
    RunResult capped =
        run_raw("env LINSET_BUDGET=10 " + cli + " analyze --in /tmp/linset_cli_rb.sub", true);
    CHECK(capped.rc == 1);
    CHECK(capped.out.find("error:") != std::string::npos);
    CHECK(run_raw("env LINSET_BUDGET=notanumber " + cli +
                  " analyze --in /tmp/linset_cli_rb.sub")
              .rc == 2);
    CHECK(run_raw("env LINSET_BUDGET=1000000 " + cli +
                  " analyze --in /tmp/linset_cli_rb.sub")
              .rc == 0);
}

TEST_CASE("examples nw checks the subline divisor on a degree-6 tower") {
    RunResult r = run("examples --which nw --q 7 --out /tmp/linset_cli_nw.sub");
    REQUIRE(r.rc == 0);
    json rep = json::parse(r.out);
    CHECK(rep["check"]["status"] == "pass");
    CHECK(rep["check"]["details"]["closure_degree"] == 3);
    CHECK(rep["check"]["details"]["size"] == 344);

    json gated = json::parse(run("examples --which nw --q 2 --out /tmp/linset_cli_nw2.sub").out);
    CHECK(gated["check"]["status"] == "hypothesis_unmet");
}
