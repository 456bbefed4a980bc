#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "gsca/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(GSCA_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string fixture(const std::string& name) {
    return std::string(GSCA_SOURCE_DIR) + "/examples/" + name;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = "/tmp/gsca_test_" + name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    return path;
}

} // namespace

TEST_CASE("check command") {
    RunResult r = run_cli("check --input " + fixture("diag-f5.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verdict:          PASS") != std::string::npos);

    // dependent matrices: exit 2 with certificate
    std::string dep = write_temp("dep.json", R"({
        "field": {"p": 5}, "n": 2, "mu": [[1, 2], [3, 1]],
        "matrices": [[[1, 0], [0, 0]], [[2, 0], [0, 0]]]
    })");
    RunResult r2 = run_cli("check --input " + dep + " --format json");
    CHECK(r2.exit_code == 2);
    auto rep = gsca::json::parse(r2.out);
    CHECK(rep["independent"] == false);
    CHECK(rep["certificate"] == "DependentMatrices");
}

TEST_CASE("count command") {
    RunResult r = run_cli("count --input " + fixture("diag-f5.json") + " --max-ext 1 --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = gsca::json::parse(r.out);
    CHECK(rep["f1"] == 2);
    CHECK(rep["f2"] == 2);
    CHECK(rep["N"] == 6);
    CHECK(rep["gamma_count"] == 6);
    CHECK(rep["match"] == true);
    CHECK(rep["extension_degree"] == 1);
    CHECK(rep["strata"].size() == 4);
}

TEST_CASE("factor command") {
    RunResult r = run_cli("factor --input " + fixture("diag-f5.json") +
                          " --form \"(z1+2*z2)^2\" --oracle --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = gsca::json::parse(r.out);
    CHECK(rep["count"] == 2);
    CHECK(rep["mu_rank"] == "1");
    CHECK(rep["oracle_agrees"] == true);
    CHECK(rep["factorizations"].size() == 2);

    // a form with no factorization still succeeds with an empty set
    RunResult r2 = run_cli("factor --input " + fixture("diag-f5.json") +
                           " --form \"z1^2 + z2^2\" --format json");
    REQUIRE(r2.exit_code == 0);
    auto rep2 = gsca::json::parse(r2.out);
    CHECK(rep2["count"] == 0);
    CHECK(rep2["mu_rank"] == "2"); // factors over F25
}

TEST_CASE("hilbert and oracle commands") {
    RunResult r = run_cli("hilbert --input " + fixture("diag-f5.json") + " --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = gsca::json::parse(r.out);
    CHECK(rep["dims"] == gsca::json::array({1, 2, 3, 4, 5}));

    RunResult r2 = run_cli("oracle --input " + fixture("diag-f5.json") + " --format json");
    REQUIRE(r2.exit_code == 0);
    auto rep2 = gsca::json::parse(r2.out);
    CHECK(rep2["count"] == 6);
    CHECK(rep2["pairs"].size() == 6);

    RunResult r3 = run_cli("oracle --input " + fixture("diag-f5.json") + " --ext-degree 2 --format json");
    REQUIRE(r3.exit_code == 0);
    CHECK(gsca::json::parse(r3.out)["count"] == 26);
}

TEST_CASE("exit code contract") {
    // missing file
    CHECK(run_cli("check --input /tmp/gsca_no_such_file.json").exit_code == 1);
    // invalid JSON
    std::string bad = write_temp("bad.json", "{");
    CHECK(run_cli("check --input " + bad).exit_code == 1);
    // schema violation
    std::string badmu = write_temp("badmu.json",
                                   R"({"field":{"p":5},"n":2,"mu":[[1,2],[2,1]],"forms":["z1^2","z2^2"]})");
    CHECK(run_cli("check --input " + badmu).exit_code == 1);
    // failed mathematical check: a system with a base point
    std::string basept = write_temp("basept.json",
                                    R"({"field":{"p":5},"n":2,"mu":[[1,2],[3,1]],"forms":["z1^2","z1*z2"]})");
    CHECK(run_cli("check --input " + basept).exit_code == 2);
    // unknown flag
    CHECK(run_cli("check --input x --no-such-flag").exit_code == 1);
    // budget exhaustion is an input-level error
    CHECK(run_cli("count --input " + fixture("diag-f5.json") + " --budget 2").exit_code == 1);
}

TEST_CASE("reports are byte-stable across runs") {
    for (const std::string& args :
         {std::string("count --input ") + fixture("diag-f5.json") + " --format json",
          std::string("present --input ") + fixture("cv-5-3.json") + " --format json",
          std::string("check --input ") + fixture("vvw-gca.json") + " --max-ext 1 --format json"}) {
        RunResult a = run_cli(args);
        RunResult b = run_cli(args);
        REQUIRE(a.exit_code == 0);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("present output shows the skew example relations") {
    RunResult r = run_cli("present --input " + fixture("cv-5-3.json") + " --format json");
    REQUIRE(r.exit_code == 0);
    auto rep = gsca::json::parse(r.out);
    CHECK(rep["relation_count"] == 6);
    CHECK(rep["verified"] == true);
    CHECK(rep["relations"].size() == 6);
    CHECK(rep["y_expressions"].size() == 4);
}
