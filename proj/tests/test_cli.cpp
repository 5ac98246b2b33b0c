// Integration tests for the installed CLI binary: exit codes, output files,
// and seed determinism, all through the same entry points a user has.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"

namespace {

const std::string kCli = CLI_PATH;
const std::string kFixtureDir = FIXTURE_DIR;

int run(const std::string& args) {
    const int rc = std::system((kCli + " " + args).c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_pair_file(const std::string& path, std::size_t n, std::uint64_t seed) {
    const auto s = testutil::nonlinear_noise_pair(n, seed);
    std::ofstream out(path);
    out.precision(17);
    for (std::size_t i = 0; i < n; ++i) out << s.xs[i] << " " << s.ys[i] << "\n";
}

}  // namespace

TEST_CASE("infer on an easy forward pair reports x_to_y") {
    write_pair_file("/tmp/cli_pair.txt", 100, 3);
    REQUIRE(run("infer /tmp/cli_pair.txt --boot-outer 50 --boot-inner 50 "
                "--out /tmp/cli_out.json") == 0);
    const std::string report = slurp("/tmp/cli_out.json");
    CHECK(report.find("\"direction\": \"x_to_y\"") != std::string::npos);
    CHECK(report.find("\"p_cdsp\"") != std::string::npos);
    // side files for tables and histograms
    CHECK(!slurp("/tmp/cli_out.json.csv").empty());
    CHECK(!slurp("/tmp/cli_out.json_hist.csv").empty());
}

TEST_CASE("seed determinism of the report bytes") {
    write_pair_file("/tmp/cli_pair2.txt", 80, 5);
    const std::string common =
        "infer /tmp/cli_pair2.txt --boot-outer 50 --boot-inner 50 --seed 42 --out ";
    REQUIRE(run(common + "/tmp/cli_a.json") == 0);
    REQUIRE(run(common + "/tmp/cli_b.json") == 0);
    CHECK(slurp("/tmp/cli_a.json") == slurp("/tmp/cli_b.json"));
    CHECK(slurp("/tmp/cli_a.json_hist.csv") == slurp("/tmp/cli_b.json_hist.csv"));
}

TEST_CASE("exit codes") {
    SUBCASE("empty file is exit 2") {
        std::ofstream("/tmp/cli_empty.txt").close();
        CHECK(run("infer /tmp/cli_empty.txt 2>/dev/null") == 2);
    }
    SUBCASE("malformed file is exit 2") {
        std::ofstream out("/tmp/cli_bad.txt");
        out << "1.0 2.0\nfoo 3.0\n";
        out.close();
        CHECK(run("infer /tmp/cli_bad.txt 2>/dev/null") == 2);
    }
    SUBCASE("constant column is exit 3") {
        std::ofstream out("/tmp/cli_const.txt");
        for (int i = 0; i < 60; ++i) out << "1.0 " << i << "\n";
        out.close();
        CHECK(run("infer /tmp/cli_const.txt --boot-outer 50 --boot-inner 50 "
                  "2>/dev/null") == 3);
    }
    SUBCASE("unknown preset is exit 2") {
        CHECK(run("simulate paper-d42 2>/dev/null") == 2);
    }
    SUBCASE("missing bench data is exit 2 with instructions") {
        CHECK(run("bench --data-dir /nonexistent 2>/tmp/cli_bench_err.txt") == 2);
        CHECK(slurp("/tmp/cli_bench_err.txt").find("Download") != std::string::npos);
    }
}

TEST_CASE("lingam subcommand and csv format") {
    write_pair_file("/tmp/cli_pair3.txt", 120, 7);
    REQUIRE(run("lingam /tmp/cli_pair3.txt --out /tmp/cli_lg.json") == 0);
    CHECK(slurp("/tmp/cli_lg.json").find("bootstrap_rate") != std::string::npos);

    REQUIRE(run("infer /tmp/cli_pair3.txt --boot-outer 50 --boot-inner 50 "
                "--format csv --out /tmp/cli_inf.csv") == 0);
    const std::string csv = slurp("/tmp/cli_inf.csv");
    CHECK(csv.rfind("direction,", 0) == 0);
    CHECK(csv.find(',') != std::string::npos);
    CHECK(csv.find("x_to_y") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags win") {
    write_pair_file("/tmp/cli_pair4.txt", 80, 9);
    {
        std::ofstream cfg("/tmp/cli_cfg.ini");
        cfg << "[infer]\nboot-outer=50\nboot-inner=50\nseed=7\n";
    }
    REQUIRE(run("--config /tmp/cli_cfg.ini infer /tmp/cli_pair4.txt "
                "--out /tmp/cli_cfg_a.json") == 0);
    CHECK(slurp("/tmp/cli_cfg_a.json").find("\"seed\": 7") != std::string::npos);
    REQUIRE(run("--config /tmp/cli_cfg.ini infer /tmp/cli_pair4.txt --seed 8 "
                "--out /tmp/cli_cfg_b.json") == 0);
    CHECK(slurp("/tmp/cli_cfg_b.json").find("\"seed\": 8") != std::string::npos);
}

TEST_CASE("bench on the bundled fixture") {
    REQUIRE(run("bench --data-dir " + kFixtureDir +
                " --boot-outer 50 --boot-inner 50 --weighted "
                "--out /tmp/cli_bench.json 2>/dev/null") == 0);
    const std::string report = slurp("/tmp/cli_bench.json");
    CHECK(report.find("\"decisions\": 5") != std::string::npos);
    CHECK(report.find("\"contingency\"") != std::string::npos);
    CHECK(report.find("\"fdr_by_support\"") != std::string::npos);
    CHECK(report.find("\"weighted_tdr\"") != std::string::npos);
    CHECK(report.find("\"multivariate\"") != std::string::npos);
    CHECK(!slurp("/tmp/cli_bench.json.csv").empty());
    CHECK(!slurp("/tmp/cli_bench.json_hist.csv").empty());
}
