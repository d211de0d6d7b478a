#include <doctest.h>

#include "adbsde/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace adbsde;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
    std::istringstream in("# comment\nproblem.name = bsde_8  # trailing\n\nsolver.tol=1e-12\n");
    const cli::Settings s = cli::parse_config(in);
    CHECK(s.at("problem.name") == "bsde_8");
    CHECK(s.at("solver.tol") == "1e-12");
    std::istringstream bad("nosection = 1\n");
    CHECK_THROWS(cli::parse_config(bad));
}

TEST_CASE("solve-bsde reports the closed form") {
    const Result r = call({"solve-bsde", "--problem", "bsde_7", "--T", "1", "--K", "0.25", "--engine", "tree",
                           "--steps", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Y0: 1.33333333") != std::string::npos);
    CHECK(r.out.find("VERDICT: converged") != std::string::npos);
    CHECK(r.out.find("[residuals]") != std::string::npos);
    CHECK(r.out.find("solver.beta = ") != std::string::npos);
}

TEST_CASE("expected divergence is a success") {
    const Result r = call({"solve-bsde", "--problem", "example_2_3", "--xi-const", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("VERDICT: diverged as expected") != std::string::npos);
}

TEST_CASE("check-contraction") {
    const Result r = call({"check-contraction", "--condition", "thm_2_2_i", "--K", "0.25", "--l", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FEASIBLE: true") != std::string::npos);
    CHECK(r.out.find("GAMMA: 0.9236") != std::string::npos);
    CHECK(call({"check-contraction", "--condition", "thm_2_2_i", "--K", "1", "--l", "1"}).code == 1);
    CHECK(call({"check-contraction", "--condition", "thm_2_2_i", "--K", "1"}).code == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"solve-bsde", "--problem", "nope"}).code == 2);
    CHECK(call({"solve-bsde", "--problem", "delayed_sde"}).code == 2);
    CHECK(call({"solve-bsde", "--problem", "bsde_8", "--K", "abc"}).code == 2);
    CHECK(call({"compare", "--engine", "montecarlo"}).code == 2);
    CHECK(call({"solve-bsde", "--problem", "bsde_8", "--engine", "quantum"}).code == 2);
    CHECK(call({"solve-bsde", "--problem", "bsde_7", "--K", "0.27"}).code == 2);
}

TEST_CASE("config file with flag overrides and csv output") {
    const auto dir = std::filesystem::temp_directory_path() / "adbsde_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "problem.name = bsde_8\nproblem.K = 0.5\nsolver.tol = 1e-12\noutput.formats = csv,report\n";
    }
    const Result r = call({"solve-bsde", "--config", cfg.string(), "--K", "0.25", "--out", (dir / "a").string(),
                           "--dump-nodes"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Y0: 1.33333333") != std::string::npos);
    const std::string csv = read_file(dir / "a" / "trajectory.csv");
    CHECK(csv.rfind("t,Y_mean,Y_p05,Y_p95,Z_mean,Z_p05,Z_p95\n", 0) == 0);
    CHECK(std::filesystem::exists(dir / "a" / "nodes.csv"));
    CHECK(std::filesystem::exists(dir / "a" / "report.txt"));

    // byte-identical Monte Carlo output across worker counts
    call({"solve-bsde", "--problem", "bsde_9", "--engine", "montecarlo", "--paths", "5000", "--workers", "1",
          "--format", "csv", "--out", (dir / "w1").string()});
    call({"solve-bsde", "--problem", "bsde_9", "--engine", "montecarlo", "--paths", "5000", "--workers", "3",
          "--format", "csv", "--out", (dir / "w3").string()});
    const std::string w1 = read_file(dir / "w1" / "trajectory.csv");
    CHECK_FALSE(w1.empty());
    CHECK(w1 == read_file(dir / "w3" / "trajectory.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("other commands") {
    CHECK(call({"solve-sde", "--problem", "delayed_sde"}).code == 0);
    CHECK(call({"solve-sde", "--problem", "sde_remark4"}).code == 0);
    CHECK(call({"compare"}).code == 0);
    CHECK(call({"compare", "--kind", "1"}).code == 0);
    CHECK(call({"probe-dependence", "--problem", "bsde_8", "--tol", "1e-13"}).code == 0);
    const Result d = call({"verify-duality", "--c", "1", "--times", "0,0.5"});
    CHECK(d.code == 0);
    CHECK(d.out.find("DENOMINATOR: 1") != std::string::npos);
}
