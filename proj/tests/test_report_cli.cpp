#include "doctest.h"

#include "dyadic/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace dyadic;

TEST_CASE("format_double is shortest round-trip") {
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.0) == "-0");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("csv escaping") {
    ExperimentReport rep;
    rep.columns = {"a", "b"};
    rep.rows.push_back({std::string("x,y"), std::string("say \"hi\"\nthere")});
    rep.rows.push_back({int64_t(7), true});
    const std::string csv = to_csv(rep);
    CHECK(csv == "a,b\n\"x,y\",\"say \"\"hi\"\"\nthere\"\n7,true\n");
}

TEST_CASE("series json round trip") {
    const std::string text = R"({"coefficients": [
        {"scale": 0, "index": 0, "value": 0.5},
        {"scale": -3, "index": -17, "value": -2.25}
    ]})";
    const HaarSeries f = haar_series_from_json(text);
    CHECK(f.size() == 2);
    CHECK(f.coeff({0, 0}) == 0.5);
    CHECK(f.coeff({-3, -17}) == -2.25);
    const HaarSeries again = haar_series_from_json(to_json_string(f));
    CHECK(again == f);
}

TEST_CASE("series json rejects malformed input") {
    CHECK_THROWS_AS(haar_series_from_json("{"), std::runtime_error);
    CHECK_THROWS_AS(haar_series_from_json(R"({"nope": []})"), std::runtime_error);
    CHECK_THROWS_AS(haar_series_from_json(R"({"coefficients": [{"scale": 0}]})"),
                    std::runtime_error);
    CHECK_THROWS_AS(
        haar_series_from_json(R"({"coefficients": [{"scale": 99, "index": 0, "value": 1}]})"),
        std::runtime_error);
    CHECK_THROWS_AS(
        haar_series_from_json(
            R"({"coefficients": [{"scale": 4294967296, "index": 0, "value": 1}]})"),
        std::runtime_error);
}

#ifdef DYADIC_CLI_PATH

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_test_out.tmp";
    const std::string cmd =
        std::string(DYADIC_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (raw >= 256) ? raw / 256 : raw; // WEXITSTATUS without <sys/wait.h>
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    r.out = buf.str();
    std::remove(out_path.c_str());
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("cli norms matches the pinned example") {
    write_file("unit_series.tmp.json",
               R"({"coefficients": [{"scale": 0, "index": 0, "value": 1.0}]})");
    const RunResult r = run_cli("norms --input unit_series.tmp.json --s 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"l2\": 1.0") != std::string::npos);
    CHECK(r.out.find("\"hs_seminorm\": 1.0") != std::string::npos);
    CHECK(r.out.find("\"bmo\": 1.0") != std::string::npos);
    CHECK(r.out.find("\"linf\": 1.0") != std::string::npos);

    const RunResult csv = run_cli("norms --input unit_series.tmp.json --s 0.5 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("s,l2,hs_seminorm,hs_norm,linf,lq,bmo", 0) == 0);
    std::remove("unit_series.tmp.json");
}

TEST_CASE("cli exit codes: usage and validation errors are 2") {
    CHECK(run_cli("definitely-not-a-subcommand").exit_code == 2);
    CHECK(run_cli("norms --s 0.5").exit_code == 2);                       // missing --input
    CHECK(run_cli("verify --suite nonsense").exit_code == 2);             // bad suite name
    CHECK(run_cli("counterexample --family lowreg --s 0.25 --alpha 0.2 --n 8 --n 9 --n 10")
              .exit_code == 2); // alpha <= s
    write_file("bad.tmp.json", "not json at all");
    CHECK(run_cli("norms --input bad.tmp.json --s 0.5").exit_code == 2);
    std::remove("bad.tmp.json");
    CHECK(run_cli("norms --input no_such_file.json --s 0.5").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli verify runs clean and is deterministic") {
    const RunResult a = run_cli("verify --seed 5 --count 20 --format csv");
    const RunResult b = run_cli("verify --seed 5 --count 20 --format csv");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("suite,check,max_residual,tolerance,pass", 0) == 0);
}

TEST_CASE("cli embedding-scan is deterministic byte for byte") {
    const std::string args = "embedding-scan --check gns --check bmo --s 0.25 --seed 11 "
                             "--count 40 --format json";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli counterexample emits the mandated csv schema") {
    const RunResult r = run_cli(
        "counterexample --family critical --s 0.5 --alpha 1.25 --n 64 --n 128 --n 256 "
        "--n 512 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("N,h_s_norm_f,hs_seminorm_sq_f2,log2_hs_seminorm_sq_f2,"
                      "fitted_slope,band_lo,band_hi,verdict",
                      0) == 0);
}

TEST_CASE("cli exit 1 on verification failure; DYADIC_FIXTURES override works") {
    // A fixture whose stored sup is absurdly small forces a gns failure.
    std::filesystem::create_directories("tiny_cal_dir.tmp");
    write_file("tiny_cal_dir.tmp/calibration.json",
               R"({"margin": 1.5, "entries": {"gns@0.25": 1e-9}})");
    const std::string out_path = "cli_test_out.tmp";
    const std::string cmd = "DYADIC_FIXTURES=tiny_cal_dir.tmp " + std::string(DYADIC_CLI_PATH) +
                            " embedding-scan --check gns --s 0.25 --count 5 > " + out_path +
                            " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    CHECK((raw >= 256 ? raw / 256 : raw) == 1);
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("\"verdict\": \"FAIL\"") != std::string::npos);
    std::remove(out_path.c_str());
    std::filesystem::remove_all("tiny_cal_dir.tmp");
}

TEST_CASE("cli writes output files when asked") {
    write_file("unit_series.tmp.json",
               R"({"coefficients": [{"scale": 0, "index": 0, "value": 1.0}]})");
    const RunResult r =
        run_cli("norms --input unit_series.tmp.json --s 0.25 --output norms_out.tmp.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in("norms_out.tmp.json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("\"hs_seminorm\": 1.0") != std::string::npos);
    std::remove("norms_out.tmp.json");
    std::remove("unit_series.tmp.json");
}

#endif // DYADIC_CLI_PATH
