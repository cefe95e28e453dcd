#include "CLI11.hpp"

#include "dyadic/algebra.hpp"
#include "dyadic/analysis.hpp"
#include "dyadic/calibration.hpp"
#include "dyadic/counterexamples.hpp"
#include "dyadic/embeddings.hpp"
#include "dyadic/norms.hpp"
#include "dyadic/operators.hpp"
#include "dyadic/random.hpp"
#include "dyadic/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

std::string read_input(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open input file: " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << text;
}

std::string render(const dyadic::ExperimentReport& rep, const std::string& format) {
    return format == "csv" ? dyadic::to_csv(rep) : dyadic::to_json_string(rep) + "\n";
}

struct SuiteRow {
    std::string suite;
    std::string check;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

void run_identities(uint64_t seed, int count, int64_t depth, std::vector<SuiteRow>& rows) {
    using namespace dyadic;
    EnsembleSpec espec;
    espec.seed = seed;
    espec.count = count;

    double w_ind = 0.0, w_haar = 0.0, w_tel = 0.0;
    int bound_violations = 0;
    for (int i = 0; i < count; ++i) {
        Rng rng(sample_seed(seed ^ 0x1dULL, uint64_t(i)));
        const DyadicInterval I{int32_t(rng.uniform_int(-6, 6)), rng.uniform_int(-16, 15)};
        const int64_t j = rng.uniform_int(0, (int64_t(1) << 12) - 1);
        const DyadicPoint x =
            DyadicPoint::from_parts(((I.index << 12) + j) * 2 + 1, I.scale - 13);
        const double s = rng.uniform(0.05, 0.95);

        // Both truncation errors are exact geometric tails.
        const double geo = std::exp2(double(I.scale) * s) *
                           std::exp2(-s * double(depth + 1)) / (1.0 - std::exp2(-s));
        const WeightedSum wi = weighted_indicator_sum(I, s, x, depth);
        w_ind = std::max(w_ind, std::abs(wi.closed_form - wi.truncated - geo) /
                                    (1.0 + std::abs(wi.closed_form)));
        const WeightedSum wh = weighted_haar_sum(I, s, x, depth);
        const double geo_h = geo * haar_value_at(I, x);
        w_haar = std::max(w_haar, std::abs(wh.closed_form - wh.truncated - geo_h) /
                                      (1.0 + std::abs(wh.closed_form)));

        const HaarSeries f = make_sample(espec, uint64_t(i));
        const double tel = telescope_residual(f, I, rng.uniform_int(1, 10));
        w_tel = std::max(w_tel, std::abs(tel) / (1.0 + l2_norm(f)));

        const auto [lower_ok, upper_ok] = truncated_hs_bound(f, s);
        if (!lower_ok || !upper_ok) ++bound_violations;
    }
    rows.push_back({"identities", "weighted_indicator_tail", w_ind, 1e-12, w_ind <= 1e-12});
    rows.push_back({"identities", "weighted_haar_tail", w_haar, 1e-12, w_haar <= 1e-12});
    rows.push_back({"identities", "telescopic_average", w_tel, 1e-12, w_tel <= 1e-12});
    rows.push_back({"identities", "small_scale_norm_bounds", double(bound_violations), 0.0,
                    bound_violations == 0});
}

void run_operators(uint64_t seed, int count, std::vector<SuiteRow>& rows) {
    using namespace dyadic;
    EnsembleSpec espec;
    espec.seed = seed;
    espec.count = count;
    const double s_grid[] = {0.1, 0.25, 0.5, 0.75, 0.9};

    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const HaarSeries f = make_sample(espec, uint64_t(i));
        const double s = s_grid[std::size_t(i) % std::size(s_grid)];
        const double sup = linf_norm(to_step(f));
        worst = std::max(worst, reconstruction_residual(f, s) / (1.0 + sup));
    }
    rows.push_back({"operators", "reconstruction", worst, 1e-12, worst <= 1e-12});
}

void run_algebra_coefficients(uint64_t seed, int count, std::vector<SuiteRow>& rows) {
    using namespace dyadic;
    EnsembleSpec espec;
    espec.seed = seed;
    espec.count = 2 * count;

    double w_square = 0.0, w_polar = 0.0;
    for (int i = 0; i < count; ++i) {
        const HaarSeries f = make_sample(espec, uint64_t(i));
        const HaarSeries g = make_sample(espec, uint64_t(i + count));
        w_square = std::max(w_square, square_hs_norm(f, 0.75).max_crosscheck_residual);

        const StepFunction product = multiply(to_step(f), to_step(g));
        const AnalyzeResult ar = analyze(product);
        for (const auto& [K, c] : ar.series.coefficients()) {
            const double formula = product_haar_coefficient(f, g, K);
            w_polar = std::max(w_polar, std::abs(formula - c) / (1.0 + std::abs(c)));
        }
    }
    rows.push_back(
        {"algebra-coefficients", "square_formula_dual_route", w_square, 1e-10, w_square <= 1e-10});
    rows.push_back({"algebra-coefficients", "polarization", w_polar, 1e-10, w_polar <= 1e-10});
}

int cmd_norms(const std::string& input, double s, const std::string& output,
              const std::string& format) {
    const dyadic::HaarSeries f = dyadic::haar_series_from_json(read_input(input));
    const dyadic::NormReport rep = dyadic::make_norm_report(f, s);
    write_output(format == "csv" ? dyadic::norm_report_csv(rep)
                                 : dyadic::to_json_string(rep) + "\n",
                 output);
    return 0;
}

int cmd_verify(std::vector<std::string> suites, uint64_t seed, int count, int64_t depth,
               const std::string& output, const std::string& format) {
    if (suites.empty()) suites = {"identities", "operators", "algebra-coefficients"};
    std::vector<SuiteRow> rows;
    for (const auto& suite : suites) {
        if (suite == "identities")
            run_identities(seed, count, depth, rows);
        else if (suite == "operators")
            run_operators(seed, count, rows);
        else
            run_algebra_coefficients(seed, count, rows);
    }
    dyadic::ExperimentReport rep;
    rep.title = "verification";
    rep.columns = {"suite", "check", "max_residual", "tolerance", "pass"};
    bool all = true;
    for (const auto& r : rows) {
        rep.rows.push_back({r.suite, r.check, r.max_residual, r.tolerance, r.pass});
        all = all && r.pass;
    }
    rep.verdict = all ? "PASS" : "FAIL";
    write_output(render(rep, format), output);
    return all ? 0 : 1;
}

int cmd_embedding_scan(std::vector<std::string> checks, const std::vector<double>& s_list,
                       uint64_t seed, int count, const std::string& output,
                       const std::string& format) {
    if (checks.empty()) checks = {"morrey", "bmo", "gns"};
    // Each check has its own admissible s range; pair it only with the
    // requested s values it applies to.
    std::vector<dyadic::CheckRequest> requests;
    bool needs_cal = false;
    for (const auto& check : checks) {
        if (check == "bmo") {
            requests.push_back({check, 0.5});
            continue;
        }
        if (s_list.empty())
            throw std::invalid_argument("--s is required for the " + check + " check");
        for (double s : s_list) {
            if (check == "morrey" && !(s > 0.5 && s < 1.0)) continue;
            if (check == "gns" && !(s > 0.0 && s < 0.5)) continue;
            requests.push_back({check, s});
            needs_cal = needs_cal || check == "gns";
        }
    }
    if (requests.empty())
        throw std::invalid_argument("no requested check applies to the given s values");
    dyadic::EnsembleSpec spec;
    spec.seed = seed;
    spec.count = count;
    dyadic::Calibration cal;
    if (needs_cal) {
        cal = dyadic::load_calibration(dyadic::default_calibration_path());
        for (const auto& req : requests)
            if (req.name == "gns" && !cal.has(dyadic::calibration_key("gns", req.s)))
                throw std::invalid_argument("no calibration entry for " +
                                            dyadic::calibration_key("gns", req.s) +
                                            "; regenerate the fixture with `calibrate`");
    }
    const dyadic::ExperimentReport rep = dyadic::run_ensemble(spec, requests, cal);
    write_output(render(rep, format), output);
    return rep.verdict == "PASS" ? 0 : 1;
}

int cmd_counterexample(const std::string& family, double s, double alpha,
                       const std::vector<int64_t>& n_list, const std::string& output,
                       const std::string& format) {
    dyadic::CounterexampleSpec spec;
    spec.family = family == "critical" ? dyadic::Family::Critical : dyadic::Family::LowReg;
    spec.s = s;
    spec.alpha = alpha;
    spec.N = n_list.empty() ? 1 : *std::max_element(n_list.begin(), n_list.end());
    const dyadic::ExperimentReport rep = dyadic::divergence_experiment(spec, n_list);
    write_output(render(rep, format), output);
    bool ok = rep.verdict == "DIVERGES";
    for (const auto& [key, value] : rep.summary)
        if ((key == "increments_ok" || key == "tail_bound_ok") &&
            std::holds_alternative<bool>(value))
            ok = ok && std::get<bool>(value);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Haar-calculus toolkit for the dyadic fractional Sobolev space H^s"};
    app.require_subcommand(1);

    std::string input, output, format = "json", family;
    std::vector<std::string> suites, checks;
    std::vector<double> s_list;
    std::vector<int64_t> n_list;
    double s = 0.5, alpha = 0.0;
    int64_t depth = 12;
    uint64_t seed = 1;
    int count = 100;

    const auto format_check = CLI::IsMember({"json", "csv"});

    CLI::App* norms = app.add_subcommand("norms", "full norm report for a Haar series");
    norms->add_option("--input", input, "series JSON path, '-' for stdin")->required();
    norms->add_option("--s", s, "regularity parameter in (0,1)")->required();
    norms->add_option("--output", output, "output path, default stdout");
    norms->add_option("--format", format, "json or csv")->check(format_check);

    CLI::App* verify = app.add_subcommand("verify", "seeded identity/property verification");
    verify->add_option("--suite", suites, "identities, operators, algebra-coefficients")
        ->check(CLI::IsMember({"identities", "operators", "algebra-coefficients"}));
    verify->add_option("--seed", seed, "ensemble seed");
    verify->add_option("--count", count, "samples per suite")->check(CLI::Range(1, 100000));
    verify->add_option("--depth", depth, "truncation depth for weighted-sum identities")
        ->check(CLI::Range(int64_t(1), int64_t(40)));
    verify->add_option("--output", output, "output path, default stdout");
    verify->add_option("--format", format, "json or csv")->check(format_check);

    CLI::App* scan = app.add_subcommand("embedding-scan", "embedding inequalities on ensembles");
    scan->add_option("--check", checks, "morrey, bmo, gns (default: all)")
        ->check(CLI::IsMember({"morrey", "bmo", "gns"}));
    scan->add_option("--s", s_list, "regularity parameters (repeatable)");
    scan->add_option("--seed", seed, "ensemble seed");
    scan->add_option("--count", count, "ensemble size")->check(CLI::Range(1, 100000));
    scan->add_option("--output", output, "output path, default stdout");
    scan->add_option("--format", format, "json or csv")->check(format_check);

    CLI::App* cx = app.add_subcommand("counterexample", "divergence-rate experiment");
    cx->add_option("--family", family, "lowreg or critical")
        ->required()
        ->check(CLI::IsMember({"lowreg", "critical"}));
    cx->add_option("--s", s, "regularity parameter")->required();
    cx->add_option("--alpha", alpha, "coefficient decay exponent")->required();
    cx->add_option("--n", n_list, "truncation levels (repeatable, at least 3)")->required();
    cx->add_option("--output", output, "output path, default stdout");
    cx->add_option("--format", format, "json or csv")->check(format_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (norms->parsed()) return cmd_norms(input, s, output, format);
        if (verify->parsed()) return cmd_verify(suites, seed, count, depth, output, format);
        if (scan->parsed()) return cmd_embedding_scan(checks, s_list, seed, count, output, format);
        return cmd_counterexample(family, s, alpha, n_list, output, format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
