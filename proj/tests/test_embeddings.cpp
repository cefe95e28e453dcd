#include "doctest.h"

#include "dyadic/calibration.hpp"
#include "dyadic/counterexamples.hpp"
#include "dyadic/embeddings.hpp"
#include "dyadic/norms.hpp"
#include "dyadic/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

using namespace dyadic;

TEST_CASE("sampling is deterministic and individually addressable") {
    EnsembleSpec spec;
    spec.seed = 99;
    spec.count = 10;
    const HaarSeries a = make_sample(spec, 3);
    const HaarSeries b = make_sample(spec, 3);
    CHECK(a == b);
    CHECK(!(make_sample(spec, 4) == a));
    spec.seed = 100;
    CHECK(!(make_sample(spec, 3) == a));
}

TEST_CASE("samples respect the spec window") {
    EnsembleSpec spec;
    spec.seed = 5;
    spec.count = 50;
    for (uint64_t i = 0; i < 50; ++i) {
        const HaarSeries f = make_sample(spec, i);
        CHECK(!f.empty());
        for (const auto& [I, c] : f.coefficients()) {
            (void)c;
            CHECK(I.scale >= spec.scale_lo);
            CHECK(I.scale <= spec.scale_hi);
            // Support stays inside the scale-0 window (coarse draws use the
            // enclosing dyadic cells, which at scale <= 0 still fit).
            if (I.scale <= 0) {
                const double lo = double(I.index) * measure(I);
                CHECK(lo >= double(spec.index_lo));
                CHECK(lo + measure(I) <= double(spec.index_hi + 1));
            }
        }
    }
}

TEST_CASE("distribution variants") {
    EnsembleSpec spec;
    spec.seed = 31;
    spec.count = 4;
    spec.dist = Distribution::LacunaryTower;
    spec.sparsity = 6;
    const HaarSeries tower = make_sample(spec, 0);
    CHECK(tower.size() == 6);
    for (int64_t k = 0; k < 6; ++k)
        CHECK(tower.coeff(tower_interval(k)) == std::exp2(-spec.alpha * double(k)));

    spec.dist = Distribution::SingleInterval;
    const HaarSeries single = make_sample(spec, 1);
    CHECK(single.size() == 1);
    CHECK(std::abs(single.coefficients().begin()->second) == 1.0);
}

TEST_CASE("spec validation") {
    EnsembleSpec spec;
    spec.count = -1;
    CHECK_THROWS_AS(make_sample(spec, 0), std::invalid_argument);
    spec = EnsembleSpec{};
    spec.sparsity = 0;
    CHECK_THROWS_AS(make_sample(spec, 0), std::invalid_argument);
    spec = EnsembleSpec{};
    spec.index_lo = 5;
    spec.index_hi = 4;
    CHECK_THROWS_AS(make_sample(spec, 0), std::invalid_argument);
    spec = EnsembleSpec{};
    spec.scale_lo = -70;
    CHECK_THROWS_AS(make_sample(spec, 0), std::invalid_argument);
}

TEST_CASE("morrey check: exact constant, hard pass") {
    EnsembleSpec spec;
    spec.seed = 8;
    spec.count = 30;
    for (uint64_t i = 0; i < 30; ++i) {
        const HaarSeries f = make_sample(spec, i);
        for (double s : {0.6, 0.75, 0.9}) {
            const EmbeddingVerdict v = morrey_check(f, s);
            CHECK(v.pass);
            CHECK(v.exact_constant);
            CHECK(v.constant ==
                  doctest::Approx(1.0 / std::sqrt(1.0 - std::exp2(1.0 - 2.0 * s))));
        }
    }
    CHECK_THROWS_AS(morrey_check(make_sample(spec, 0), 0.4), std::invalid_argument);
}

TEST_CASE("morrey bound is exercised hard by the lacunary tower") {
    // Towers concentrate mass toward 0⁻, the stress case for the pointwise
    // bound; the inequality must still hold with its exact constant.
    const double s = 0.75;
    EnsembleSpec spec;
    spec.dist = Distribution::LacunaryTower;
    spec.alpha = 0.8; // slow decay: sup and seminorm both pile up at 0⁻
    double best = 0.0;
    for (int sp : {4, 10, 20}) {
        spec.sparsity = sp;
        const EmbeddingVerdict v = morrey_check(make_sample(spec, 0), s);
        CHECK(v.pass);
        best = std::max(best, v.ratio);
    }
    CHECK(best > 0.4); // far from a vacuous check
}

TEST_CASE("bmo check holds with constant one") {
    EnsembleSpec spec;
    spec.seed = 21;
    spec.count = 40;
    for (uint64_t i = 0; i < 40; ++i) {
        const EmbeddingVerdict v = bmo_check(make_sample(spec, i));
        CHECK(v.pass);
        CHECK(v.constant == 1.0);
    }
    // A single Haar function saturates the bound exactly.
    HaarSeries h;
    h.set_coeff({0, 0}, 2.0);
    const EmbeddingVerdict v = bmo_check(h);
    CHECK(v.pass);
    CHECK(v.ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gns ratio is dilation invariant") {
    for (double s : {0.1, 0.25, 0.4}) {
        HaarSeries base;
        base.set_coeff({0, 0}, 1.0);
        const double r0 = gns_ratio(base, s);
        CHECK(r0 > 0.0);
        for (int32_t k : {-20, -7, 3, 20}) {
            HaarSeries f;
            f.set_coeff({k, 2}, -3.0); // translated, scaled, renormalized
            CHECK(gns_ratio(f, s) == doctest::Approx(r0).epsilon(1e-10));
        }
    }
    HaarSeries f;
    f.set_coeff({0, 0}, 1.0);
    CHECK_THROWS_AS(gns_ratio(f, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(gns_ratio(HaarSeries{}, 0.25), std::invalid_argument);
}

TEST_CASE("run_ensemble output is byte-identical across runs") {
    EnsembleSpec spec;
    spec.seed = 2026;
    spec.count = 25;
    Calibration cal;
    cal.observed_sup[calibration_key("gns", 0.25)] = 2.0;
    const std::vector<CheckRequest> checks = {
        {"morrey", 0.75}, {"bmo", 0.5}, {"gns", 0.25}};
    const std::string once = to_json_string(run_ensemble(spec, checks, cal));
    const std::string twice = to_json_string(run_ensemble(spec, checks, cal));
    CHECK(once == twice);
    CHECK(run_ensemble(spec, checks, cal).verdict == "PASS");
    CHECK(run_ensemble(spec, checks, cal).rows.size() == 75);
}

TEST_CASE("run_ensemble flags failures and names the sample") {
    EnsembleSpec spec;
    spec.seed = 3;
    spec.count = 10;
    Calibration cal;
    // An absurdly small stored sup forces a bound violation.
    cal.observed_sup[calibration_key("gns", 0.25)] = 1e-6;
    const ExperimentReport rep = run_ensemble(spec, {{"gns", 0.25}}, cal);
    CHECK(rep.verdict == "FAIL");
    bool found = false;
    for (const auto& [k, v] : rep.summary)
        if (k.rfind("failing_sample", 0) == 0 && std::holds_alternative<std::string>(v))
            found = true;
    CHECK(found);

    CHECK_THROWS_AS(run_ensemble(spec, {{"nope", 0.5}}, cal), std::invalid_argument);
    // Missing calibration entry for a requested key.
    CHECK_THROWS_AS(run_ensemble(spec, {{"gns", 0.1}}, cal), std::out_of_range);
}

TEST_CASE("default calibration fixture is loadable and complete") {
    const Calibration cal = load_calibration(default_calibration_path());
    for (double s : {0.1, 0.25, 0.4}) CHECK(cal.has(calibration_key("gns", s)));
    for (double s : {0.6, 0.75, 0.9}) CHECK(cal.has(calibration_key("algebra", s)));
    CHECK(cal.has("algebra_local@0.75"));
    CHECK(cal.margin == 1.5);
    CHECK(cal.bound("gns@0.25") == doctest::Approx(1.5 * cal.observed_sup.at("gns@0.25")));
    CHECK_THROWS_AS(cal.bound("unknown@0"), std::out_of_range);
}
