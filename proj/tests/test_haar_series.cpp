#include "doctest.h"

#include "dyadic/analysis.hpp"
#include "dyadic/haar_series.hpp"
#include "dyadic/step_function.hpp"

#include <cmath>

using namespace dyadic;

TEST_CASE("canonical storage never holds zeros") {
    HaarSeries f;
    f.set_coeff({0, 0}, 1.5);
    f.set_coeff({2, -1}, -0.5);
    CHECK(f.size() == 2);
    f.set_coeff({0, 0}, 0.0);
    CHECK(f.size() == 1);
    CHECK(f.coeff({0, 0}) == 0.0);
    f.add_coeff({2, -1}, 0.5);
    CHECK(f.empty());

    HaarSeries::Map m;
    m.emplace(DyadicInterval{5, 3}, 0.0);
    m.emplace(DyadicInterval{5, 4}, 2.0);
    const HaarSeries g(std::move(m));
    CHECK(g.size() == 1);
}

TEST_CASE("coefficient intervals are validated") {
    HaarSeries f;
    CHECK_THROWS_AS(f.set_coeff({61, 0}, 1.0), clamp_error);
    CHECK_THROWS_AS(f.add_coeff({-61, 0}, 1.0), clamp_error);
}

TEST_CASE("min_scale and hulls") {
    HaarSeries f;
    CHECK(!f.min_scale().has_value());
    f.set_coeff({3, 0}, 1.0);
    f.set_coeff({-2, 17}, 1.0); // [17/4, 18/4) ⊂ [4, 8)
    f.set_coeff({0, -3}, 1.0);
    CHECK(f.min_scale() == -2);

    const SeriesHulls h = series_hulls(f);
    REQUIRE(h.positive.has_value());
    REQUIRE(h.negative.has_value());
    CHECK(*h.positive == DyadicInterval{3, 0});
    CHECK(*h.negative == DyadicInterval{0, -3});

    HaarSeries neg;
    neg.set_coeff({0, -1}, 1.0);
    CHECK(!series_hulls(neg).positive.has_value());
}

TEST_CASE("evaluation matches the step form pointwise") {
    HaarSeries f;
    f.set_coeff({0, 0}, 1.0);
    f.set_coeff({-1, 1}, -0.25);
    f.set_coeff({2, -1}, 0.7);
    const StepFunction g = to_step(f);
    for (double x : {-3.9, -2.0, -0.5, 0.1, 0.3, 0.6, 0.9, 1.0, 3.5}) {
        CHECK(f.evaluate(x) == doctest::Approx(g.evaluate(x)).epsilon(1e-15));
    }
    // Exact at dyadic points too (same branch decisions).
    CHECK(f.evaluate(0.5) == g.evaluate(0.5));
}

TEST_CASE("linear operations stay canonical") {
    HaarSeries f, g;
    f.set_coeff({0, 0}, 1.0);
    f.set_coeff({1, 1}, 2.0);
    g.set_coeff({0, 0}, -1.0);
    g.set_coeff({4, -1}, 3.0);

    const HaarSeries sum = f + g;
    CHECK(sum.size() == 2); // the {0,0} terms cancel exactly
    CHECK(sum.coeff({1, 1}) == 2.0);
    CHECK(sum.coeff({4, -1}) == 3.0);

    HaarSeries zero = f;
    zero -= f;
    CHECK(zero.empty());

    HaarSeries scaled = f * 2.0;
    CHECK(scaled.coeff({1, 1}) == 4.0);
    scaled *= 0.0;
    CHECK(scaled.empty());
}

TEST_CASE("step conversion base scale sits one below the finest coefficient") {
    HaarSeries f;
    f.set_coeff({2, 0}, 1.0);
    CHECK(to_step(f).base_scale() == 1);
    f.set_coeff({-3, 1}, 1.0);
    CHECK(to_step(f).base_scale() == -4);
    CHECK(to_step(HaarSeries{}).empty());
}

TEST_CASE("step pieces are exact Haar values") {
    HaarSeries f;
    f.set_coeff({1, 0}, 3.0); // 3 h_{[0,2)} = ∓ 3/√2 on the halves
    const StepFunction g = to_step(f);
    REQUIRE(g.piece_count() == 2);
    CHECK(g.base_scale() == 0);
    CHECK(g.values()[0] == -3.0 * std::exp2(-0.5));
    CHECK(g.values()[1] == 3.0 * std::exp2(-0.5));
    CHECK(g.integral() == 0.0);
}

TEST_CASE("analyze inverts to_step exactly on stored coefficients") {
    HaarSeries f;
    f.set_coeff({0, 0}, 0.3);
    f.set_coeff({0, 1}, -1.2);
    f.set_coeff({-2, 5}, 0.45);
    f.set_coeff({3, -1}, 2.0);
    f.set_coeff({-1, -2}, -0.75);

    const AnalyzeResult ar = analyze(to_step(f));
    // Finite Haar series are mean-zero per tree, so analysis recovers the
    // coefficient map (to rounding) and near-zero integrals.  Hull intervals
    // whose exact coefficient is zero may pick up ~1e-17 rounding residue.
    for (const auto& [I, c] : f.coefficients())
        CHECK(ar.series.coeff(I) == doctest::Approx(c).epsilon(1e-14));
    for (const auto& [I, c] : ar.series.coefficients())
        if (f.coeff(I) == 0.0) CHECK(std::abs(c) <= 1e-15);
    for (const auto& tree : {ar.hulls.negative, ar.hulls.positive}) {
        REQUIRE(tree.has_value());
        CHECK(std::abs(tree->integral) <= 1e-15);
    }
}

TEST_CASE("averages via ancestors match exact integration") {
    HaarSeries f;
    f.set_coeff({2, 0}, 1.0);
    f.set_coeff({1, 0}, -0.5);
    f.set_coeff({0, 2}, 2.0);
    const StepFunction g = to_step(f);
    for (const DyadicInterval& I :
         {DyadicInterval{0, 0}, DyadicInterval{0, 2}, DyadicInterval{-1, 5},
          DyadicInterval{-3, 17}, DyadicInterval{1, 1}, DyadicInterval{4, 0}}) {
        CHECK(average(f, I) == doctest::Approx(average(g, I)).epsilon(1e-14));
    }
    // Above every coefficient the averages vanish identically.
    CHECK(average(f, DyadicInterval{10, 0}) == 0.0);
}

TEST_CASE("telescoping of averages across generations") {
    HaarSeries f;
    f.set_coeff({4, 0}, 1.3);
    f.set_coeff({2, 1}, -0.4);
    f.set_coeff({0, 5}, 0.8);
    for (int64_t k : {1, 2, 3, 7}) {
        CHECK(std::abs(telescope_residual(f, {0, 5}, k)) <= 1e-14);
        CHECK(std::abs(telescope_residual(f, {-2, 21}, k)) <= 1e-14);
    }
}

TEST_CASE("step products refuse to blow past the piece limit") {
    // [0, 2^25) as one piece at scale 25, refined to scale -2 would need 2^27
    // pieces.
    const StepFunction wide = StepFunction::from_pieces(25, {{0, 1.0}});
    CHECK_THROWS_AS(wide.refined_to(-2), std::length_error);
}

TEST_CASE("step arithmetic on mismatched grids refines exactly") {
    const StepFunction a = StepFunction::from_pieces(0, {{0, 2.0}, {1, -1.0}});
    const StepFunction b = StepFunction::from_pieces(-1, {{1, 4.0}});
    const StepFunction p = multiply(a, b);
    CHECK(p.base_scale() == -1);
    CHECK(p.evaluate(0.6) == 8.0);
    CHECK(p.evaluate(0.2) == 0.0);
    CHECK(p.evaluate(1.5) == 0.0);
    const StepFunction s = add(a, b);
    CHECK(s.evaluate(0.6) == 6.0);
    CHECK(s.evaluate(0.2) == 2.0);
    CHECK(s.evaluate(1.5) == -1.0);
    CHECK(subtract(s, b) == a.refined_to(-1));
}
