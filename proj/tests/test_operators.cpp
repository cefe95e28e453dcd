#include "doctest.h"

#include "dyadic/analysis.hpp"
#include "dyadic/embeddings.hpp"
#include "dyadic/kernels.hpp"
#include "dyadic/norms.hpp"
#include "dyadic/operators.hpp"

#include <cmath>

using namespace dyadic;

namespace {

HaarSeries mixed_series() {
    HaarSeries f;
    f.set_coeff({0, 0}, 1.0);
    f.set_coeff({-2, 3}, -0.6);
    f.set_coeff({3, -1}, 0.25);
    f.set_coeff({-5, -40}, 1.1);
    return f;
}

} // namespace

TEST_CASE("fractional derivative scales coefficients by |I|^{-s}") {
    const HaarSeries f = mixed_series();
    const HaarSeries d = frac_derivative(f, 0.5);
    for (const auto& [I, c] : f.coefficients())
        CHECK(d.coeff(I) == c * std::exp2(-0.5 * double(I.scale)));
    // Antiderivative undoes it exactly on the same grid.
    const HaarSeries back = frac_antiderivative(d, 0.5);
    for (const auto& [I, c] : f.coefficients())
        CHECK(back.coeff(I) == doctest::Approx(c).epsilon(1e-15));
}

TEST_CASE("parameter gate") {
    const HaarSeries f = mixed_series();
    CHECK_THROWS_AS(frac_derivative(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(frac_derivative(f, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(t_s_closed(f, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(FractionalParameter(1.5), std::invalid_argument);
    CHECK(FractionalParameter(0.25).q() == doctest::Approx(4.0));
    CHECK_THROWS_AS(FractionalParameter(0.75).q(), std::invalid_argument);
}

TEST_CASE("reconstruction: (2^s - 1) T_s D^s = identity on the span") {
    const HaarSeries f = mixed_series();
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9})
        CHECK(reconstruction_residual(f, s) <= 1e-13);
    CHECK(reconstruction_residual(HaarSeries{}, 0.5) == 0.0);
}

TEST_CASE("truncated T_s converges to the closed form geometrically") {
    const double s = 0.5;
    HaarSeries g;
    g.set_coeff({0, 0}, 1.0);
    g.set_coeff({1, -1}, -0.5);

    const StepFunction closed_step = to_step(t_s_closed(g, s));
    double prev = 0.0;
    for (int64_t depth : {2, 4, 6, 8, 10}) {
        const StepFunction trunc = t_s_truncated(g, s, depth);
        const StepFunction diff = subtract(closed_step.refined_to(trunc.base_scale()), trunc);
        const double err = kernels::max_abs(diff.values());
        if (depth > 2) {
            // Two extra levels shrink the sup error by exactly 2^{-2s} = 1/2.
            CHECK(err <= 0.55 * prev);
            CHECK(err >= 0.45 * prev);
        }
        prev = err;
    }
}

TEST_CASE("truncated T_s guards depth and clamp") {
    HaarSeries g;
    g.set_coeff({0, 0}, 1.0);
    CHECK_THROWS_AS(t_s_truncated(g, 0.5, -1), std::invalid_argument);
    HaarSeries deep;
    deep.set_coeff({-55, 0}, 1.0);
    CHECK_THROWS_AS(t_s_truncated(deep, 0.5, 10), clamp_error);
    CHECK(t_s_truncated(HaarSeries{}, 0.5, 5).empty());
}

TEST_CASE("T_s output is supported inside the hulls") {
    HaarSeries g;
    g.set_coeff({0, 0}, 1.0);  // hull [0,1), positive tree
    g.set_coeff({0, -2}, 2.0); // hull [-2,-1), negative tree
    const StepFunction t = t_s_truncated(g, 0.5, 6);
    CHECK(t.evaluate(1.5) == 0.0);
    CHECK(t.evaluate(-0.5) == 0.0);
    CHECK(t.evaluate(-2.5) == 0.0);
    CHECK(t.evaluate(0.25) != 0.0);
    CHECK(t.evaluate(-1.75) != 0.0);
}

TEST_CASE("reconstruction residual over a random ensemble") {
    EnsembleSpec spec;
    spec.seed = 421;
    spec.count = 50;
    for (int i = 0; i < spec.count; ++i) {
        const HaarSeries f = make_sample(spec, uint64_t(i));
        const double sup = linf_norm(to_step(f));
        for (double s : {0.1, 0.5, 0.9})
            CHECK(reconstruction_residual(f, s) <= 1e-12 * (1.0 + sup));
    }
}
