#include "dyadic/operators.hpp"

#include "dyadic/kernels.hpp"

#include "dyadic/detail/checks.hpp"

#include <cmath>
#include <stdexcept>

namespace dyadic {

using detail::check_s_open_unit;

FractionalParameter::FractionalParameter(double s_) : s(s_) { check_s_open_unit(s); }

double FractionalParameter::q() const {
    if (!subcritical())
        throw std::invalid_argument("q = 2/(1-2s) requires s < 1/2");
    return 2.0 / (1.0 - 2.0 * s);
}

namespace {

HaarSeries scale_coefficients(const HaarSeries& f, double exponent_per_scale) {
    HaarSeries::Map out;
    for (const auto& [I, c] : f.coefficients())
        out.emplace(I, c * std::exp2(exponent_per_scale * static_cast<double>(I.scale)));
    return HaarSeries(std::move(out));
}

} // namespace

HaarSeries frac_derivative(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    return scale_coefficients(f, -s); // |I|^{-s} = 2^{-s·scale}
}

HaarSeries frac_antiderivative(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    return scale_coefficients(f, s);
}

HaarSeries t_s_closed(const HaarSeries& g, double s) {
    check_s_open_unit(s);
    const double inv = 1.0 / (std::exp2(s) - 1.0);
    HaarSeries::Map out;
    for (const auto& [J, c] : g.coefficients())
        out.emplace(J, inv * c * std::exp2(s * static_cast<double>(J.scale)));
    return HaarSeries(std::move(out));
}

StepFunction t_s_truncated(const HaarSeries& g, double s, int64_t depth) {
    check_s_open_unit(s);
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    if (g.empty()) return StepFunction{};

    const int32_t cutoff = static_cast<int32_t>(*g.min_scale() - depth);
    if (cutoff < K_MIN)
        throw clamp_error("truncation depth reaches below the scale clamp");

    SeriesHulls hulls = series_hulls(g);
    std::vector<int64_t> idx;
    std::vector<double> val;

    // The averages <g>_I vanish for I at or above a tree hull (finite Haar
    // series are mean-zero per tree), so the defining sum only collects
    // contributions strictly inside each hull; accumulate them on the way
    // down and emit the running total on each cutoff-scale leaf.
    auto descend = [&](auto&& self, const DyadicInterval& I, double avg, double acc) -> void {
        acc += std::exp2(s * static_cast<double>(I.scale)) * avg;
        if (I.scale == cutoff) {
            if (acc != 0.0) {
                idx.push_back(I.index);
                val.push_back(acc);
            }
            return;
        }
        const auto [L, R] = children(I);
        const double step = g.coeff(I) * haar_height(I);
        self(self, L, avg - step, acc);
        self(self, R, avg + step, acc);
    };

    auto run = [&](const std::optional<DyadicInterval>& hull) {
        if (!hull) return;
        const int64_t d = int64_t(hull->scale) - cutoff;
        if (d >= 63 || (std::size_t(1) << d) > PIECE_LIMIT)
            throw std::length_error("truncation would exceed the piece limit");
        descend(descend, *hull, 0.0, 0.0);
    };
    run(hulls.negative);
    run(hulls.positive);

    return StepFunction::from_sorted(cutoff, std::move(idx), std::move(val));
}

double reconstruction_residual(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    HaarSeries r = t_s_closed(frac_derivative(f, s), s);
    r *= std::exp2(s) - 1.0;
    r -= f;
    if (r.empty()) return 0.0;
    StepFunction diff = to_step(r);
    return kernels::max_abs(diff.values());
}

} // namespace dyadic
