#include "dyadic/norms.hpp"

#include "dyadic/detail/checks.hpp"

#include "dyadic/compensated.hpp"
#include "dyadic/kernels.hpp"
#include "dyadic/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dyadic {

using detail::check_s_open_unit;

namespace {

// Coefficients in map order (ascending measure), the accumulation order used
// for every norm sum.
std::vector<double> coeff_values(const HaarSeries& f) {
    std::vector<double> v;
    v.reserve(f.size());
    for (const auto& [I, c] : f.coefficients()) v.push_back(c);
    return v;
}

double weighted_coeff_sq(const HaarSeries& f, double s) {
    std::vector<double> v, w;
    v.reserve(f.size());
    w.reserve(f.size());
    for (const auto& [I, c] : f.coefficients()) {
        v.push_back(c);
        w.push_back(std::exp2(-2.0 * s * I.scale));
    }
    return kernels::weighted_sum_squares(w, v);
}

} // namespace

double l2_norm(const HaarSeries& f) {
    return std::sqrt(kernels::sum_squares(coeff_values(f)));
}

double l2_norm(const StepFunction& g) {
    return std::sqrt(std::exp2(g.base_scale()) * kernels::sum_squares(g.values()));
}

double hs_seminorm(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    return std::sqrt(weighted_coeff_sq(f, s));
}

double hs_norm(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    return std::sqrt(weighted_coeff_sq(f, s) + kernels::sum_squares(coeff_values(f)));
}

StepSeminormParts hs_seminorm_sq_of_step(const StepFunction& g, double s, int64_t depth) {
    check_s_open_unit(s);
    if (depth < 1) throw std::invalid_argument("hs_seminorm_sq_of_step: depth must be >= 1");
    StepSeminormParts parts;
    if (g.empty()) return parts;

    const AnalyzeResult ar = analyze(g);
    parts.finite_part = weighted_coeff_sq(ar.series, s);

    const double r = std::exp2(-(2.0 * s + 1.0));
    for (const auto& tree : {ar.hulls.negative, ar.hulls.positive}) {
        if (!tree) continue;
        const double M = tree->integral;
        const double lead = M * M * std::exp2(-(2.0 * s + 1.0) * tree->hull.scale);
        const double closed = lead * r / (1.0 - r);
        parts.tail_closed_form += closed;

        // Validate: truncated sum + analytic remainder must reproduce the
        // closed form up to rounding.
        const double truncated = ancestor_tail_truncated(tree->hull, M, s, depth);
        const double remainder = lead * std::pow(r, double(depth) + 1.0) / (1.0 - r);
        if (std::abs(truncated + remainder - closed) > 1e-9 * (1.0 + std::abs(closed)))
            throw std::logic_error("hs_seminorm_sq_of_step: ancestor tail validation failed");
    }
    return parts;
}

double ancestor_tail_truncated(const DyadicInterval& hull, double M, double s, int64_t depth) {
    check_s_open_unit(s);
    Accumulator acc;
    for (int64_t j = depth; j >= 1; --j)
        acc.add(M * M * std::exp2(-(2.0 * s + 1.0) * (double(hull.scale) + double(j))));
    return acc.value();
}

std::pair<bool, bool> truncated_hs_bound(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    Accumulator q;
    for (const auto& [I, c] : f.coefficients()) {
        q.add(c * c);
        if (I.scale < 0) q.add(std::exp2(-2.0 * s * I.scale) * c * c);
    }
    const double full = weighted_coeff_sq(f, s) + kernels::sum_squares(coeff_values(f));
    const double slack = 1e-12 * (1.0 + full);
    const bool lower_ok = 0.5 * full <= q.value() + slack;
    const bool upper_ok = q.value() <= full + slack;
    return {lower_ok, upper_ok};
}

double lq_norm(const StepFunction& g, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: requires q >= 1");
    Accumulator acc;
    for (double v : g.values()) acc.add(std::pow(std::abs(v), q));
    return std::pow(std::exp2(g.base_scale()) * acc.value(), 1.0 / q);
}

double linf_norm(const StepFunction& g) {
    return kernels::max_abs(g.values());
}

double bmo_norm(const HaarSeries& f) {
    if (f.empty()) return 0.0;
    const SeriesHulls hulls = series_hulls(f);

    // Bottom-up subtree sums S(I) = sum_{J ⊆ I} (f,h_J)^2 over the candidate
    // set (stored intervals and their ancestors up to the per-tree hull):
    // map order is ascending scale, so each entry can push its sum into its
    // parent, which is visited later.
    std::map<DyadicInterval, double> sums;
    for (const auto& [I, c] : f.coefficients()) sums[I] += c * c;

    double best = 0.0;
    for (auto it = sums.begin(); it != sums.end(); ++it) {
        const DyadicInterval I = it->first;
        const double sI = it->second;
        best = std::max(best, sI * std::exp2(-double(I.scale)));
        const DyadicInterval hull = I.index < 0 ? *hulls.negative : *hulls.positive;
        if (I != hull) sums[parent(I)] += sI;
    }
    return std::sqrt(best);
}

double bmo_norm(const StepFunction& g) {
    if (g.empty()) return 0.0;
    const AnalyzeResult ar = analyze(g);
    const double in_hull = bmo_norm(ar.series);
    double best = in_hull * in_hull;

    for (const auto& tree : {ar.hulls.negative, ar.hulls.positive}) {
        if (!tree || tree->integral == 0.0) continue;
        // Between the coefficient hull and the support hull the inner sum is
        // frozen; above the support hull every ancestor K adds M^2/|K|.
        Accumulator inner;
        for (const auto& [J, c] : ar.series.coefficients())
            if (contains(tree->hull, J)) inner.add(c * c);
        const double m2 = tree->integral * tree->integral;
        for (DyadicInterval K = tree->hull; K.scale < K_MAX;) {
            K = parent(K);
            inner.add(m2 * std::exp2(-double(K.scale)));
            best = std::max(best, inner.value() * std::exp2(-double(K.scale)));
        }
    }
    return std::sqrt(best);
}

NormReport make_norm_report(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    NormReport rep;
    rep.s = s;
    rep.l2 = l2_norm(f);
    rep.hs_seminorm = hs_seminorm(f, s);
    rep.hs_norm = hs_norm(f, s);
    rep.bmo = bmo_norm(f);
    const StepFunction g = to_step(f);
    rep.linf = linf_norm(g);
    if (s < 0.5) rep.lq = lq_norm(g, FractionalParameter{s}.q());
    rep.base_scale = g.base_scale();
    rep.piece_count = g.piece_count();
    // A finite Haar expansion is its own entire spectrum: the synthesized
    // step is mean-zero per tree and carries no ancestor tail.
    rep.tail_validation_depth = 0;
    rep.tail_closed_form = 0.0;
    return rep;
}

} // namespace dyadic
