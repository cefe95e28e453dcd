#include "dyadic/algebra.hpp"

#include "dyadic/detail/checks.hpp"

#include "dyadic/analysis.hpp"
#include "dyadic/compensated.hpp"
#include "dyadic/detail/tree_walk.hpp"
#include "dyadic/operators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace dyadic {

using detail::check_s_open_unit;

namespace {

constexpr double CROSSCHECK_TOL = 1e-10;

double descendant_part(const HaarSeries& f, const DyadicInterval& K) {
    Accumulator acc;
    for (const auto& [I, c] : f.coefficients())
        if (I != K && contains(K, I)) acc.add(c * c * haar_constant_on(K, I));
    return acc.value();
}

double average_part_at(const HaarSeries& f, const DyadicInterval& K) {
    const double cK = f.coeff(K);
    if (cK == 0.0) return 0.0;
    return 2.0 * cK * average(f, K);
}

// Intervals that can carry a nonzero part of (f², h_K) inside the hulls:
// everywhere else f is constant, so the coefficient vanishes.
std::vector<DyadicInterval> formula_candidates(const HaarSeries& f) {
    const SeriesHulls hulls = series_hulls(f);
    std::set<DyadicInterval> seen;
    for (const auto& [I, c] : f.coefficients()) {
        (void)c;
        const DyadicInterval hull = I.index < 0 ? *hulls.negative : *hulls.positive;
        for (DyadicInterval K = I;; K = parent(K)) {
            if (!seen.insert(K).second || K == hull) break;
        }
    }
    return {seen.begin(), seen.end()};
}

// Per-node state of the cross-check walk over the product's piece arrays.
struct SqState {
    double integ = 0.0; // ∫ f² over the node
    double e = 0.0;     // Σ_{I ⊆ node} (f,h_I)², coefficients of f
};

// Recomputes each in-hull product coefficient two ways: from the product's
// own integrals, and from the coefficient formula with the descendant sum
// folded into the same walk (E(K_R) − E(K_L) replaces the explicit
// Σ_{I⊊K}(f,h_I)² h_K(I)).
double run_crosscheck(const HaarSeries& f, const StepFunction& sq, const TreeHull& hulls) {
    if (sq.empty()) return 0.0;
    const auto& idx = sq.indices();
    const auto& val = sq.values();
    const double meas = std::exp2(static_cast<double>(sq.base_scale()));
    const std::size_t split = static_cast<std::size_t>(
        std::lower_bound(idx.begin(), idx.end(), int64_t(0)) - idx.begin());

    double worst = 0.0;
    auto run_tree = [&](const std::optional<TreeHull::Tree>& tree, std::size_t lo,
                        std::size_t hi) {
        if (!tree) return;
        auto leaf = [&](double v) { return SqState{v * meas, 0.0}; };
        auto node = [&](const DyadicInterval& K, const SqState& L, const SqState& R) {
            const double ht = haar_height(K);
            const double coeff = (R.integ - L.integ) * ht;
            const double cK = f.coeff(K);
            double formula = ht * (R.e - L.e);
            if (cK != 0.0) formula += 2.0 * cK * average(f, K);
            const double resid = std::abs(coeff - formula) / (1.0 + std::abs(coeff));
            worst = std::max(worst, resid);
            if (resid > CROSSCHECK_TOL)
                throw std::logic_error("square_hs_norm: coefficient formula cross-check failed");
            return SqState{L.integ + R.integ, L.e + R.e + cK * cK};
        };
        detail::walk_span<SqState>(tree->hull, sq.base_scale(), idx, val, lo, hi, leaf, node);
    };
    run_tree(hulls.negative, 0, split);
    run_tree(hulls.positive, split, idx.size());
    return worst;
}

} // namespace

double square_haar_coefficient(const HaarSeries& f, const DyadicInterval& K) {
    check_interval(K);
    return descendant_part(f, K) + average_part_at(f, K);
}

ProductDecomposition product_decomposition(const HaarSeries& f) {
    ProductDecomposition out;
    Accumulator neg, pos;
    for (const auto& [I, c] : f.coefficients()) (I.index < 0 ? neg : pos).add(c * c);
    out.negative_tree_integral = neg.value();
    out.positive_tree_integral = pos.value();
    for (const DyadicInterval& K : formula_candidates(f)) {
        const double sq = descendant_part(f, K);
        const double av = average_part_at(f, K);
        if (sq != 0.0) out.square_series_part[K] = sq;
        if (av != 0.0) out.average_part[K] = av;
    }
    return out;
}

double product_haar_coefficient(const HaarSeries& f, const HaarSeries& g,
                                const DyadicInterval& K) {
    return 0.5 * (square_haar_coefficient(f + g, K) - square_haar_coefficient(f, K) -
                  square_haar_coefficient(g, K));
}

SquareNormResult square_hs_norm(const HaarSeries& f, double s) {
    check_s_open_unit(s);
    SquareNormResult out;
    out.report.s = s;

    StepFunction sq;
    {
        const StepFunction step = to_step(f);
        sq = multiply(step, step);
    }

    constexpr int64_t tail_depth = 50;
    const StepSeminormParts parts = hs_seminorm_sq_of_step(sq, s, tail_depth);
    const double l2 = l2_norm(sq);
    out.hs_norm_sq = parts.total() + l2 * l2;

    out.report.l2 = l2;
    out.report.hs_seminorm = std::sqrt(parts.total());
    out.report.hs_norm = std::sqrt(out.hs_norm_sq);
    out.report.linf = linf_norm(sq);
    if (s < 0.5) out.report.lq = lq_norm(sq, FractionalParameter{s}.q());
    out.report.bmo = bmo_norm(sq);
    out.report.base_scale = sq.base_scale();
    out.report.piece_count = sq.piece_count();
    out.report.tail_validation_depth = tail_depth;
    out.report.tail_closed_form = parts.tail_closed_form;

    out.max_crosscheck_residual = run_crosscheck(f, sq, tree_hulls(sq));
    return out;
}

LocalSquareEstimate local_square_estimate(const HaarSeries& f, double s,
                                          const DyadicInterval& I) {
    if (!(s > 0.5 && s < 1.0))
        throw std::invalid_argument("local_square_estimate: requires 1/2 < s < 1");
    check_interval(I);
    LocalSquareEstimate out;
    if (f.empty()) return out;

    StepFunction sq;
    {
        const StepFunction step = to_step(f);
        sq = multiply(step, step);
    }
    const AnalyzeResult ar = analyze(sq);

    Accumulator lhs;
    for (const auto& [J, c] : ar.series.coefficients())
        if (contains(I, J)) lhs.add(std::exp2(-2.0 * s * J.scale) * c * c);
    // When I strictly contains a support hull, the coefficients on the chain
    // between them are the analytic above-hull values.
    for (const auto& tree : {ar.hulls.negative, ar.hulls.positive}) {
        if (!tree || tree->integral == 0.0) continue;
        if (tree->hull == I || !contains(I, tree->hull)) continue;
        const double m2 = tree->integral * tree->integral;
        for (DyadicInterval K = parent(tree->hull);; K = parent(K)) {
            lhs.add(m2 * std::exp2(-(2.0 * s + 1.0) * K.scale));
            if (K == I) break;
        }
    }
    out.lhs = lhs.value();

    Accumulator inner;
    for (const auto& [J, c] : f.coefficients())
        if (contains(I, J)) inner.add(std::exp2(-2.0 * s * J.scale) * c * c);
    const double semi = hs_seminorm(f, s);
    out.rhs_factor = std::exp2((2.0 * s - 1.0) * I.scale) * semi * semi * inner.value();
    return out;
}

} // namespace dyadic
