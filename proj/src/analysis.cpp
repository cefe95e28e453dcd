#include "dyadic/analysis.hpp"

#include "dyadic/compensated.hpp"
#include "dyadic/detail/tree_walk.hpp"
#include "dyadic/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic {

namespace {

// Dense accumulation window for one tree's coefficients.
struct TreeWindow {
    int64_t lo = 0; // first base-scale index
    int64_t hi = 0; // one past the last
    std::vector<double> acc;
};

} // namespace

StepFunction to_step(const HaarSeries& f) {
    if (f.empty()) return StepFunction{};
    const int32_t base = *f.min_scale() - 1;
    if (base < K_MIN)
        throw clamp_error("step conversion needs scale " + std::to_string(base) +
                          " below the clamp");

    auto window_of = [&](bool negative) -> TreeWindow {
        TreeWindow w;
        bool any = false;
        for (const auto& [I, c] : f.coefficients()) {
            (void)c;
            if ((I.index < 0) != negative) continue;
            const int64_t d = int64_t(I.scale) - base;
            const auto lo = static_cast<int64_t>(__int128(I.index) << d);
            const auto hi = static_cast<int64_t>(__int128(I.index + 1) << d);
            if (!any) {
                w.lo = lo;
                w.hi = hi;
                any = true;
            } else {
                w.lo = std::min(w.lo, lo);
                w.hi = std::max(w.hi, hi);
            }
        }
        if (any) {
            if (static_cast<std::size_t>(w.hi - w.lo) > PIECE_LIMIT)
                throw std::length_error("step conversion would exceed the piece limit");
            w.acc.assign(static_cast<std::size_t>(w.hi - w.lo), 0.0);
        }
        return w;
    };

    TreeWindow neg = window_of(true);
    TreeWindow pos = window_of(false);
    if (neg.acc.size() + pos.acc.size() > PIECE_LIMIT)
        throw std::length_error("step conversion would exceed the piece limit");

    for (const auto& [I, c] : f.coefficients()) {
        TreeWindow& w = I.index < 0 ? neg : pos;
        const int64_t d = int64_t(I.scale) - base;
        const auto start = static_cast<std::size_t>(
            static_cast<int64_t>(__int128(I.index) << d) - w.lo);
        const auto half = std::size_t(1) << (d - 1);
        const double h = c * haar_height(I);
        for (std::size_t j = 0; j < half; ++j) w.acc[start + j] -= h;
        for (std::size_t j = half; j < 2 * half; ++j) w.acc[start + j] += h;
    }

    std::vector<int64_t> idx;
    std::vector<double> val;
    auto emit = [&](const TreeWindow& w) {
        for (std::size_t j = 0; j < w.acc.size(); ++j) {
            if (w.acc[j] == 0.0) continue;
            idx.push_back(w.lo + static_cast<int64_t>(j));
            val.push_back(w.acc[j]);
        }
    };
    emit(neg);
    emit(pos);
    return StepFunction::from_sorted(base, std::move(idx), std::move(val));
}

AnalyzeResult analyze(const StepFunction& g) {
    AnalyzeResult out;
    out.hulls = tree_hulls(g);
    if (g.empty()) return out;

    const auto& idx = g.indices();
    const auto& val = g.values();
    const double meas = std::exp2(static_cast<double>(g.base_scale()));
    const std::size_t split = static_cast<std::size_t>(
        std::lower_bound(idx.begin(), idx.end(), int64_t(0)) - idx.begin());

    auto run_tree = [&](const std::optional<TreeHull::Tree>& tree, std::size_t lo,
                        std::size_t hi) {
        if (!tree) return;
        auto leaf = [&](double v) { return v * meas; };
        auto node = [&](const DyadicInterval& K, double L, double R) {
            const double coef = (R - L) * haar_height(K);
            if (coef != 0.0) out.series.set_coeff(K, coef);
            return L + R;
        };
        detail::walk_span<double>(tree->hull, g.base_scale(), idx, val, lo, hi, leaf, node);
    };
    run_tree(out.hulls.negative, 0, split);
    run_tree(out.hulls.positive, split, idx.size());
    return out;
}

double above_hull_coefficient(const DyadicInterval& K, const DyadicInterval& hull, double M) {
    return haar_constant_on(K, hull) * M;
}

double average(const HaarSeries& f, const DyadicInterval& I) {
    check_interval(I);
    Accumulator acc;
    for (const auto& [J, c] : f.coefficients())
        if (J != I && contains(J, I)) acc.add(c * haar_constant_on(J, I));
    return acc.value();
}

double average(const StepFunction& g, const DyadicInterval& I) {
    check_interval(I);
    if (g.empty()) return 0.0;
    const auto& idx = g.indices();
    const auto& val = g.values();
    if (I.scale >= g.base_scale()) {
        const int64_t d = int64_t(I.scale) - g.base_scale();
        const __int128 lo128 = __int128(I.index) << d;
        const __int128 hi128 = __int128(I.index + 1) << d;
        auto clamp_idx = [&](__int128 v) -> int64_t {
            if (v < idx.front()) return idx.front();
            if (v > idx.back() + 1) return idx.back() + 1;
            return static_cast<int64_t>(v);
        };
        auto first = std::lower_bound(idx.begin(), idx.end(), clamp_idx(lo128));
        auto last = std::lower_bound(idx.begin(), idx.end(), clamp_idx(hi128));
        const auto lo = static_cast<std::size_t>(first - idx.begin());
        const auto hi = static_cast<std::size_t>(last - idx.begin());
        const double piece_sum =
            kernels::sum(std::span<const double>(val.data() + lo, hi - lo));
        return piece_sum * std::exp2(static_cast<double>(g.base_scale() - I.scale));
    }
    // I sits strictly inside one base piece: the function is constant there.
    const int64_t containing = I.index >> (g.base_scale() - I.scale);
    auto it = std::lower_bound(idx.begin(), idx.end(), containing);
    if (it == idx.end() || *it != containing) return 0.0;
    return val[static_cast<std::size_t>(it - idx.begin())];
}

double telescope_residual(const HaarSeries& f, const DyadicInterval& I, int64_t k) {
    if (k < 0) throw std::invalid_argument("telescope_residual needs k >= 0");
    const DyadicInterval top = ancestor(I, k);
    Accumulator chain;
    DyadicInterval J = I;
    for (int64_t j = 0; j < k; ++j) {
        J = parent(J);
        const double c = f.coeff(J);
        if (c != 0.0) chain.add(c * haar_constant_on(J, I));
    }
    return average(f, I) - average(f, top) - chain.value();
}

namespace {

void check_weight_exponent(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("requires s > 0");
}

} // namespace

WeightedSum weighted_indicator_sum(const DyadicInterval& I, double s, const DyadicPoint& x,
                                   int64_t depth) {
    check_weight_exponent(s);
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    check_interval(I);
    WeightedSum r;
    if (!contains_point(I, x)) return r; // both sides vanish off I
    // Exactly one interval of each generation D_k(I) contains x, of measure
    // |I|·2^{-k}; the sum telescopes to |I|^s · sum_k 2^{-sk}.
    const double Is = std::exp2(s * static_cast<double>(I.scale));
    Accumulator acc;
    for (int64_t k = 0; k <= depth; ++k) acc.add(Is * std::exp2(-s * static_cast<double>(k)));
    r.truncated = acc.value();
    r.closed_form = Is / (1.0 - std::exp2(-s));
    return r;
}

WeightedSum weighted_indicator_sum(const DyadicInterval& I, double s, double x, int64_t depth) {
    return weighted_indicator_sum(I, s, DyadicPoint::from_double(x), depth);
}

WeightedSum weighted_haar_sum(const DyadicInterval& I, double s, const DyadicPoint& x,
                              int64_t depth) {
    check_weight_exponent(s);
    if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
    check_interval(I);
    WeightedSum r;
    if (!contains_point(I, x)) return r;
    // Every descendant generation contributes one interval containing x, all
    // lying in the same half of I as x, so h_I(J) is the constant h_I(x).
    const double hx = haar_value_at(I, x);
    const double Is = std::exp2(s * static_cast<double>(I.scale));
    Accumulator acc;
    for (int64_t k = 1; k <= depth; ++k)
        acc.add(Is * std::exp2(-s * static_cast<double>(k)) * hx);
    r.truncated = acc.value();
    r.closed_form = Is * hx / (std::exp2(s) - 1.0);
    return r;
}

WeightedSum weighted_haar_sum(const DyadicInterval& I, double s, double x, int64_t depth) {
    return weighted_haar_sum(I, s, DyadicPoint::from_double(x), depth);
}

} // namespace dyadic
