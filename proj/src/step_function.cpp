#include "dyadic/step_function.hpp"

#include "dyadic/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic {

namespace {

void check_base_scale(int32_t k) {
    if (k < K_MIN || k > K_MAX)
        throw clamp_error("step base scale " + std::to_string(k) + " outside clamp");
}

} // namespace

StepFunction StepFunction::from_pieces(int32_t base_scale,
                                       std::vector<std::pair<int64_t, double>> pieces) {
    check_base_scale(base_scale);
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<int64_t> idx;
    std::vector<double> val;
    idx.reserve(pieces.size());
    val.reserve(pieces.size());
    for (const auto& [i, v] : pieces) {
        if (!idx.empty() && idx.back() == i)
            throw std::invalid_argument("duplicate piece index " + std::to_string(i));
        check_interval(DyadicInterval{base_scale, i});
        if (v == 0.0) continue;
        idx.push_back(i);
        val.push_back(v);
    }
    return from_sorted(base_scale, std::move(idx), std::move(val));
}

StepFunction StepFunction::from_sorted(int32_t base_scale, std::vector<int64_t> idx,
                                       std::vector<double> val) {
    check_base_scale(base_scale);
    StepFunction g;
    g.base_scale_ = base_scale;
    g.idx_ = std::move(idx);
    g.val_ = std::move(val);
    return g;
}

double StepFunction::evaluate(const DyadicPoint& x) const {
    if (idx_.empty()) return 0.0;
    DyadicInterval leaf = leaf_containing(x, base_scale_);
    auto it = std::lower_bound(idx_.begin(), idx_.end(), leaf.index);
    if (it == idx_.end() || *it != leaf.index) return 0.0;
    return val_[static_cast<std::size_t>(it - idx_.begin())];
}

double StepFunction::evaluate(double x) const { return evaluate(DyadicPoint::from_double(x)); }

double StepFunction::integral() const {
    return std::exp2(static_cast<double>(base_scale_)) * kernels::sum(val_);
}

StepFunction StepFunction::refined_to(int32_t finer_scale) const {
    check_base_scale(finer_scale);
    if (finer_scale > base_scale_)
        throw std::invalid_argument("refined_to expects a scale at or below the base scale");
    int32_t d = base_scale_ - finer_scale;
    if (d >= 63 || piece_count() << d > PIECE_LIMIT)
        throw std::length_error("refinement would exceed the piece limit");
    std::vector<int64_t> idx;
    std::vector<double> val;
    idx.reserve(piece_count() << d);
    val.reserve(piece_count() << d);
    const int64_t factor = int64_t(1) << d;
    for (std::size_t p = 0; p < idx_.size(); ++p) {
        int64_t start = idx_[p] * factor;
        for (int64_t j = 0; j < factor; ++j) {
            idx.push_back(start + j);
            val.push_back(val_[p]);
        }
    }
    return from_sorted(finer_scale, std::move(idx), std::move(val));
}

StepFunction multiply(const StepFunction& a, const StepFunction& b) {
    const int32_t m = std::min(a.base_scale(), b.base_scale());
    std::vector<int64_t> idx;
    std::vector<double> val;

    if (a.base_scale() == b.base_scale()) {
        // Fast path: identical grids and identical supports (e.g. squaring).
        if (a.indices() == b.indices()) {
            idx = a.indices();
            val.resize(idx.size());
            kernels::multiply(a.values(), b.values(), val);
        } else {
            std::size_t ia = 0, ib = 0;
            while (ia < a.indices().size() && ib < b.indices().size()) {
                int64_t da = a.indices()[ia], db = b.indices()[ib];
                if (da < db)
                    ++ia;
                else if (db < da)
                    ++ib;
                else {
                    double v = a.values()[ia] * b.values()[ib];
                    if (v != 0.0) {
                        idx.push_back(da);
                        val.push_back(v);
                    }
                    ++ia;
                    ++ib;
                }
            }
        }
    } else {
        // One side is already at the common scale; look its partner's
        // coarse piece up while walking the fine one (both sorted).
        const StepFunction& fine = a.base_scale() == m ? a : b;
        const StepFunction& coarse = a.base_scale() == m ? b : a;
        const int32_t d = coarse.base_scale() - m;
        std::size_t ic = 0;
        for (std::size_t i = 0; i < fine.indices().size(); ++i) {
            int64_t ci = fine.indices()[i] >> d;
            while (ic < coarse.indices().size() && coarse.indices()[ic] < ci) ++ic;
            if (ic == coarse.indices().size()) break;
            if (coarse.indices()[ic] != ci) continue;
            double v = fine.values()[i] * coarse.values()[ic];
            if (v != 0.0) {
                idx.push_back(fine.indices()[i]);
                val.push_back(v);
            }
        }
    }

    // Drop exact zeros produced by the fast path.
    if (!val.empty()) {
        std::size_t out = 0;
        for (std::size_t i = 0; i < val.size(); ++i) {
            if (val[i] == 0.0) continue;
            idx[out] = idx[i];
            val[out] = val[i];
            ++out;
        }
        idx.resize(out);
        val.resize(out);
    }
    return StepFunction::from_sorted(m, std::move(idx), std::move(val));
}

namespace {

StepFunction combine(const StepFunction& a, const StepFunction& b, double sign_b) {
    const int32_t m = std::min(a.base_scale(), b.base_scale());
    StepFunction ar = a.base_scale() == m ? a : a.refined_to(m);
    StepFunction br = b.base_scale() == m ? b : b.refined_to(m);
    std::vector<int64_t> idx;
    std::vector<double> val;
    std::size_t ia = 0, ib = 0;
    auto push = [&](int64_t i, double v) {
        if (v != 0.0) {
            idx.push_back(i);
            val.push_back(v);
        }
    };
    while (ia < ar.indices().size() || ib < br.indices().size()) {
        if (ib == br.indices().size() ||
            (ia < ar.indices().size() && ar.indices()[ia] < br.indices()[ib])) {
            push(ar.indices()[ia], ar.values()[ia]);
            ++ia;
        } else if (ia == ar.indices().size() || br.indices()[ib] < ar.indices()[ia]) {
            push(br.indices()[ib], sign_b * br.values()[ib]);
            ++ib;
        } else {
            push(ar.indices()[ia], ar.values()[ia] + sign_b * br.values()[ib]);
            ++ia;
            ++ib;
        }
    }
    return StepFunction::from_sorted(m, std::move(idx), std::move(val));
}

} // namespace

StepFunction add(const StepFunction& a, const StepFunction& b) { return combine(a, b, 1.0); }
StepFunction subtract(const StepFunction& a, const StepFunction& b) { return combine(a, b, -1.0); }

TreeHull tree_hulls(const StepFunction& g) {
    TreeHull h;
    if (g.empty()) return h;
    const auto& idx = g.indices();
    const auto& val = g.values();
    // Pieces with negative indices form the negative-axis tree; the split
    // point in the sorted index array separates the two trees.
    std::size_t split = static_cast<std::size_t>(
        std::lower_bound(idx.begin(), idx.end(), int64_t(0)) - idx.begin());
    auto build = [&](std::size_t lo, std::size_t hi) -> std::optional<TreeHull::Tree> {
        if (lo == hi) return std::nullopt;
        DyadicInterval first{g.base_scale(), idx[lo]};
        DyadicInterval last{g.base_scale(), idx[hi - 1]};
        TreeHull::Tree t;
        t.hull = join(first, last);
        t.integral = std::exp2(static_cast<double>(g.base_scale())) *
                     kernels::sum(std::span<const double>(val.data() + lo, hi - lo));
        return t;
    };
    h.negative = build(0, split);
    h.positive = build(split, idx.size());
    return h;
}

} // namespace dyadic
