#pragma once

#include "dyadic/interval.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace dyadic {

// A step-conversion or product that would materialize more pieces than this
// is refused up front (clean error instead of an out-of-memory kill).
inline constexpr std::size_t PIECE_LIMIT = std::size_t(1) << 26;

// Compactly supported function constant on the scale-`base_scale` grid.
// Pieces are stored as parallel sorted (index, value) arrays with no zero
// values; everything off the listed pieces is 0. This is the exact dual
// representation for products and indicators, whose Haar expansions have
// infinitely many ancestor terms and therefore leave the finite Haar span.
class StepFunction {
public:
    StepFunction() = default;

    // Pieces need not be sorted; duplicate indices are rejected, zero values
    // dropped.
    static StepFunction from_pieces(int32_t base_scale,
                                    std::vector<std::pair<int64_t, double>> pieces);
    // Trusted path for internal construction: idx strictly increasing, values
    // nonzero.
    static StepFunction from_sorted(int32_t base_scale, std::vector<int64_t> idx,
                                    std::vector<double> val);

    int32_t base_scale() const { return base_scale_; }
    const std::vector<int64_t>& indices() const { return idx_; }
    const std::vector<double>& values() const { return val_; }
    std::size_t piece_count() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }

    double evaluate(const DyadicPoint& x) const;
    double evaluate(double x) const;

    double integral() const;

    // Same function on a finer grid (piece-count guarded).
    StepFunction refined_to(int32_t finer_scale) const;

    friend bool operator==(const StepFunction&, const StepFunction&) = default;

private:
    int32_t base_scale_ = 0;
    std::vector<int64_t> idx_;
    std::vector<double> val_;
};

StepFunction multiply(const StepFunction& a, const StepFunction& b);
StepFunction add(const StepFunction& a, const StepFunction& b);
StepFunction subtract(const StepFunction& a, const StepFunction& b);

// Smallest per-tree dyadic intervals containing the support, with the exact
// integral over each tree.
struct TreeHull {
    struct Tree {
        DyadicInterval hull;
        double integral = 0.0;
    };
    std::optional<Tree> negative;
    std::optional<Tree> positive;
};
TreeHull tree_hulls(const StepFunction& g);

} // namespace dyadic
