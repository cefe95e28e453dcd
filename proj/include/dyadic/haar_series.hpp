#pragma once

#include "dyadic/interval.hpp"

#include <cstddef>
#include <map>
#include <optional>

namespace dyadic {

// Finite Haar expansion f = sum_I (f, h_I) h_I. Canonical form stores no
// zero coefficients; map order is (scale, index), i.e. ascending measure,
// which is also the accumulation order used for norm sums.
class HaarSeries {
public:
    using Map = std::map<DyadicInterval, double>;

    HaarSeries() = default;
    explicit HaarSeries(Map coefficients);

    double coeff(const DyadicInterval& I) const;
    void set_coeff(const DyadicInterval& I, double v);
    void add_coeff(const DyadicInterval& I, double v);

    const Map& coefficients() const { return map_; }
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }

    // Smallest stored scale (finest resolution), if any.
    std::optional<int32_t> min_scale() const;

    double evaluate(const DyadicPoint& x) const;
    double evaluate(double x) const;

    HaarSeries& operator+=(const HaarSeries& other);
    HaarSeries& operator-=(const HaarSeries& other);
    HaarSeries& operator*=(double t);
    friend HaarSeries operator+(HaarSeries a, const HaarSeries& b) { return a += b; }
    friend HaarSeries operator-(HaarSeries a, const HaarSeries& b) { return a -= b; }
    friend HaarSeries operator*(HaarSeries a, double t) { return a *= t; }
    friend HaarSeries operator*(double t, HaarSeries a) { return a *= t; }

    friend bool operator==(const HaarSeries&, const HaarSeries&) = default;

private:
    Map map_;
};

// Per-axis-tree hulls of the stored coefficient intervals: the negative and
// positive half-axes have no common dyadic ancestor, so hull bookkeeping is
// always per tree.
struct SeriesHulls {
    std::optional<DyadicInterval> negative;
    std::optional<DyadicInterval> positive;
};
SeriesHulls series_hulls(const HaarSeries& f);

} // namespace dyadic
