#include "dyadic/haar_series.hpp"

#include "dyadic/compensated.hpp"

namespace dyadic {

HaarSeries::HaarSeries(Map coefficients) : map_(std::move(coefficients)) {
    for (auto it = map_.begin(); it != map_.end();) {
        check_interval(it->first);
        if (it->second == 0.0)
            it = map_.erase(it);
        else
            ++it;
    }
}

double HaarSeries::coeff(const DyadicInterval& I) const {
    auto it = map_.find(I);
    return it == map_.end() ? 0.0 : it->second;
}

void HaarSeries::set_coeff(const DyadicInterval& I, double v) {
    check_interval(I);
    if (v == 0.0)
        map_.erase(I);
    else
        map_[I] = v;
}

void HaarSeries::add_coeff(const DyadicInterval& I, double v) {
    set_coeff(I, coeff(I) + v);
}

std::optional<int32_t> HaarSeries::min_scale() const {
    if (map_.empty()) return std::nullopt;
    return map_.begin()->first.scale; // map is ordered by (scale, index)
}

double HaarSeries::evaluate(const DyadicPoint& x) const {
    Accumulator acc;
    for (const auto& [I, c] : map_) acc.add(c * haar_value_at(I, x));
    return acc.value();
}

double HaarSeries::evaluate(double x) const { return evaluate(DyadicPoint::from_double(x)); }

HaarSeries& HaarSeries::operator+=(const HaarSeries& other) {
    for (const auto& [I, c] : other.map_) add_coeff(I, c);
    return *this;
}

HaarSeries& HaarSeries::operator-=(const HaarSeries& other) {
    for (const auto& [I, c] : other.map_) add_coeff(I, -c);
    return *this;
}

HaarSeries& HaarSeries::operator*=(double t) {
    if (t == 0.0) {
        map_.clear();
        return *this;
    }
    for (auto& [I, c] : map_) c *= t;
    return *this;
}

SeriesHulls series_hulls(const HaarSeries& f) {
    SeriesHulls h;
    for (const auto& [I, c] : f.coefficients()) {
        (void)c;
        auto& slot = I.index < 0 ? h.negative : h.positive;
        slot = slot ? join(*slot, I) : I;
    }
    return h;
}

} // namespace dyadic
