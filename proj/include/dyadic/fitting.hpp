#pragma once

#include <span>

namespace dyadic {

// Least-squares fit of y ≈ offset + scale · basis(exponent, n) with the
// exponent found by golden-section search. The offset term absorbs the
// convergent share of a partial sum, so the exponent measures the growth of
// the divergent share rather than of the total.
struct GrowthFit {
    double exponent = 0.0;
    double band_lo = 0.0; // jackknife (leave-one-out) envelope, including
    double band_hi = 0.0; // the full-sample fit
    double offset = 0.0;
    double scale = 0.0;
};

enum class GrowthBasis {
    Exp2InN, // basis(p, n) = 2^{p n}
    PowerInN // basis(p, n) = n^p
};

// Requires at least 3 points; the jackknife band needs at least 4 (with
// exactly 3 the band collapses to the point estimate).
GrowthFit fit_growth(std::span<const double> n, std::span<const double> y, GrowthBasis basis);

} // namespace dyadic
