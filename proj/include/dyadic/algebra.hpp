#pragma once

#include "dyadic/haar_series.hpp"
#include "dyadic/norms.hpp"
#include "dyadic/step_function.hpp"

#include <map>

namespace dyadic {

// (f², h_K) = Σ_{I⊊K} (f,h_I)² h_K(I) + 2 (f,h_K) ⟨f⟩_K, split into its two
// parts over every K that can carry a nonzero value inside the hulls (stored
// intervals and their ancestors up to the per-tree hull), plus the per-tree
// integrals of f² (Parseval within each tree); the integrals determine the
// above-hull coefficients analytically.
struct ProductDecomposition {
    std::map<DyadicInterval, double> square_series_part;
    std::map<DyadicInterval, double> average_part;
    double negative_tree_integral = 0.0;
    double positive_tree_integral = 0.0;
};

double square_haar_coefficient(const HaarSeries& f, const DyadicInterval& K);
ProductDecomposition product_decomposition(const HaarSeries& f);

// (fg, h_K) by polarization: ½[((f+g)², h_K) − (f², h_K) − (g², h_K)].
double product_haar_coefficient(const HaarSeries& f, const HaarSeries& g,
                                const DyadicInterval& K);

struct SquareNormResult {
    double hs_norm_sq = 0.0;
    NormReport report;                    // norms of f², step route
    double max_crosscheck_residual = 0.0; // scaled by 1/(1 + |coefficient|)
};

// ‖f²‖²_{H^s} through the product pipeline. Every in-hull Haar coefficient
// of the product is cross-checked against the coefficient formula;
// disagreement beyond 1e-10 (scaled) throws std::logic_error.
SquareNormResult square_hs_norm(const HaarSeries& f, double s);

struct LocalSquareEstimate {
    double lhs = 0.0;        // Σ_{J⊆I} |J|^{-2s} (f²,h_J)²
    double rhs_factor = 0.0; // |I|^{2s−1} · Ḣ^s(f)² · Σ_{J⊆I} |J|^{-2s} (f,h_J)²
};
// Only for 1/2 < s < 1: the geometric sums behind the local estimate need
// 2s − 1 > 0.
LocalSquareEstimate local_square_estimate(const HaarSeries& f, double s,
                                          const DyadicInterval& I);

} // namespace dyadic
