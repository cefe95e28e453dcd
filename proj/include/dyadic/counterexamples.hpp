#pragma once

#include "dyadic/haar_series.hpp"
#include "dyadic/report.hpp"

#include <cstdint>
#include <vector>

namespace dyadic {

// Tower interval I^(k) = [-2^{-k}, 0): the k-fold right child of [-1, 0)
// for k > 0, its |k|-fold ancestor for k < 0. Requires |k| <= 60.
DyadicInterval tower_interval(int64_t k);

enum class Family { LowReg, Critical };

struct CounterexampleSpec {
    Family family = Family::LowReg;
    double s = 0.0;
    double alpha = 0.0;
    int64_t N = 1;
    // Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

// f_N = Σ_{k=0..N} 2^{-kα} h_{I^(k)}; needs N <= 59 (scale clamp).
HaarSeries lowreg_function(double alpha, int64_t N);
// f_N = Σ_{k=1..N} 2^{-k/2} k^{-α/2} h_{I^(k)}; needs N <= 59.
HaarSeries critical_function(double alpha, int64_t N);

// (f_N², h_{I^(n)}) for the low-regularity family, from the coefficient
// formula: 2^{n/2} Σ_{k>max(n,-1)}^{N} 2^{-2αk} + 2·2^{-nα} Σ_{m=0}^{n-1}
// 2^{-m(α-1/2)} (the second sum only for 0 <= n <= N).
double lowreg_square_coeff_closed(double alpha, int64_t n, int64_t N);

// Coefficient-space evaluations on the tower (exact, no step conversion);
// valid for N up to 4096, far beyond the scale clamp.
double lowreg_hs_norm_sq(double s, double alpha, int64_t N);
double lowreg_f2_seminorm_sq(double s, double alpha, int64_t N);
double critical_hs_norm_sq(double alpha, int64_t N);     // at s = 1/2
double critical_l2_sq(double alpha, int64_t N);
double critical_f2_seminorm_sq(double alpha, int64_t N); // Ḣ^{1/2}(f_N²)²

// Builds f_N for each N, measures the growth of Ḣ^s(f_N²)² with an
// offset-corrected fit, and checks the Cauchy/tail behaviour of ‖f_N‖_{H^s}.
// LowReg runs the full step-function product pipeline; Critical evaluates in
// coefficient space (its interesting N exceed the scale clamp).
ExperimentReport divergence_experiment(const CounterexampleSpec& spec,
                                       const std::vector<int64_t>& N_list);

} // namespace dyadic
