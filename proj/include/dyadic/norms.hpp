#pragma once

#include "dyadic/analysis.hpp"
#include "dyadic/haar_series.hpp"
#include "dyadic/step_function.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace dyadic {

double l2_norm(const HaarSeries& f);   // Parseval: (sum c^2)^{1/2}
double l2_norm(const StepFunction& g); // (sum v^2 · piece length)^{1/2}

// (sum_I |I|^{-2s} (f,h_I)^2)^{1/2}, 0 < s < 1.
double hs_seminorm(const HaarSeries& f, double s);
double hs_norm(const HaarSeries& f, double s); // (seminorm^2 + l2^2)^{1/2}

// Exact Ḣ^s seminorm squared of a step function: the in-hull part is summed
// from analyze coefficients; the coefficients above each tree hull H are
// ±|K|^{-1/2}·M, giving the closed tail
//   M^2 · |H|^{-2s-1} · 2^{-(2s+1)} / (1 - 2^{-(2s+1)})
// per tree.
struct StepSeminormParts {
    double finite_part = 0.0;
    double tail_closed_form = 0.0;
    double total() const { return finite_part + tail_closed_form; }
};
// `depth` governs only the internal validation of the closed tail against a
// truncated ancestor sum (plus its analytic remainder); a mismatch beyond
// rounding throws std::logic_error.
StepSeminormParts hs_seminorm_sq_of_step(const StepFunction& g, double s, int64_t depth = 50);

// Truncated ancestor sum used to validate the closed tail:
// M^2 · sum_{j=1..depth} |ancestor(H,j)|^{-2s-1}.
double ancestor_tail_truncated(const DyadicInterval& hull, double M, double s, int64_t depth);

// Q = ||f||_{L2}^2 + sum_{|I|<1} |I|^{-2s} (f,h_I)^2 satisfies
// (1/2)||f||_{H^s}^2 <= Q <= ||f||_{H^s}^2 (only small intervals matter).
std::pair<bool, bool> truncated_hs_bound(const HaarSeries& f, double s);

double lq_norm(const StepFunction& g, double q); // q >= 1
double linf_norm(const StepFunction& g);

// sup_I ((1/|I|) sum_{J ⊆ I} (f,h_J)^2)^{1/2} over the finite candidate
// set: stored intervals and their ancestors up to the per-tree hull. Above
// the hull the inner sum is frozen while 1/|I| keeps shrinking, so no
// higher candidate can attain the sup.
double bmo_norm(const HaarSeries& f);

// Step functions have nonzero mean in general, so their spectra extend
// above the support hulls; the candidate set gains the ancestor chains up
// to the scale clamp, where the inner sums grow by M²/|K| per step.
double bmo_norm(const StepFunction& g);

struct NormReport {
    double s = 0.0;
    double l2 = 0.0;
    double hs_seminorm = 0.0;
    double hs_norm = 0.0;
    double linf = 0.0;
    std::optional<double> lq; // at q = 2/(1-2s), subcritical s only
    double bmo = 0.0;
    // truncation metadata
    int32_t base_scale = 0;
    std::uint64_t piece_count = 0;
    int64_t tail_validation_depth = 0;
    double tail_closed_form = 0.0; // ancestor-tail share of the seminorm^2 (step route)
};

NormReport make_norm_report(const HaarSeries& f, double s);

} // namespace dyadic
