#pragma once

#include "dyadic/calibration.hpp"
#include "dyadic/haar_series.hpp"
#include "dyadic/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dyadic {

enum class Distribution { Uniform, LacunaryTower, SingleInterval };

// Reproducible random-series ensemble: identical specs yield identical
// samples, individually addressable by index. The index range bounds the
// support window [index_lo, index_hi + 1) at scale 0; draws at other scales
// use the indices whose intervals fit in (or, at coarse scales, are the
// dyadic cells around) that window, which keeps step conversions of the
// samples at a bounded piece count.
struct EnsembleSpec {
    uint64_t seed = 1;
    int count = 100;
    int32_t scale_lo = -6;
    int32_t scale_hi = 6;
    int64_t index_lo = -8;
    int64_t index_hi = 7;
    int sparsity = 12;
    Distribution dist = Distribution::Uniform;
    double alpha = 0.35; // LacunaryTower coefficient decay
};

HaarSeries make_sample(const EnsembleSpec& spec, uint64_t index);

struct EmbeddingVerdict {
    std::string inequality;
    double ratio = 0.0;    // this sample's ratio (lhs over bound-at-constant-1)
    double constant = 0.0; // constant the inequality is checked with
    bool exact_constant = true;
    bool pass = false;
};

// |f(x)| <= ‖f‖_{L²} + (1−2^{1−2s})^{-1/2} ‖f‖_{Ḣ^s} on every piece;
// the constant is exact, so this is a hard assertion. Needs s > 1/2.
EmbeddingVerdict morrey_check(const HaarSeries& f, double s);

// bmo_norm(f) <= Ḣ^{1/2}-seminorm with constant 1 (hard assertion).
EmbeddingVerdict bmo_check(const HaarSeries& f);

// ‖f‖_{L^q} / ‖f‖_{Ḣ^s} at q = 2/(1−2s); the constant is implicit, so sup
// ratios are compared against the calibration fixture. Needs 0 < s < 1/2
// and f ≠ 0.
double gns_ratio(const HaarSeries& f, double s);

struct CheckRequest {
    std::string name; // "morrey", "bmo", "gns"
    double s = 0.5;   // ignored by "bmo"
};

// Runs every requested check over the ensemble; one row per (check, sample).
// Implicit-constant checks need a calibration entry for their key. Any
// failing sample's JSON is attached to the summary.
ExperimentReport run_ensemble(const EnsembleSpec& spec, const std::vector<CheckRequest>& checks,
                              const Calibration& cal);

} // namespace dyadic
