#pragma once

#include "dyadic/haar_series.hpp"
#include "dyadic/step_function.hpp"

#include <optional>

namespace dyadic {

// Exact step form of a finite Haar series. The base scale is one below the
// finest stored coefficient scale (a Haar function is only piecewise
// constant on the halves of its interval).
StepFunction to_step(const HaarSeries& f);

// All Haar coefficients of a step function inside (or at) each per-tree
// hull, plus the per-tree integrals M. Coefficients at K strictly above a
// hull are not stored: they are ±|K|^{-1/2}·M analytically, with the sign
// given by haar_constant_on(K, hull).
struct AnalyzeResult {
    HaarSeries series;
    TreeHull hulls;
};
AnalyzeResult analyze(const StepFunction& g);

// The analytic above-hull coefficient (valid for K strictly containing the
// hull of a tree with integral M).
double above_hull_coefficient(const DyadicInterval& K, const DyadicInterval& hull, double M);

// <f>_I. The Haar route sums over stored strict ancestors of I only; the
// step route integrates exactly.
double average(const HaarSeries& f, const DyadicInterval& I);
double average(const StepFunction& g, const DyadicInterval& I);

// <f>_I - <f>_{I^(k)} - sum_{I ⊊ J ⊆ I^(k)} (f,h_J) h_J(I); zero up to
// rounding for every finite series.
double telescope_residual(const HaarSeries& f, const DyadicInterval& I, int64_t k);

struct WeightedSum {
    double truncated = 0.0;
    double closed_form = 0.0;
};

// sum_{k=0..depth} sum_{J in D_k(I)} |J|^s 1_J(x)  vs  |I|^s 1_I(x)/(1-2^{-s}).
WeightedSum weighted_indicator_sum(const DyadicInterval& I, double s, const DyadicPoint& x,
                                   int64_t depth);
WeightedSum weighted_indicator_sum(const DyadicInterval& I, double s, double x, int64_t depth);

// sum_{J ⊊ I, depth generations} |J|^s h_I(J) 1_J(x)  vs  |I|^s h_I(x)/(2^s-1).
WeightedSum weighted_haar_sum(const DyadicInterval& I, double s, const DyadicPoint& x,
                              int64_t depth);
WeightedSum weighted_haar_sum(const DyadicInterval& I, double s, double x, int64_t depth);

} // namespace dyadic
