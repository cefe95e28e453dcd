#pragma once

#include "dyadic/analysis.hpp"
#include "dyadic/haar_series.hpp"
#include "dyadic/step_function.hpp"

namespace dyadic {

// s in (0,1) strictly; q = 2/(1-2s) is defined only below the critical
// exponent s = 1/2.
struct FractionalParameter {
    double s;
    explicit FractionalParameter(double s_);
    bool subcritical() const { return s < 0.5; }
    double q() const; // throws unless subcritical
};

// D^s f = sum |I|^{-s} (f,h_I) h_I  (coefficient multiplier 2^{-s·scale}).
HaarSeries frac_derivative(const HaarSeries& f, double s);

// Inverse coefficient scaling |I|^{+s}; plumbing for round trips.
HaarSeries frac_antiderivative(const HaarSeries& f, double s);

// Closed form of T_s on the finite Haar span:
// (2^s-1)^{-1} sum_J |J|^s (g,h_J) h_J.
HaarSeries t_s_closed(const HaarSeries& g, double s);

// Defining series sum_I |I|^s <g>_I 1_I, truncated `depth` levels below the
// finest stored coefficient scale. Ancestor directions are automatically
// finite: averages vanish above the per-tree hulls.
StepFunction t_s_truncated(const HaarSeries& g, double s, int64_t depth);

// sup |(2^s-1)·T_s D^s f  -  f|.
double reconstruction_residual(const HaarSeries& f, double s);

} // namespace dyadic
