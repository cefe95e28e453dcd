#pragma once

#include <cstddef>
#include <span>
#include <string>

// Dense-array reduction kernels used by the step-function pipelines (norms,
// products, integral reductions), which routinely touch 2^25-element arrays.
// Every kernel has a scalar compensated reference implementation; on x86-64
// an AVX2+FMA variant is selected at runtime when the CPU supports it.
// The environment variable DYADIC_KERNEL={auto,scalar,avx2} overrides the
// dispatch (read once, at first use).

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define DYADIC_HAVE_AVX2 1
#else
#define DYADIC_HAVE_AVX2 0
#endif

namespace dyadic::kernels {

// Dispatched entry points.
double sum(std::span<const double> v);
double sum_squares(std::span<const double> v);
double weighted_sum_squares(std::span<const double> w, std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> v);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

// Name of the backend the dispatcher resolved to ("scalar" or "avx2").
std::string backend_name();

namespace scalar {
double sum(std::span<const double> v);
double sum_squares(std::span<const double> v);
double weighted_sum_squares(std::span<const double> w, std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> v);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
} // namespace scalar

#if DYADIC_HAVE_AVX2
bool avx2_available();
namespace avx2 {
double sum(std::span<const double> v);
double sum_squares(std::span<const double> v);
double weighted_sum_squares(std::span<const double> w, std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> v);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
} // namespace avx2
#endif

} // namespace dyadic::kernels
