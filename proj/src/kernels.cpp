#include "dyadic/kernels.hpp"

#include "dyadic/compensated.hpp"

#include <cassert>
#include <cstdlib>
#include <cstring>

namespace dyadic::kernels {

namespace scalar {

double sum(std::span<const double> v) {
    Accumulator acc;
    for (double x : v) acc.add(x);
    return acc.value();
}

double sum_squares(std::span<const double> v) {
    Accumulator acc;
    for (double x : v) acc.add(x * x);
    return acc.value();
}

double weighted_sum_squares(std::span<const double> w, std::span<const double> v) {
    assert(w.size() == v.size());
    Accumulator acc;
    for (size_t i = 0; i < v.size(); ++i) acc.add(w[i] * v[i] * v[i]);
    return acc.value();
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    Accumulator acc;
    for (size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
    return acc.value();
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        double a = std::abs(x);
        if (a > m) m = a;
    }
    return m;
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

} // namespace scalar

#if DYADIC_HAVE_AVX2

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#endif // DYADIC_HAVE_AVX2

namespace {

bool resolve_avx2() {
#if DYADIC_HAVE_AVX2
    const char* env = std::getenv("DYADIC_KERNEL");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return false;
        if (std::strcmp(env, "avx2") == 0) return avx2_available();
    }
    return avx2_available();
#else
    return false;
#endif
}

bool use_avx2() {
    static const bool enabled = resolve_avx2();
    return enabled;
}

} // namespace

std::string backend_name() { return use_avx2() ? "avx2" : "scalar"; }

double sum(std::span<const double> v) {
#if DYADIC_HAVE_AVX2
    if (use_avx2()) return avx2::sum(v);
#endif
    return scalar::sum(v);
}

double sum_squares(std::span<const double> v) {
#if DYADIC_HAVE_AVX2
    if (use_avx2()) return avx2::sum_squares(v);
#endif
    return scalar::sum_squares(v);
}

double weighted_sum_squares(std::span<const double> w, std::span<const double> v) {
#if DYADIC_HAVE_AVX2
    if (use_avx2()) return avx2::weighted_sum_squares(w, v);
#endif
    return scalar::weighted_sum_squares(w, v);
}

double dot(std::span<const double> a, std::span<const double> b) {
#if DYADIC_HAVE_AVX2
    if (use_avx2()) return avx2::dot(a, b);
#endif
    return scalar::dot(a, b);
}

double max_abs(std::span<const double> v) {
#if DYADIC_HAVE_AVX2
    if (use_avx2()) return avx2::max_abs(v);
#endif
    return scalar::max_abs(v);
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
#if DYADIC_HAVE_AVX2
    if (use_avx2()) {
        avx2::multiply(a, b, out);
        return;
    }
#endif
    scalar::multiply(a, b, out);
}

} // namespace dyadic::kernels
