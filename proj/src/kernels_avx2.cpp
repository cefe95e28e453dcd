// AVX2+FMA kernel variants.  This translation unit is the only one compiled
// with -mavx2 -mfma; callers reach it through the runtime dispatcher in
// kernels.cpp, so nothing here runs on CPUs without AVX2 support.

#include "dyadic/kernels.hpp"

#if DYADIC_HAVE_AVX2

#include "dyadic/compensated.hpp"

#include <cassert>
#include <immintrin.h>

namespace dyadic::kernels::avx2 {

namespace {

// Per-lane Neumaier state; combined with a compensated horizontal fold at
// the end so the result tracks the scalar reference to ~1 ulp.
struct VecAcc {
    __m256d s = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();

    inline void add(__m256d v) {
        const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
        __m256d t = _mm256_add_pd(s, v);
        __m256d big_s = _mm256_cmp_pd(_mm256_and_pd(s, absmask), _mm256_and_pd(v, absmask), _CMP_GE_OQ);
        __m256d e1 = _mm256_add_pd(_mm256_sub_pd(s, t), v); // |s| >= |v|
        __m256d e2 = _mm256_add_pd(_mm256_sub_pd(v, t), s);
        c = _mm256_add_pd(c, _mm256_blendv_pd(e2, e1, big_s));
        s = t;
    }

    inline double fold(Accumulator tail) const {
        alignas(32) double ls[4], lc[4];
        _mm256_store_pd(ls, s);
        _mm256_store_pd(lc, c);
        for (double x : ls) tail.add(x);
        for (double x : lc) tail.add(x);
        return tail.value();
    }
};

} // namespace

double sum(std::span<const double> v) {
    VecAcc acc;
    size_t i = 0;
    for (; i + 4 <= v.size(); i += 4) acc.add(_mm256_loadu_pd(v.data() + i));
    Accumulator tail;
    for (; i < v.size(); ++i) tail.add(v[i]);
    return acc.fold(tail);
}

double sum_squares(std::span<const double> v) {
    VecAcc acc;
    size_t i = 0;
    for (; i + 4 <= v.size(); i += 4) {
        __m256d x = _mm256_loadu_pd(v.data() + i);
        acc.add(_mm256_mul_pd(x, x));
    }
    Accumulator tail;
    for (; i < v.size(); ++i) tail.add(v[i] * v[i]);
    return acc.fold(tail);
}

double weighted_sum_squares(std::span<const double> w, std::span<const double> v) {
    assert(w.size() == v.size());
    VecAcc acc;
    size_t i = 0;
    for (; i + 4 <= v.size(); i += 4) {
        __m256d x = _mm256_loadu_pd(v.data() + i);
        __m256d wi = _mm256_loadu_pd(w.data() + i);
        acc.add(_mm256_mul_pd(wi, _mm256_mul_pd(x, x)));
    }
    Accumulator tail;
    for (; i < v.size(); ++i) tail.add(w[i] * v[i] * v[i]);
    return acc.fold(tail);
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    VecAcc acc;
    size_t i = 0;
    for (; i + 4 <= a.size(); i += 4)
        acc.add(_mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
    Accumulator tail;
    for (; i < a.size(); ++i) tail.add(a[i] * b[i]);
    return acc.fold(tail);
}

double max_abs(std::span<const double> v) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d m = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= v.size(); i += 4)
        m = _mm256_max_pd(m, _mm256_and_pd(_mm256_loadu_pd(v.data() + i), absmask));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = 0.0;
    for (double x : lanes)
        if (x > r) r = x;
    for (; i < v.size(); ++i) {
        double a = std::abs(v[i]);
        if (a > r) r = a;
    }
    return r;
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    assert(a.size() == b.size() && a.size() == out.size());
    size_t i = 0;
    for (; i + 4 <= a.size(); i += 4)
        _mm256_storeu_pd(out.data() + i,
                         _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
    for (; i < a.size(); ++i) out[i] = a[i] * b[i];
}

} // namespace dyadic::kernels::avx2

#endif // DYADIC_HAVE_AVX2
