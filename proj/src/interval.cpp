#include "dyadic/interval.hpp"

#include <cmath>
#include <charconv>
#include <limits>

namespace dyadic {

namespace {

// Floor division by 2^shift for any shift >= 0 (arithmetic shift semantics,
// well defined for shift past the word size too).
int64_t floor_shift(int64_t v, int64_t shift) {
    if (shift >= 63) return v < 0 ? -1 : 0;
    return v >> shift;
}

// Endpoint mantissas live in [-2^62, 2^62]; enforced by check_interval.
constexpr int64_t INDEX_LIMIT = int64_t(1) << 62;

} // namespace

void check_interval(const DyadicInterval& I) {
    if (I.scale < K_MIN || I.scale > K_MAX)
        throw clamp_error("interval scale " + std::to_string(I.scale) +
                          " outside clamp [" + std::to_string(K_MIN) + ", " +
                          std::to_string(K_MAX) + "]");
    int64_t limit = INDEX_LIMIT;
    if (I.scale > 0) limit >>= I.scale; // keep n*2^k within the endpoint range
    if (I.index > limit || I.index < -limit || I.index == std::numeric_limits<int64_t>::min())
        throw clamp_error("interval index " + std::to_string(I.index) +
                          " out of range at scale " + std::to_string(I.scale));
}

DyadicPoint DyadicPoint::from_parts(int64_t mantissa, int32_t exponent) {
    if (mantissa == 0) return {0, 0};
    while ((mantissa & 1) == 0) {
        mantissa >>= 1;
        ++exponent;
    }
    return {mantissa, exponent};
}

DyadicPoint DyadicPoint::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite point");
    if (x == 0.0) return {0, 0};
    int e = 0;
    double m = std::frexp(x, &e); // |m| in [0.5, 1), x = m * 2^e
    auto mant = static_cast<int64_t>(std::ldexp(m, 53));
    return from_parts(mant, e - 53);
}

double DyadicPoint::to_double() const {
    return std::ldexp(static_cast<double>(mantissa), exponent);
}

int compare_scaled(int64_t a, int32_t ea, int64_t b, int32_t eb) {
    if (a == 0 && b == 0) return 0;
    if (a == 0) return b > 0 ? -1 : 1;
    if (b == 0) return a > 0 ? 1 : -1;
    if ((a > 0) != (b > 0)) return a > 0 ? 1 : -1;
    // Same nonzero sign. Align to the smaller exponent; a shift of 64+ bits
    // cannot change the outcome because |mantissa| < 2^63.
    __int128 va = a;
    __int128 vb = b;
    int64_t d = int64_t(ea) - int64_t(eb);
    if (d > 0)
        va = d >= 64 ? (a > 0 ? (__int128(1) << 126) : -(__int128(1) << 126)) : (va << d);
    else if (d < 0)
        vb = -d >= 64 ? (b > 0 ? (__int128(1) << 126) : -(__int128(1) << 126)) : (vb << -d);
    if (va < vb) return -1;
    if (va > vb) return 1;
    return 0;
}

int compare(const DyadicPoint& a, const DyadicPoint& b) {
    return compare_scaled(a.mantissa, a.exponent, b.mantissa, b.exponent);
}

double measure(const DyadicInterval& I) {
    check_interval(I);
    return std::exp2(static_cast<double>(I.scale));
}

DyadicPoint left_endpoint(const DyadicInterval& I) {
    return DyadicPoint::from_parts(I.index, I.scale);
}

DyadicPoint midpoint(const DyadicInterval& I) {
    return DyadicPoint::from_parts(2 * I.index + 1, I.scale - 1);
}

DyadicPoint right_endpoint(const DyadicInterval& I) {
    return DyadicPoint::from_parts(I.index + 1, I.scale);
}

DyadicInterval parent(const DyadicInterval& I) {
    check_interval(I);
    DyadicInterval p{I.scale + 1, I.index >> 1};
    check_interval(p);
    return p;
}

std::pair<DyadicInterval, DyadicInterval> children(const DyadicInterval& I) {
    check_interval(I);
    DyadicInterval l{I.scale - 1, 2 * I.index};
    DyadicInterval r{I.scale - 1, 2 * I.index + 1};
    check_interval(l);
    return {l, r};
}

DyadicInterval left_child(const DyadicInterval& I) { return children(I).first; }

DyadicInterval right_child(const DyadicInterval& I) { return children(I).second; }

DyadicInterval ancestor(const DyadicInterval& I, int64_t j) {
    if (j < 0) throw std::invalid_argument("ancestor level must be nonnegative");
    DyadicInterval a = I;
    check_interval(a);
    for (int64_t i = 0; i < j; ++i) a = parent(a);
    return a;
}

bool contains(const DyadicInterval& I, const DyadicInterval& J) {
    if (I.scale < J.scale) return false;
    return floor_shift(J.index, int64_t(I.scale) - J.scale) == I.index;
}

Relation relation(const DyadicInterval& I, const DyadicInterval& J) {
    if (I == J) return Relation::Equal;
    if (contains(I, J)) return Relation::IContainsJ;
    if (contains(J, I)) return Relation::JContainsI;
    return Relation::Disjoint;
}

bool contains_point(const DyadicInterval& I, const DyadicPoint& x) {
    return compare_scaled(x.mantissa, x.exponent, I.index, I.scale) >= 0 &&
           compare_scaled(x.mantissa, x.exponent, I.index + 1, I.scale) < 0;
}

DyadicInterval leaf_containing(const DyadicPoint& x, int32_t scale) {
    if (scale < K_MIN || scale > K_MAX) throw clamp_error("leaf scale outside clamp");
    int64_t d = int64_t(x.exponent) - scale;
    int64_t idx;
    if (d >= 0) {
        if (d > 62) throw clamp_error("point too large for the requested leaf scale");
        __int128 wide = __int128(x.mantissa) << d;
        if (wide > INDEX_LIMIT || wide < -__int128(INDEX_LIMIT))
            throw clamp_error("point too large for the requested leaf scale");
        idx = static_cast<int64_t>(wide);
    } else {
        idx = floor_shift(x.mantissa, -d);
    }
    DyadicInterval I{scale, idx};
    check_interval(I);
    return I;
}

DyadicInterval join(const DyadicInterval& I, const DyadicInterval& J) {
    check_interval(I);
    check_interval(J);
    DyadicInterval a = I.scale >= J.scale ? I : J;
    const DyadicInterval& b = I.scale >= J.scale ? J : I;
    while (!contains(a, b)) a = parent(a); // throws clamp_error if no common ancestor fits
    return a;
}

double haar_height(const DyadicInterval& I) {
    return std::exp2(-0.5 * static_cast<double>(I.scale));
}

double haar_value_at(const DyadicInterval& I, const DyadicPoint& x) {
    check_interval(I);
    if (compare_scaled(x.mantissa, x.exponent, I.index, I.scale) < 0) return 0.0;
    if (compare_scaled(x.mantissa, x.exponent, I.index + 1, I.scale) >= 0) return 0.0;
    // Inside: sign decided by the midpoint (2n+1) * 2^(scale-1).
    int c = compare_scaled(x.mantissa, x.exponent, 2 * I.index + 1, I.scale - 1);
    return c < 0 ? -haar_height(I) : haar_height(I);
}

double haar_value_at(const DyadicInterval& I, double x) {
    return haar_value_at(I, DyadicPoint::from_double(x));
}

double haar_constant_on(const DyadicInterval& I, const DyadicInterval& J) {
    check_interval(I);
    check_interval(J);
    if (I == J || !contains(I, J))
        throw std::invalid_argument("haar_constant_on requires a strict dyadic subinterval");
    int64_t shift = int64_t(I.scale) - J.scale; // >= 1
    int64_t half = floor_shift(J.index, shift - 1);
    return (half & 1) ? haar_height(I) : -haar_height(I);
}

std::string to_string(const DyadicInterval& I) {
    return std::to_string(I.scale) + ":" + std::to_string(I.index);
}

DyadicInterval interval_from_string(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos) throw std::invalid_argument("expected \"scale:index\", got " + s);
    DyadicInterval I;
    auto r1 = std::from_chars(s.data(), s.data() + pos, I.scale);
    auto r2 = std::from_chars(s.data() + pos + 1, s.data() + s.size(), I.index);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r1.ptr != s.data() + pos || r2.ptr != s.data() + s.size())
        throw std::invalid_argument("expected \"scale:index\", got " + s);
    check_interval(I);
    return I;
}

} // namespace dyadic
