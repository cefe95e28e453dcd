#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace dyadic {

// Scales are clamped so that 2^k, endpoints n*2^k, and the normalizations
// |I|^(+-1/2) all stay exactly representable / finite in double precision.
inline constexpr int32_t K_MIN = -60;
inline constexpr int32_t K_MAX = 60;

// Requesting a scale outside [K_MIN, K_MAX] (or an index past the endpoint
// range) is a hard error, never a silent wrap.
class clamp_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// [index * 2^scale, (index+1) * 2^scale), half-open.
struct DyadicInterval {
    int32_t scale = 0;
    int64_t index = 0;

    // Lexicographic (scale, index): map iteration visits intervals in
    // ascending measure, which is the summation order used by the norms.
    friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

// Exact dyadic rational mantissa * 2^exponent; canonical form has odd or
// zero mantissa. Every finite double is exactly representable.
struct DyadicPoint {
    int64_t mantissa = 0;
    int32_t exponent = 0;

    static DyadicPoint from_parts(int64_t mantissa, int32_t exponent);
    static DyadicPoint from_double(double x);
    double to_double() const;

    friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
};

// Exact three-way comparison of a*2^ea vs b*2^eb.
int compare_scaled(int64_t a, int32_t ea, int64_t b, int32_t eb);
int compare(const DyadicPoint& a, const DyadicPoint& b);

void check_interval(const DyadicInterval& I);

double measure(const DyadicInterval& I);
DyadicPoint left_endpoint(const DyadicInterval& I);
DyadicPoint midpoint(const DyadicInterval& I);
DyadicPoint right_endpoint(const DyadicInterval& I);

DyadicInterval parent(const DyadicInterval& I);
std::pair<DyadicInterval, DyadicInterval> children(const DyadicInterval& I);
DyadicInterval left_child(const DyadicInterval& I);
DyadicInterval right_child(const DyadicInterval& I);
DyadicInterval ancestor(const DyadicInterval& I, int64_t j);

enum class Relation { Disjoint, Equal, IContainsJ, JContainsI };

bool contains(const DyadicInterval& I, const DyadicInterval& J);
Relation relation(const DyadicInterval& I, const DyadicInterval& J);

bool contains_point(const DyadicInterval& I, const DyadicPoint& x);

// The scale-`scale` grid interval containing x.
DyadicInterval leaf_containing(const DyadicPoint& x, int32_t scale);

// Smallest dyadic interval containing both I and J (same axis tree).
DyadicInterval join(const DyadicInterval& I, const DyadicInterval& J);

// h_I = |I|^{-1/2} (1_{I_+} - 1_{I_-}), right half positive.
double haar_value_at(const DyadicInterval& I, const DyadicPoint& x);
double haar_value_at(const DyadicInterval& I, double x);

// Constant value of h_I on a strict dyadic subinterval J of I.
double haar_constant_on(const DyadicInterval& I, const DyadicInterval& J);

// |I|^{-1/2} = 2^{-scale/2}.
double haar_height(const DyadicInterval& I);

std::string to_string(const DyadicInterval& I);          // "k:n"
DyadicInterval interval_from_string(const std::string&); // parse "k:n"

} // namespace dyadic
