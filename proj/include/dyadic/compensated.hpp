#pragma once

#include <cmath>

namespace dyadic {

// Neumaier variant of compensated summation: the running error term also
// captures the case |addend| > |partial sum|, so long mixed-magnitude
// accumulations stay reproducible to ~1 ulp of the true sum.
class Accumulator {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace dyadic
