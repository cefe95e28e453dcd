#pragma once

#include <stdexcept>

namespace dyadic::detail {

inline void check_s_open_unit(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("requires 0 < s < 1");
}

} // namespace dyadic::detail
