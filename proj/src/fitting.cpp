#include "dyadic/fitting.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dyadic {

namespace {

double basis_value(GrowthBasis basis, double p, double n) {
    return basis == GrowthBasis::Exp2InN ? std::exp2(p * n) : std::pow(n, p);
}

struct LinearFit {
    double offset = 0.0;
    double scale = 0.0;
    double sse = 0.0;
};

// For a fixed exponent, solve the 2x2 normal equations for (offset, scale).
LinearFit solve_linear(std::span<const double> n, std::span<const double> y, GrowthBasis basis,
                       double p) {
    const size_t m = n.size();
    double sb = 0.0, sbb = 0.0, sy = 0.0, sby = 0.0;
    std::vector<double> b(m);
    for (size_t i = 0; i < m; ++i) {
        b[i] = basis_value(basis, p, n[i]);
        sb += b[i];
        sbb += b[i] * b[i];
        sy += y[i];
        sby += b[i] * y[i];
    }
    const double mm = double(m);
    const double det = mm * sbb - sb * sb;
    LinearFit fit;
    if (det != 0.0) {
        fit.offset = (sbb * sy - sb * sby) / det;
        fit.scale = (mm * sby - sb * sy) / det;
    }
    for (size_t i = 0; i < m; ++i) {
        const double r = y[i] - (fit.offset + fit.scale * b[i]);
        fit.sse += r * r;
    }
    return fit;
}

struct PointFit {
    double exponent;
    LinearFit linear;
};

PointFit fit_exponent(std::span<const double> n, std::span<const double> y, GrowthBasis basis) {
    // Golden-section search for the exponent minimizing the SSE.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.01, hi = 1.5;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = solve_linear(n, y, basis, x1).sse;
    double f2 = solve_linear(n, y, basis, x2).sse;
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = solve_linear(n, y, basis, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = solve_linear(n, y, basis, x2).sse;
        }
    }
    const double p = 0.5 * (lo + hi);
    return {p, solve_linear(n, y, basis, p)};
}

} // namespace

GrowthFit fit_growth(std::span<const double> n, std::span<const double> y, GrowthBasis basis) {
    if (n.size() != y.size()) throw std::invalid_argument("fit_growth: size mismatch");
    if (n.size() < 3) throw std::invalid_argument("fit_growth: needs at least 3 points");

    const PointFit full = fit_exponent(n, y, basis);
    GrowthFit out;
    out.exponent = full.exponent;
    out.offset = full.linear.offset;
    out.scale = full.linear.scale;
    out.band_lo = full.exponent;
    out.band_hi = full.exponent;

    if (n.size() >= 4) {
        std::vector<double> nn(n.size() - 1), yy(n.size() - 1);
        for (size_t skip = 0; skip < n.size(); ++skip) {
            for (size_t i = 0, j = 0; i < n.size(); ++i) {
                if (i == skip) continue;
                nn[j] = n[i];
                yy[j] = y[i];
                ++j;
            }
            const double p = fit_exponent(nn, yy, basis).exponent;
            out.band_lo = std::min(out.band_lo, p);
            out.band_hi = std::max(out.band_hi, p);
        }
    }
    return out;
}

} // namespace dyadic
