// Regenerates the committed calibration fixture.  The observed suprema are
// taken over a fixed-seed ensemble that is wider than anything the checks run
// against; the stored bound is sup * margin.
//
// Usage: calibrate [output-path]

#include "dyadic/algebra.hpp"
#include "dyadic/calibration.hpp"
#include "dyadic/embeddings.hpp"
#include "dyadic/haar_series.hpp"
#include "dyadic/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    using namespace dyadic;
    const std::string out = argc > 1 ? argv[1] : default_calibration_path();

    EnsembleSpec spec;
    spec.seed = 7;
    spec.count = 2000;

    Calibration cal;
    cal.margin = 1.5;

    std::vector<HaarSeries> samples;
    samples.reserve(std::size_t(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        HaarSeries f = make_sample(spec, uint64_t(i));
        if (!f.empty()) samples.push_back(std::move(f));
    }

    for (double s : {0.1, 0.25, 0.4}) {
        double sup = 0.0;
        for (const HaarSeries& f : samples) sup = std::max(sup, gns_ratio(f, s));
        cal.observed_sup[calibration_key("gns", s)] = sup;
        std::cout << calibration_key("gns", s) << " sup " << sup << '\n';
    }

    for (double s : {0.6, 0.75, 0.9}) {
        double sup = 0.0;
        for (const HaarSeries& f : samples) {
            const double denom = hs_norm(f, s);
            const SquareNormResult res = square_hs_norm(f, s);
            sup = std::max(sup, std::sqrt(res.hs_norm_sq) / (denom * denom));
        }
        cal.observed_sup[calibration_key("algebra", s)] = sup;
        std::cout << calibration_key("algebra", s) << " sup " << sup << '\n';
    }

    {
        const double s = 0.75;
        double sup = 0.0;
        for (const HaarSeries& f : samples) {
            const SeriesHulls hulls = series_hulls(f);
            for (const auto& hull : {hulls.negative, hulls.positive}) {
                if (!hull) continue;
                const LocalSquareEstimate est = local_square_estimate(f, s, *hull);
                if (est.rhs_factor > 0.0) sup = std::max(sup, est.lhs / est.rhs_factor);
            }
        }
        cal.observed_sup[calibration_key("algebra_local", s)] = sup;
        std::cout << calibration_key("algebra_local", s) << " sup " << sup << '\n';
    }

    save_calibration(cal, out);
    std::cout << "wrote " << out << '\n';
    return 0;
}
