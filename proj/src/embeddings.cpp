#include "dyadic/embeddings.hpp"

#include "dyadic/analysis.hpp"
#include "dyadic/counterexamples.hpp"
#include "dyadic/norms.hpp"
#include "dyadic/operators.hpp"
#include "dyadic/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace dyadic {

namespace {

constexpr double HARD_SLACK = 1e-9; // rounding slack on exact-constant assertions

void validate_spec(const EnsembleSpec& spec) {
    if (spec.count < 0) throw std::invalid_argument("ensemble count must be >= 0");
    if (spec.sparsity < 1) throw std::invalid_argument("ensemble sparsity must be >= 1");
    if (spec.scale_lo > spec.scale_hi || spec.scale_lo < K_MIN || spec.scale_hi > K_MAX)
        throw std::invalid_argument("ensemble scale range outside the clamp");
    if (spec.index_lo > spec.index_hi)
        throw std::invalid_argument("ensemble index range is empty");
    const int64_t widest = std::max(std::abs(spec.index_lo), std::abs(spec.index_hi) + 1);
    if (spec.scale_lo < 0 && widest > (INT64_MAX >> 2) >> -spec.scale_lo)
        throw std::invalid_argument("ensemble index window too wide for the scale range");
}

// Valid indices at scale k for the spatial window [index_lo, index_hi + 1):
// intervals inside the window at fine scales, the two cells around the
// origin once the window is smaller than a cell.
std::pair<int64_t, int64_t> index_range_at(const EnsembleSpec& spec, int32_t k) {
    const int64_t w_lo = spec.index_lo, w_hi = spec.index_hi + 1;
    if (k <= 0) return {w_lo * (int64_t(1) << -k), w_hi * (int64_t(1) << -k) - 1};
    const int64_t size = int64_t(1) << k;
    int64_t lo = w_lo / size + ((w_lo % size != 0 && w_lo > 0) ? 1 : 0);
    int64_t hi = w_hi / size - ((w_hi % size != 0 && w_hi < 0) ? 1 : 0) - 1;
    if (hi < lo) return {-1, 0};
    return {lo, hi};
}

DyadicInterval draw_interval(const EnsembleSpec& spec, Rng& rng) {
    const auto scale = int32_t(rng.uniform_int(spec.scale_lo, spec.scale_hi));
    const auto [lo, hi] = index_range_at(spec, scale);
    return DyadicInterval{scale, rng.uniform_int(lo, hi)};
}

} // namespace

HaarSeries make_sample(const EnsembleSpec& spec, uint64_t index) {
    validate_spec(spec);
    Rng rng(sample_seed(spec.seed, index));
    HaarSeries f;
    switch (spec.dist) {
    case Distribution::Uniform:
        for (int t = 0; t < spec.sparsity; ++t) {
            const DyadicInterval I = draw_interval(spec, rng);
            const double value = rng.uniform(-1.0, 1.0);
            if (value != 0.0) f.add_coeff(I, value);
        }
        break;
    case Distribution::LacunaryTower:
        for (int k = 0; k < spec.sparsity; ++k)
            f.add_coeff(tower_interval(k), std::exp2(-double(k) * spec.alpha));
        break;
    case Distribution::SingleInterval:
        f.add_coeff(draw_interval(spec, rng), rng.uniform() < 0.5 ? -1.0 : 1.0);
        break;
    }
    return f;
}

EmbeddingVerdict morrey_check(const HaarSeries& f, double s) {
    if (!(s > 0.5 && s < 1.0))
        throw std::invalid_argument("morrey_check: requires s > 1/2 (and s < 1)");
    EmbeddingVerdict v;
    v.inequality = "morrey";
    v.constant = 1.0 / std::sqrt(1.0 - std::exp2(1.0 - 2.0 * s));
    v.exact_constant = true;
    const double sup = linf_norm(to_step(f));
    const double bound = l2_norm(f) + v.constant * hs_seminorm(f, s);
    v.ratio = bound > 0.0 ? sup / bound : 0.0;
    v.pass = sup <= bound + HARD_SLACK * (1.0 + bound);
    return v;
}

EmbeddingVerdict bmo_check(const HaarSeries& f) {
    EmbeddingVerdict v;
    v.inequality = "bmo";
    v.constant = 1.0;
    v.exact_constant = true;
    const double lhs = bmo_norm(f);
    const double rhs = hs_seminorm(f, 0.5);
    v.ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    v.pass = lhs <= rhs + HARD_SLACK * (1.0 + rhs);
    return v;
}

double gns_ratio(const HaarSeries& f, double s) {
    if (!(s > 0.0 && s < 0.5))
        throw std::invalid_argument("gns_ratio: requires 0 < s < 1/2");
    if (f.empty()) throw std::invalid_argument("gns_ratio: requires f != 0");
    const double q = FractionalParameter{s}.q();
    return lq_norm(to_step(f), q) / hs_seminorm(f, s);
}

ExperimentReport run_ensemble(const EnsembleSpec& spec, const std::vector<CheckRequest>& checks,
                              const Calibration& cal) {
    validate_spec(spec);
    ExperimentReport rep;
    rep.title = "embedding ensemble";
    rep.columns = {"check", "s", "sample", "ratio", "bound", "pass"};
    rep.verdict = "PASS";

    for (const auto& check : checks) {
        if (check.name != "morrey" && check.name != "bmo" && check.name != "gns")
            throw std::invalid_argument("unknown check: " + check.name);

        double sup_ratio = 0.0;
        const double gns_bound =
            check.name == "gns" ? cal.bound(calibration_key("gns", check.s)) : 0.0;
        for (int i = 0; i < spec.count; ++i) {
            const HaarSeries f = make_sample(spec, uint64_t(i));
            double ratio = 0.0, bound = 1.0;
            bool pass = false;
            if (check.name == "morrey") {
                const EmbeddingVerdict v = morrey_check(f, check.s);
                ratio = v.ratio;
                pass = v.pass;
            } else if (check.name == "bmo") {
                const EmbeddingVerdict v = bmo_check(f);
                ratio = v.ratio;
                pass = v.pass;
            } else {
                ratio = gns_ratio(f, check.s);
                bound = gns_bound;
                pass = ratio <= bound;
            }
            sup_ratio = std::max(sup_ratio, ratio);
            rep.rows.push_back(
                {check.name, check.s, int64_t(i), ratio, bound, pass});
            if (!pass) {
                rep.verdict = "FAIL";
                rep.summary.emplace_back("failing_sample:" + check.name, to_json_string(f, -1));
            }
        }
        rep.summary.emplace_back("sup_ratio:" + calibration_key(check.name, check.s), sup_ratio);
    }
    return rep;
}

} // namespace dyadic
