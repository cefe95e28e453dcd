#include "dyadic/counterexamples.hpp"

#include "dyadic/algebra.hpp"
#include "dyadic/compensated.hpp"
#include "dyadic/fitting.hpp"
#include "dyadic/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyadic {

namespace {

constexpr int64_t TOWER_CLAMP = 59;   // step pipeline: base scale -N-1 >= K_MIN
constexpr int64_t COEFF_CLAMP = 4096; // coefficient-space ceiling

// Tower recurrence on rescaled coefficients a_k = 2^{k/2} (f, h_{I^(k)}):
//   T_n = Σ_{k>n} a_k² 2^{n−k}   (descendant energy, rescaled)
//   P_n = Σ_{m<n} a_m            (= ⟨f⟩_{I^(n)})
//   A_n = T_n + 2 a_n P_n        (= 2^{n/2} (f², h_{I^(n)}))
// All quantities are O(1)-scaled, so the recurrence is stable out to the
// coefficient-space ceiling.
struct TowerSquare {
    int64_t k_min = 0;
    std::vector<double> a; // a[k] for k in [k_min, N]
    std::vector<double> A; // A[n] likewise

    TowerSquare(int64_t k_min_, int64_t N, const std::vector<double>& a_) : k_min(k_min_), a(a_) {
        const std::size_t m = a.size();
        std::vector<double> T(m, 0.0);
        for (std::size_t i = m - 1; i-- > 0;) T[i] = 0.5 * (T[i + 1] + a[i + 1] * a[i + 1]);
        A.resize(m);
        double P = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            A[i] = T[i] + 2.0 * a[i] * P;
            P += a[i];
        }
    }

    double l2_sq() const { // Σ c_k² = Σ 2^{-k} a_k²
        Accumulator acc;
        for (std::size_t i = a.size(); i-- > 0;)
            acc.add(std::exp2(-double(k_min + int64_t(i))) * a[i] * a[i]);
        return acc.value();
    }

    // Ḣ^s(f²)² = M²·|H|^{-2s-1}·2^{-(2s+1)}/(1−2^{-(2s+1)}) + Σ_n 2^{n(2s−1)} A_n²
    // with hull H = I^(k_min) and M = ∫f² = ‖f‖²_{L²}.
    double f2_seminorm_sq(double s) const {
        const double M = l2_sq();
        const double r = std::exp2(-(2.0 * s + 1.0));
        const double tail = M * M * std::exp2((2.0 * s + 1.0) * double(k_min)) * r / (1.0 - r);
        Accumulator acc;
        for (std::size_t i = A.size(); i-- > 0;) {
            const double n = double(k_min + int64_t(i));
            acc.add(std::exp2(n * (2.0 * s - 1.0)) * A[i] * A[i]);
        }
        return tail + acc.value();
    }
};

std::vector<double> lowreg_a(double alpha, int64_t N) {
    std::vector<double> a(std::size_t(N) + 1);
    for (int64_t k = 0; k <= N; ++k) a[std::size_t(k)] = std::exp2(double(k) * (0.5 - alpha));
    return a;
}

std::vector<double> critical_a(double alpha, int64_t N) {
    std::vector<double> a(std::size_t(N), 0.0);
    for (int64_t k = 1; k <= N; ++k)
        a[std::size_t(k - 1)] = std::pow(double(k), -0.5 * alpha);
    return a;
}

void check_coeff_range(int64_t N, int64_t k_min) {
    if (N < k_min) throw std::invalid_argument("tower truncation must be >= " +
                                               std::to_string(k_min));
    if (N > COEFF_CLAMP)
        throw std::invalid_argument("tower truncation exceeds the coefficient-space ceiling");
}

} // namespace

DyadicInterval tower_interval(int64_t k) {
    if (k < -int64_t(K_MAX) || k > -int64_t(K_MIN))
        throw clamp_error("tower index " + std::to_string(k) + " outside the scale clamp");
    return DyadicInterval{int32_t(-k), -1};
}

void CounterexampleSpec::validate() const {
    if (family == Family::LowReg) {
        if (!(s > 0.0 && s < 0.5))
            throw std::invalid_argument("low-regularity family requires 0 < s < 1/2");
        if (!(alpha > s && alpha < 0.5 * s + 0.25))
            throw std::invalid_argument("low-regularity family requires s < alpha < s/2 + 1/4");
    } else {
        if (s != 0.5) throw std::invalid_argument("critical family requires s = 1/2");
        if (!(alpha > 1.0 && alpha <= 1.5))
            throw std::invalid_argument("critical family requires 1 < alpha <= 3/2");
    }
    if (N < 1) throw std::invalid_argument("truncation level N must be >= 1");
}

HaarSeries lowreg_function(double alpha, int64_t N) {
    if (!(alpha > 0.0)) throw std::invalid_argument("lowreg_function: requires alpha > 0");
    if (N < 0) throw std::invalid_argument("lowreg_function: requires N >= 0");
    if (N > TOWER_CLAMP)
        throw clamp_error("lowreg_function: truncation " + std::to_string(N) +
                          " exceeds the scale clamp");
    HaarSeries f;
    for (int64_t k = 0; k <= N; ++k)
        f.set_coeff(tower_interval(k), std::exp2(-double(k) * alpha));
    return f;
}

HaarSeries critical_function(double alpha, int64_t N) {
    if (!(alpha > 1.0)) throw std::invalid_argument("critical_function: requires alpha > 1");
    if (N < 1) throw std::invalid_argument("critical_function: requires N >= 1");
    if (N > TOWER_CLAMP)
        throw clamp_error("critical_function: truncation " + std::to_string(N) +
                          " exceeds the scale clamp");
    HaarSeries f;
    for (int64_t k = 1; k <= N; ++k)
        f.set_coeff(tower_interval(k),
                    std::exp2(-0.5 * double(k)) * std::pow(double(k), -0.5 * alpha));
    return f;
}

double lowreg_square_coeff_closed(double alpha, int64_t n, int64_t N) {
    if (n > N) return 0.0;
    // Descendant sum: 2^{n/2} Σ_{k=k0}^{N} 2^{-2αk}, k0 = max(n+1, 0).
    const int64_t k0 = std::max<int64_t>(n + 1, 0);
    Accumulator desc;
    for (int64_t k = N; k >= k0; --k) desc.add(std::exp2(-2.0 * alpha * double(k)));
    double out = std::exp2(0.5 * double(n)) * desc.value();
    if (n >= 0) {
        // Average part: 2·2^{-nα} Σ_{m=0}^{n-1} 2^{-m(α-1/2)}.
        Accumulator avg;
        for (int64_t m = n - 1; m >= 0; --m) avg.add(std::exp2(-double(m) * (alpha - 0.5)));
        out += 2.0 * std::exp2(-double(n) * alpha) * avg.value();
    }
    return out;
}

double lowreg_hs_norm_sq(double s, double alpha, int64_t N) {
    check_coeff_range(N, 0);
    Accumulator acc;
    for (int64_t k = N; k >= 0; --k)
        acc.add((1.0 + std::exp2(2.0 * double(k) * s)) * std::exp2(-2.0 * double(k) * alpha));
    return acc.value();
}

double lowreg_f2_seminorm_sq(double s, double alpha, int64_t N) {
    check_coeff_range(N, 0);
    return TowerSquare(0, N, lowreg_a(alpha, N)).f2_seminorm_sq(s);
}

double critical_hs_norm_sq(double alpha, int64_t N) {
    check_coeff_range(N, 1);
    Accumulator acc;
    for (int64_t k = N; k >= 1; --k)
        acc.add((1.0 + std::exp2(-double(k))) * std::pow(double(k), -alpha));
    return acc.value();
}

double critical_l2_sq(double alpha, int64_t N) {
    check_coeff_range(N, 1);
    Accumulator acc;
    for (int64_t k = N; k >= 1; --k)
        acc.add(std::exp2(-double(k)) * std::pow(double(k), -alpha));
    return acc.value();
}

double critical_f2_seminorm_sq(double alpha, int64_t N) {
    check_coeff_range(N, 1);
    return TowerSquare(1, N, critical_a(alpha, N)).f2_seminorm_sq(0.5);
}

ExperimentReport divergence_experiment(const CounterexampleSpec& spec,
                                       const std::vector<int64_t>& N_list) {
    spec.validate();
    std::vector<int64_t> ns = N_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.size() < 3)
        throw std::invalid_argument("divergence experiment needs at least 3 truncation levels");
    const bool lowreg = spec.family == Family::LowReg;
    const int64_t k_min = lowreg ? 0 : 1;
    for (int64_t N : ns)
        if (N < std::max<int64_t>(k_min, 1))
            throw std::invalid_argument("truncation level N must be >= 1");

    ExperimentReport rep;
    rep.title = lowreg ? "low-regularity divergence" : "critical divergence";
    rep.columns = {"N",          "h_s_norm_f", "hs_seminorm_sq_f2", "log2_hs_seminorm_sq_f2",
                   "fitted_slope", "band_lo",  "band_hi",           "verdict"};

    std::vector<double> xs, ys;
    for (int64_t N : ns) {
        double h_norm = 0.0, semi2 = 0.0;
        if (lowreg) {
            const HaarSeries f = lowreg_function(spec.alpha, N);
            h_norm = hs_norm(f, spec.s);
            const SquareNormResult r = square_hs_norm(f, spec.s);
            semi2 = r.report.hs_seminorm * r.report.hs_seminorm;
        } else {
            h_norm = std::sqrt(critical_hs_norm_sq(spec.alpha, N));
            semi2 = critical_f2_seminorm_sq(spec.alpha, N);
        }
        xs.push_back(double(N));
        ys.push_back(semi2);
        rep.rows.push_back({int64_t(N), h_norm, semi2, std::log2(semi2)});
    }

    const GrowthFit fit =
        fit_growth(xs, ys, lowreg ? GrowthBasis::Exp2InN : GrowthBasis::PowerInN);
    const double predicted = lowreg ? 2.0 * spec.s - 4.0 * spec.alpha + 1.0 : 3.0 - 2.0 * spec.alpha;
    const double tol = lowreg ? 0.15 : 0.20;

    std::string verdict;
    if (std::abs(fit.exponent - predicted) <= tol * std::abs(predicted))
        verdict = "DIVERGES";
    else if (fit.exponent > 0.011) // golden-section bracket floor is 0.01
        verdict = "GROWS_OFF_PREDICTION";
    else
        verdict = "NO_DIVERGENCE";

    for (auto& row : rep.rows) {
        row.push_back(fit.exponent);
        row.push_back(fit.band_lo);
        row.push_back(fit.band_hi);
        row.push_back(verdict);
    }

    rep.summary.emplace_back("family", std::string(lowreg ? "lowreg" : "critical"));
    rep.summary.emplace_back("s", spec.s);
    rep.summary.emplace_back("alpha", spec.alpha);
    rep.summary.emplace_back("predicted_exponent", predicted);
    rep.summary.emplace_back("fitted_exponent", fit.exponent);
    rep.summary.emplace_back("band_lo", fit.band_lo);
    rep.summary.emplace_back("band_hi", fit.band_hi);
    rep.summary.emplace_back("fit_offset", fit.offset);
    rep.summary.emplace_back("fit_scale", fit.scale);

    if (lowreg) {
        // H^s-norm Cauchy increments must shrink geometrically, per level,
        // with ratio 2^{2(s-α)}.
        const double target = std::exp2(2.0 * (spec.s - spec.alpha));
        const int64_t lo = ns.front(), hi = ns.back();
        double max_dev = 0.0;
        double prev_inc = lowreg_hs_norm_sq(spec.s, spec.alpha, lo) -
                          lowreg_hs_norm_sq(spec.s, spec.alpha, lo - 1);
        for (int64_t N = lo + 1; N <= hi; ++N) {
            const double inc = lowreg_hs_norm_sq(spec.s, spec.alpha, N) -
                               lowreg_hs_norm_sq(spec.s, spec.alpha, N - 1);
            max_dev = std::max(max_dev, std::abs(inc / prev_inc / target - 1.0));
            prev_inc = inc;
        }
        rep.summary.emplace_back("increment_ratio_target", target);
        rep.summary.emplace_back("increment_ratio_max_dev", max_dev);
        rep.summary.emplace_back("increments_ok", max_dev <= 0.05);
    } else {
        // Consecutive H^{1/2}-norm² increments sit below the integral tail
        // bound N₁^{1-α}/(α-1) of Σ_{k>N₁} k^{-α}.
        double max_ratio = 0.0;
        for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
            const double inc = critical_hs_norm_sq(spec.alpha, ns[i + 1]) -
                               critical_hs_norm_sq(spec.alpha, ns[i]);
            const double bound =
                std::pow(double(ns[i]), 1.0 - spec.alpha) / (spec.alpha - 1.0);
            max_ratio = std::max(max_ratio, inc / bound);
        }
        rep.summary.emplace_back("tail_bound_max_ratio", max_ratio);
        rep.summary.emplace_back("tail_bound_ok", max_ratio <= 1.0 + 1e-9);
    }

    rep.verdict = verdict;
    return rep;
}

} // namespace dyadic
