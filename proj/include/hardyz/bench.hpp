#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hardyz/hybrid.hpp"
#include "hardyz/rs_classic.hpp"
#include "hardyz/zeta_sum.hpp"

namespace hardyz {

struct UnstableMeasurement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OmegaMeasurement {
    double t = 0.0;
    double omega = 0.0;
    double rs_ns_per_term = 0.0;
    double new_ns_per_term = 0.0;
    int reps = 0;
    double dispersion = 0.0;  // IQR / median of the per-rep ratios
};

struct SavingReport {
    double realized_pct = 0.0;
    double predicted_pct = 0.0;
    double omega_used = 0.0;
    double rs_seconds = 0.0;
    double hybrid_seconds = 0.0;
    double dispersion = 0.0;
    std::int64_t rs_terms = 0;
    std::int64_t hybrid_terms = 0;
};

inline constexpr std::int64_t kMinTermBudget = 1000000;
inline constexpr double kMaxDispersion = 0.2;

namespace detail {

inline volatile double bench_sink = 0.0;

inline double seconds_of(const std::function<double()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    double v = fn();
    auto t1 = std::chrono::steady_clock::now();
    bench_sink = bench_sink + v;
    return std::chrono::duration<double>(t1 - t0).count();
}

inline double timer_resolution() {
    using clock = std::chrono::steady_clock;
    double p = double(clock::period::num) / double(clock::period::den);
    auto a = clock::now();
    auto b = clock::now();
    while (b == a) b = clock::now();
    return std::max(p, std::chrono::duration<double>(b - a).count());
}

inline double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * double(v.size() - 1);
    auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= v.size()) return v.back();
    return v[i] + (pos - double(i)) * (v[i + 1] - v[i]);
}

struct RatioTiming {
    double median_a = 0.0, median_b = 0.0, ratio = 0.0, dispersion = 0.0;
};

// Interleaved reps of a and b after one discarded warmup each; ratio = median of b/a.
inline RatioTiming time_ratio(const std::function<double()>& a, const std::function<double()>& b, int reps) {
    seconds_of(a);
    seconds_of(b);
    std::vector<double> ta, tb, r;
    for (int i = 0; i < reps; ++i) {
        double x = seconds_of(a);
        double y = seconds_of(b);
        ta.push_back(x);
        tb.push_back(y);
        r.push_back(y / x);
    }
    double floor = 1e3 * timer_resolution();
    if (quantile(ta, 0.0) < floor || quantile(tb, 0.0) < floor)
        throw UnstableMeasurement("timing: run time is below the timer floor; raise the term budget");
    RatioTiming out;
    out.median_a = quantile(ta, 0.5);
    out.median_b = quantile(tb, 0.5);
    out.ratio = quantile(r, 0.5);
    out.dispersion = (quantile(r, 0.75) - quantile(r, 0.25)) / out.ratio;
    return out;
}

inline void check_budget(std::int64_t budget, int reps) {
    if (budget < kMinTermBudget)
        throw UnstableMeasurement("measure_omega: term budget below 1e6 is under the timer floor");
    if (reps < 7) throw std::invalid_argument("measure_omega: reps must be >= 7");
}

// Repeats sum(lo, hi) until `budget` terms are done; returns the consumed value.
inline std::function<double()> repeated(std::int64_t budget, std::int64_t lo, std::int64_t hi, std::int64_t stride,
                                        std::function<double(std::int64_t, std::int64_t)> sum) {
    return [=] {
        std::int64_t per = (hi - lo) / stride + 1;
        double acc = 0.0;
        for (std::int64_t done = 0; done < budget; done += per) acc += sum(lo, hi);
        return acc;
    };
}

inline std::int64_t rounds_for(std::int64_t budget, std::int64_t per) { return (budget + per - 1) / per; }

}  // namespace detail

// Per-term cost of the new series relative to an RS term, both single-threaded at the same t.
inline OmegaMeasurement measure_omega(double t, std::int64_t term_budget = kMinTermBudget, int reps = 9) {
    detail::check_budget(term_budget, reps);
    Exec one{1};
    std::int64_t n_t = n_t_of(t);
    HybridConfig c = cutoffs(t, 1.0);
    std::int64_t start = odd_floor(std::sqrt(8.0 * t / xconst::pi)) + 2;
    auto rs = detail::repeated(term_budget, 1, n_t, 1,
                               [&](std::int64_t lo, std::int64_t hi) { return rs_main_sum(t, lo, hi, one); });
    auto ms = detail::repeated(term_budget, start, c.l_co, 2,
                               [&](std::int64_t lo, std::int64_t hi) { return ms_sum(t, lo, hi, one); });
    detail::RatioTiming rt = detail::time_ratio(rs, ms, reps);
    std::int64_t rs_count = detail::rounds_for(term_budget, n_t) * n_t;
    std::int64_t per_new = count_new_terms(start, c.l_co);
    std::int64_t new_count = detail::rounds_for(term_budget, per_new) * per_new;
    OmegaMeasurement m;
    m.t = t;
    m.reps = reps;
    m.rs_ns_per_term = rt.median_a / double(rs_count) * 1e9;
    m.new_ns_per_term = rt.median_b / double(new_count) * 1e9;
    m.omega = rt.ratio * double(rs_count) / double(new_count);
    m.dispersion = rt.dispersion;
    if (m.dispersion > kMaxDispersion)
        throw UnstableMeasurement("measure_omega: dispersion above 0.2, rerun advised");
    return m;
}

// Harness self-test: the same RS range timed against itself.
inline OmegaMeasurement measure_self_ratio(double t, std::int64_t term_budget = kMinTermBudget, int reps = 9) {
    detail::check_budget(term_budget, reps);
    Exec one{1};
    std::int64_t n_t = n_t_of(t);
    auto rs = detail::repeated(term_budget, 1, n_t, 1,
                               [&](std::int64_t lo, std::int64_t hi) { return rs_main_sum(t, lo, hi, one); });
    detail::RatioTiming rt = detail::time_ratio(rs, rs, reps);
    std::int64_t count = detail::rounds_for(term_budget, n_t) * n_t;
    OmegaMeasurement m;
    m.t = t;
    m.reps = reps;
    m.rs_ns_per_term = rt.median_a / double(count) * 1e9;
    m.new_ns_per_term = rt.median_b / double(count) * 1e9;
    m.omega = rt.ratio;
    m.dispersion = rt.dispersion;
    return m;
}

inline double predicted_saving_pct(double omega) { return 100.0 * (1.0 - x_of_omega(omega)); }

// End-to-end rs_z against hybrid_z at the cutoffs planned from the measured omega (floored at 1).
inline SavingReport realized_saving(double t, const OmegaMeasurement& m) {
    if (!(m.omega >= 0.0) || m.reps < 7) throw std::invalid_argument("realized_saving: invalid measurement");
    if (m.dispersion > kMaxDispersion) throw UnstableMeasurement("realized_saving: measurement dispersion above 0.2");
    Exec one{1};
    SavingReport rep;
    rep.omega_used = std::max(1.0, m.omega);
    HybridConfig c = cutoffs(t, rep.omega_used);
    EvalResult probe = hybrid_z(t, c, one);
    rep.rs_terms = n_t_of(t);
    rep.hybrid_terms = probe.rs_terms + probe.new_terms;
    std::int64_t rounds = detail::rounds_for(kMinTermBudget, rep.rs_terms);
    auto rs = [&] {
        double acc = 0.0;
        for (std::int64_t i = 0; i < rounds; ++i) acc += rs_z(t, one).z;
        return acc;
    };
    auto hy = [&] {
        double acc = 0.0;
        for (std::int64_t i = 0; i < rounds; ++i) acc += hybrid_z(t, c, one).z;
        return acc;
    };
    detail::RatioTiming rt = detail::time_ratio(rs, hy, m.reps);
    rep.rs_seconds = rt.median_a / double(rounds);
    rep.hybrid_seconds = rt.median_b / double(rounds);
    rep.dispersion = rt.dispersion;
    if (rep.dispersion > kMaxDispersion) throw UnstableMeasurement("realized_saving: dispersion above 0.2, rerun advised");
    rep.realized_pct = 100.0 * (1.0 - rt.ratio);
    rep.predicted_pct = predicted_saving_pct(rep.omega_used);
    return rep;
}

}  // namespace hardyz
