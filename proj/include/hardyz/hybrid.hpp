#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hardyz/parallel.hpp"
#include "hardyz/rs_classic.hpp"
#include "hardyz/theta_gram.hpp"
#include "hardyz/zeta_sum.hpp"

namespace hardyz {

enum class Rounding { floor_ceil, nearest };

// regime: closed form for varrho in [0, 0.25], quadrature elsewhere; numeric: quadrature always
enum class TransitionPolicy { regime, numeric };

struct HybridConfig {
    double omega = 1.0;
    double pc_co = 2.0;
    std::int64_t n_co = 0;
    std::int64_t l_co = 0;
    Rounding rounding = Rounding::floor_ceil;
    bool include_transition = true;
    double transition_window = 1.0;  // transition handled when |eps| < window * t^(-1/6)
    TransitionPolicy transition_policy = TransitionPolicy::regime;
};

enum class Method { rs, newsum, hybrid };

struct EvalResult {
    double z = 0.0;
    Method method = Method::rs;
    std::int64_t rs_terms = 0;
    std::int64_t new_terms = 0;
    bool transition_used = false;
    double transition_value = 0.0;
    double error_budget = 0.0;
};

struct ErrorStats {
    std::int64_t count = 0;
    double mean_abs_error = 0.0;
    double mean_exponent_s = 0.0;
    double max_abs_error = 0.0;
    GramIndex max_at_gram = 0;
    double bound = 0.0;
    std::int64_t violations = 0;
};

struct SweepRecord {
    GramIndex gram_index = 0;
    double t = 0.0;
    double rs_tail = 0.0;
    double new_series = 0.0;
    bool transition = false;
    double error = 0.0;
    double bound = 0.0;
};

inline double x_of_omega(double omega) {
    if (!(omega >= 1.0)) throw std::domain_error("x_of_omega: requires omega >= 1");
    double r = std::sqrt(1.0 + 1.0 / omega);
    // omega (1 - r) = -1/(1 + r), which stays accurate for large omega
    return 2.0 * (1.0 - 1.0 / (1.0 + r)) / r;
}

// CPU time of the hybrid in units of tau_RS, as a function of a continuous cut-off pc.
inline double hybrid_cost(double t, double pc, double omega) {
    double root = std::sqrt(t / xconst::two_pi_d);
    double a = std::sqrt(8.0 * t / xconst::pi);
    double start = double(odd_floor(a) + 2);
    return root / std::sqrt(pc) + (root * (pc + 1.0) / std::sqrt(pc) - start / 2.0) * omega;
}

inline double practical_bound(double t, double omega) {
    return std::pow(32.0 * omega * (1.0 + omega) * xconst::pi / t, 0.25);
}

// RS saddle index N mapped to the corresponding point in the odd-integer series.
inline double saddle_map(std::int64_t n, double t) {
    double dn = double(n);
    double u = t / (dn * xconst::pi);
    return std::sqrt(u * u + 4.0 * t / xconst::pi + 4.0 * dn * dn);
}

inline HybridConfig cutoffs(double t, double omega, Rounding rounding = Rounding::floor_ceil) {
    if (!(t > 200.0)) throw std::out_of_range("cutoffs: requires t > 200");
    if (!(omega >= 1.0)) throw std::domain_error("cutoffs: requires omega >= 1");
    HybridConfig c;
    c.omega = omega;
    c.pc_co = 1.0 + 1.0 / omega;
    c.rounding = rounding;
    double x = std::sqrt(t / (xconst::two_pi_d * c.pc_co));
    double big_x = std::sqrt(2.0 * t / xconst::pi) * (c.pc_co + 1.0) / std::sqrt(c.pc_co);
    if (rounding == Rounding::floor_ceil) {
        c.n_co = static_cast<std::int64_t>(std::floor(x));
        c.l_co = odd_floor(big_x);
    } else {
        // the RS tail starts at the integer nearest x
        c.n_co = static_cast<std::int64_t>(std::llround(x)) - 1;
        c.l_co = odd_nearest(big_x);
    }
    double a = std::sqrt(8.0 * t / xconst::pi);
    if (c.l_co <= odd_floor(a) + 2) throw std::domain_error("cutoffs: new-series range is empty at this t");
    return c;
}

struct SeriesStart {
    std::int64_t start = 0;  // first odd alpha of the generic sum
    bool transition = false;
    std::int64_t alpha_star = 0;
    double varrho = 0.0;
};

inline SeriesStart series_start(double t, double window = 1.0) {
    ScaleSet s = scales(t);
    SeriesStart r;
    r.alpha_star = odd_nearest(s.a);
    r.varrho = -s.eps * std::pow(t, 1.0 / 6.0);
    r.transition = std::fabs(s.eps) < window * std::pow(t, -1.0 / 6.0);
    r.start = r.transition ? r.alpha_star + 2 : odd_floor(s.a) + 2;
    return r;
}

// Contribution of the odd integer nearest a, in Z units.
inline double transition_contribution(double t, const SeriesStart& s,
                                      TransitionPolicy policy = TransitionPolicy::regime) {
    if (policy == TransitionPolicy::regime && s.varrho >= 0.0 && s.varrho <= 0.25) return transition_term(t, s.varrho);
    return euler_term(t, s.alpha_star);
}

inline std::int64_t count_new_terms(std::int64_t start, std::int64_t l_co) {
    return l_co >= start ? (l_co - start) / 2 + 1 : 0;
}

inline EvalResult hybrid_z(double t, const HybridConfig& cfg, Exec exec = {}) {
    if (!(t > 200.0)) throw std::out_of_range("hybrid_z: requires t > 200");
    SeriesStart s = series_start(t, cfg.transition_window);
    bool use_t = cfg.include_transition && s.transition;
    std::int64_t start = use_t ? s.start : odd_floor(std::sqrt(8.0 * t / xconst::pi)) + 2;
    if (cfg.l_co < start) throw std::domain_error("hybrid_z: new-series range is empty");
    if (cfg.n_co < 1 || cfg.n_co >= n_t_of(t)) throw std::domain_error("hybrid_z: n_co outside [1, n_t)");
    EvalResult r;
    r.method = Method::hybrid;
    double head = rs_main_sum(t, 1, cfg.n_co, exec);
    double body = h_factor(t) * ms_sum(t, start, cfg.l_co, exec);
    if (use_t) r.transition_value = transition_contribution(t, s, cfg.transition_policy);
    r.transition_used = use_t;
    r.z = head + body + r.transition_value + rs_correction(t, 2);
    r.rs_terms = cfg.n_co;
    r.new_terms = count_new_terms(start, cfg.l_co);
    r.error_budget = practical_bound(t, cfg.omega) + 0.011 * std::pow(t, -1.75);
    return r;
}

inline EvalResult rs_eval(double t, Exec exec = {}) {
    RsEvaluation e = rs_z(t, exec);
    EvalResult r;
    r.method = Method::rs;
    r.z = e.z;
    r.rs_terms = e.n_t;
    r.error_budget = e.remainder_bound;
    return r;
}

// Difference between the RS tail beyond n_co and the new-series segment that replaces it.
inline SweepRecord hybrid_error_at(GramIndex n, const HybridConfig& tmpl, Exec exec = {}) {
    SweepRecord rec;
    rec.gram_index = n;
    rec.t = gram_point(n);
    double t = rec.t;
    HybridConfig c = cutoffs(t, tmpl.omega, tmpl.rounding);
    SeriesStart s = series_start(t, tmpl.transition_window);
    bool use_t = tmpl.include_transition && s.transition;
    std::int64_t start = use_t ? s.start : odd_floor(std::sqrt(8.0 * t / xconst::pi)) + 2;
    rec.rs_tail = rs_main_sum(t, c.n_co + 1, n_t_of(t), exec);
    double tr = use_t ? transition_contribution(t, s, tmpl.transition_policy) : 0.0;
    rec.new_series = h_factor(t) * ms_sum(t, start, c.l_co, exec) + tr;
    rec.transition = use_t;
    rec.error = rec.rs_tail - rec.new_series;
    rec.bound = practical_bound(t, tmpl.omega);
    return rec;
}

// Last RS index kept by the main theorem before the final 5 t^(1/6)/sqrt(8 pi) terms.
inline std::int64_t n_t_minus(double t) {
    return static_cast<std::int64_t>(std::floor(std::sqrt(t / xconst::two_pi_d) - 5.0 * std::pow(t, 1.0 / 6.0) / std::sqrt(8.0 * xconst::pi)));
}

// 2 sum_{N_t^- < N <= N_t} cos(theta - t log N)/sqrt(N)
inline double rs_transition_tail(double t, Exec exec = {}) {
    return rs_main_sum(t, n_t_minus(t) + 1, n_t_of(t), exec);
}

// t with a(t) + offset * t^(-1/6) = target, for odd target.
inline double t_for_offset(std::int64_t target, double offset) {
    if (target < 1 || target % 2 == 0) throw std::domain_error("t_for_offset: target must be a positive odd integer");
    double t = xconst::pi * double(target) * double(target) / 8.0;
    for (int it = 0; it < 100; ++it) {
        double a = double(target) - offset * std::pow(t, -1.0 / 6.0);
        double next = xconst::pi * a * a / 8.0;
        if (std::fabs(next - t) <= 1e-15 * t) return next;
        t = next;
    }
    return t;
}

inline ErrorStats summarize(const std::vector<SweepRecord>& recs) {
    ErrorStats st;
    if (recs.empty()) return st;
    Accumulator sum_abs, sum_s;
    st.bound = recs.front().bound;
    for (const auto& r : recs) {
        double e = std::fabs(r.error);
        sum_abs.add(e);
        sum_s.add(std::log(e) / std::log(r.t));
        if (e > st.max_abs_error) {
            st.max_abs_error = e;
            st.max_at_gram = r.gram_index;
        }
        if (e > r.bound) ++st.violations;
    }
    st.count = static_cast<std::int64_t>(recs.size());
    st.mean_abs_error = sum_abs.value() / double(st.count);
    st.mean_exponent_s = sum_s.value() / double(st.count);
    return st;
}

inline ErrorStats error_sweep(GramIndex start_gram, std::int64_t count, const HybridConfig& tmpl, Exec exec = {},
                              std::vector<SweepRecord>* records = nullptr) {
    if (count < 1) throw std::invalid_argument("error_sweep: count must be >= 1");
    std::vector<SweepRecord> recs(static_cast<std::size_t>(count));
    Exec inner{1};
    parallel_for(count, exec, [&](std::int64_t i) {
        recs[static_cast<std::size_t>(i)] = hybrid_error_at(start_gram + i, tmpl, inner);
    });
    // one bound per run, taken at the first Gram point
    for (auto& r : recs) r.bound = recs.front().bound;
    ErrorStats st = summarize(recs);
    if (records != nullptr) *records = std::move(recs);
    return st;
}

}  // namespace hardyz
