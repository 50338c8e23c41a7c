#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "hardyz/parallel.hpp"
#include "hardyz/theta_gram.hpp"
#include "hardyz/xprec.hpp"

namespace hardyz {

struct PcValue {
    double alpha = 0.0;
    double rho = 0.0;
    double pc = 1.0;
    double b = 0.0;
};

enum class TransitionRegime { closed_form, numeric, none };

struct TransitionParams {
    double eps = 0.0;
    double varrho = 0.0;
    TransitionRegime regime = TransitionRegime::none;
};

struct EmTail {
    std::int64_t K = 0;
    int l = 0;
    double bern_sum = 0.0;
    double half_term = 0.0;
    double integral_i = 0.0;
    double tail = 0.0;
};

inline double h_factor(double t) { return 1.0 + 1.0 / (32.0 * t * t); }

// alpha^2 - a^2 = alpha^2 - 8t/pi, formed without cancellation.
inline double alpha2_minus_a2(double alpha, double t) {
    ExtendedReal a2 = ExtendedReal(8.0 * t) / xconst::pi_x;
    return (two_prod(alpha, alpha) - a2).value();
}

inline PcValue pc_of_alpha(double alpha, double t) {
    double a = std::sqrt(8.0 * t / xconst::pi);
    double diff = alpha2_minus_a2(alpha, t);
    if (diff < 0.0) throw std::domain_error("pc_of_alpha: alpha < a");
    PcValue v;
    v.alpha = alpha;
    v.rho = alpha / a;
    double a2 = 8.0 * t / xconst::pi;
    double b2 = diff / a2;  // rho^2 - 1
    v.b = std::sqrt(b2);
    // pc = 2 rho^2 (1 + sqrt(1 - 1/rho^2)) - 1 = 2 rho^2 + 2 rho b - 1
    v.pc = 1.0 + 2.0 * b2 + 2.0 * v.rho * v.b;
    return v;
}

namespace detail {

struct NewSumContext {
    double t = 0.0;
    ExtendedReal inv_a;
    ExtendedReal offset;  // t + pi/8
    double c = 0.0;       // (8 pi / t)^(1/4)

    explicit NewSumContext(double tt) : t(tt) {
        inv_a = ExtendedReal(1.0) / a_x(t);
        offset = ExtendedReal(t) + xconst::pi_over_8_x;
        c = std::pow(8.0 * xconst::pi / t, 0.25);
    }

    // Phase t [acosh(rho) - b/(rho+b)] + t + pi/8 and b = sqrt(rho^2 - 1).
    // b (b - rho) = -b/(rho + b) avoids the cancellation of the direct form at large rho.
    PhaseAngle phase(double alpha, double& b_out) const {
        ExtendedReal rho = inv_a * alpha;
        ExtendedReal b2 = rho * rho - 1.0;
        ExtendedReal b = sqrt(b2);
        ExtendedReal x = b + rho;
        ExtendedReal g = log_fast(x) - div_fast(b, x);
        b_out = b.hi;
        return reduce_two_pi(g * t + offset, std::fabs(t * g.hi) * 0x1p-100);
    }
};

}  // namespace detail

inline PhaseAngle term_phase(std::int64_t alpha, double t) {
    if (alpha2_minus_a2(double(alpha), t) <= 0.0) throw std::domain_error("term_phase: alpha must exceed a");
    detail::NewSumContext ctx(t);
    double b = 0.0;
    return ctx.phase(double(alpha), b);
}

// (t/2)(log pc + 1/pc) + t/2 + pi/8 mod 2pi, the pc form of the same phase.
inline PhaseAngle term_phase_pc_form(std::int64_t alpha, double t) {
    PcValue v = pc_of_alpha(double(alpha), t);
    ExtendedReal pc = ExtendedReal(1.0) + ExtendedReal(2.0) * (ExtendedReal(v.b) * v.b) + ExtendedReal(2.0 * v.rho) * v.b;
    // refine pc from the defining identity pi alpha^2/4 = t (pc+1)^2/(2 pc) with one Newton step in two-word arithmetic
    ExtendedReal lhs = xconst::pi_x * (two_prod(double(alpha), double(alpha))) / 4.0;
    for (int it = 0; it < 2; ++it) {
        ExtendedReal pc1 = pc + 1.0;
        ExtendedReal f = pc1 * pc1 * t / (pc * 2.0) - lhs;
        ExtendedReal df = (pc * pc - 1.0) * t / (pc * pc * 2.0);
        pc = pc - f / df;
    }
    ExtendedReal ph = (ext_log(pc) + ExtendedReal(1.0) / pc) * (0.5 * t) + (0.5 * t) + xconst::pi_over_8_x;
    return reduce_two_pi(ph, std::fabs(t * std::log(pc.hi)) * 0x1p-98);
}

// 2 sqrt2 / (alpha^2 - a^2)^(1/4)
inline double term_amplitude(std::int64_t alpha, double t) {
    double d = alpha2_minus_a2(double(alpha), t);
    if (d <= 0.0) throw std::domain_error("term_amplitude: alpha must exceed a");
    return 2.0 * std::sqrt(2.0) * std::pow(d, -0.25);
}

inline double term_amplitude_pc_form(std::int64_t alpha, double t) {
    PcValue v = pc_of_alpha(double(alpha), t);
    // pc - 1 = 2 b (b + rho)
    double pcm1 = 2.0 * v.b * (v.b + v.rho);
    return std::pow(2.0, 1.25) * std::pow(xconst::pi, 0.25) * std::pow(v.pc, 0.25) / (std::pow(t, 0.25) * std::sqrt(pcm1));
}

namespace detail {

// Walks odd alpha upward. With rho = cosh u, b = sinh u the phase is
// t u + t/2 + pi/8 + (t/2) e^(-2u); the base is formed in two-word arithmetic and later
// terms add a double-precision increment, rebasing once it exceeds kMaxIncrement radians.
struct NewSumWalker {
    static constexpr double kMaxIncrement = 0x1p20;

    double t;
    double inv_a;
    ExtendedReal inv_a_x;
    ExtendedReal offset;  // t/2 + pi/8
    double alpha0 = 0.0, rho0 = 0.0, b0 = 0.0, b0sq = 0.0, s0 = 0.0, phi0 = 0.0;
    double abs_err = 0.0;

    explicit NewSumWalker(double tt) : t(tt) {
        inv_a_x = ExtendedReal(1.0) / a_x(t);
        inv_a = inv_a_x.hi;
        offset = ExtendedReal(0.5 * t) + xconst::pi_over_8_x;
    }

    void rebase(double alpha) {
        ExtendedReal rho = inv_a_x * alpha;
        ExtendedReal b2 = rho * rho - 1.0;
        ExtendedReal b = sqrt(b2);
        ExtendedReal s = rho + b;
        ExtendedReal e2 = div_fast(ExtendedReal(0.5 * t), s * s);
        PhaseAngle ph = reduce_two_pi(log_fast(s) * t + offset + e2);
        alpha0 = alpha;
        rho0 = rho.hi;
        b0 = b.hi;
        b0sq = b2.hi;
        s0 = s.hi;
        phi0 = ph.value;
    }

    // cos(phase)/sqrt(b) for alpha >= alpha0
    double term(double alpha) {
        double drho = (alpha - alpha0) * inv_a;
        double rho = rho0 + drho;
        double w = drho * (rho + rho0);
        double b = std::sqrt(b0sq + w);
        double ds = drho + w / (b + b0);
        double s = s0 + ds;
        double delta = t * std::log1p(ds / s0) - 0.5 * t * ds * (s + s0) / (s * s * s0 * s0);
        if (std::fabs(delta) > kMaxIncrement) {
            rebase(alpha);
            b = b0;
            delta = 0.0;
        }
        return std::cos(phi0 + delta) / std::sqrt(b);
    }
};

}  // namespace detail

// Same sum as ms_sum with phases advanced incrementally; about 4x faster, phase error near 1e-10.
inline double ms_sum_incremental(double t, std::int64_t alpha_lo, std::int64_t alpha_hi, Exec exec = {}) {
    if (alpha_lo > alpha_hi) return 0.0;
    if (alpha_lo % 2 == 0 || alpha_hi % 2 == 0) throw std::invalid_argument("ms_sum: bounds must be odd");
    if (alpha2_minus_a2(double(alpha_lo), t) <= 0.0) throw std::domain_error("ms_sum: alpha_lo must exceed a");
    double c = std::pow(8.0 * xconst::pi / t, 0.25);
    double s = blocked_reduce(alpha_lo, alpha_hi, 2, exec, [&](std::int64_t first, std::int64_t n) {
        detail::NewSumWalker walk(t);
        walk.rebase(double(first));
        Accumulator acc;
        for (std::int64_t k = 0; k < n; ++k) acc.add(walk.term(double(first + 2 * k)));
        return acc.s;
    });
    return c * s;
}

// Sum of 2 sqrt2 cos(phase)/(alpha^2 - a^2)^(1/4) over odd alpha in [alpha_lo, alpha_hi],
// every phase formed independently in two-word arithmetic.
inline double ms_sum(double t, std::int64_t alpha_lo, std::int64_t alpha_hi, Exec exec = {}) {
    if (alpha_lo > alpha_hi) return 0.0;
    if (alpha_lo % 2 == 0 || alpha_hi % 2 == 0) throw std::invalid_argument("ms_sum: bounds must be odd");
    if (alpha2_minus_a2(double(alpha_lo), t) <= 0.0) throw std::domain_error("ms_sum: alpha_lo must exceed a");
    detail::NewSumContext ctx(t);
    double s = blocked_sum(alpha_lo, alpha_hi, 2, exec, [&](std::int64_t alpha) {
        double b = 0.0;
        PhaseAngle ph = ctx.phase(double(alpha), b);
        return std::cos(ph.value) / std::sqrt(b);
    });
    return ctx.c * s;
}

// Closed-form transition term for varrho in [0, 0.25], in Z units.
inline double transition_term(double t, double varrho) {
    if (!(varrho >= 0.0 && varrho <= 0.25)) throw std::out_of_range("transition_term: varrho outside [0, 0.25]");
    const double pi = xconst::pi;
    double env = std::pow(2.0, 0.75) * std::exp(-std::pow(32.0 * pi * pi * pi, 0.25) * std::pow(varrho, 1.5) / 3.0) /
                 (std::pow(3.0, 2.0 / 3.0) * std::pow(pi, 0.25) * std::pow(t, 1.0 / 12.0));
    double shift = std::sqrt(pi / 2.0) * std::cbrt(t) * varrho;
    double p1 = reduce_two_pi(ExtendedReal(t) + (shift + pi / 24.0)).value;
    double p2 = reduce_two_pi(ExtendedReal(t) + (shift - pi / 24.0)).value;
    double g13 = boost::math::tgamma(1.0 / 3.0);
    double g23 = boost::math::tgamma(2.0 / 3.0);
    return h_factor(t) * env * (g13 * std::cos(p1) + g23 * std::cbrt(3.0) * std::sqrt(pi) * varrho * std::cos(p2));
}

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using cplx = std::complex<double>;

inline cplx clog1p(cplx z) {
    double x = z.real(), y = z.imag();
    return {0.5 * std::log1p(x * (2.0 + x) + y * y), std::atan2(y, 1.0 + x)};
}

struct EulerPath {
    cplx w0;
    double log_m = 0.0;
    struct Segment {
        cplx start;
        cplx dir;     // unit direction (or full displacement for finite segments)
        double len;   // parameter length; infinity for a ray
        double saddle_u = -1.0;
    };
    std::vector<Segment> segs;
};

inline EulerPath euler_path(double alpha, double t) {
    const double pi = xconst::pi;
    double a = std::sqrt(8.0 * t / pi);
    const cplx d45 = std::polar(1.0, pi / 4.0);
    EulerPath p;
    double phi0 = 0.0;
    double diff = alpha2_minus_a2(alpha, t);
    if (diff >= 0.0) {
        double pc = pc_of_alpha(alpha, t).pc;
        if (pc <= std::sqrt(2.0)) {
            double u2 = (-std::sqrt(2.0) * pc + std::sqrt(std::max(0.0, 4.0 - 2.0 * pc * pc))) / 2.0;
            p.w0 = pc + u2 * d45;
            phi0 = std::arg(p.w0);
            p.segs.push_back({p.w0, d45, INFINITY, -u2});
        } else {
            p.w0 = cplx(0.0, -1.0);
            phi0 = -pi / 2.0;
            cplx P((pc - 1.0) / 2.0, -(pc + 1.0) / 2.0);
            p.segs.push_back({p.w0, P - p.w0, 1.0, -1.0});
            p.segs.push_back({P, d45, INFINITY, (pc + 1.0) / std::sqrt(2.0)});
        }
    } else {
        double c = 2.0 * alpha * alpha / (a * a) - 1.0;
        cplx dir = d45;
        if (alpha <= a / std::sqrt(2.0)) {
            phi0 = pi / 2.0;
            dir = cplx(0.0, 1.0);
        } else {
            phi0 = std::acos(std::clamp(c, -1.0, 1.0));
        }
        p.w0 = std::polar(1.0, phi0);
        p.segs.push_back({p.w0, dir, INFINITY, 0.0});
    }
    p.log_m = pi * alpha * alpha * std::tan(phi0 / 2.0) / 8.0 - t * phi0 / 2.0;
    return p;
}

}  // namespace detail

// Single new-series term by contour quadrature of the Euler integral, in Z units.
// Works for any odd alpha; the cost is a few thousand integrand evaluations.
inline double euler_term(double t, std::int64_t alpha_i, double rel_tol = 1e-9) {
    using detail::cplx;
    const double pi = xconst::pi;
    double alpha = double(alpha_i);
    detail::EulerPath path = detail::euler_path(alpha, t);
    const cplx w0 = path.w0;
    const cplx w0p1 = w0 + 1.0;
    const double k4 = pi * alpha * alpha / 4.0;
    const cplx I(0.0, 1.0);

    auto integrand = [&](cplx w, cplx dw_du) {
        cplx dw = w - w0;
        cplx dg = -I * k4 * dw / ((w + 1.0) * w0p1) + I * (0.5 * t) * detail::clog1p(dw / w0);
        cplx amp = std::pow(w, -0.25) * std::pow(w + 1.0, -1.5);
        return std::exp(path.log_m + dg) * amp * dw_du;
    };

    double h0 = 0.02 / std::sqrt(t);
    std::vector<std::pair<const detail::EulerPath::Segment*, std::vector<double>>> plan;
    for (const auto& seg : path.segs) {
        std::vector<double> bp{0.0};
        if (std::isfinite(seg.len)) {
            for (int k = 1; k <= 16; ++k) bp.push_back(seg.len * k / 16);
        } else {
            double us = std::max(0.0, seg.saddle_u);
            // refine towards the saddle from both sides, then grow geometrically
            if (us > 0.0) {
                std::vector<double> left;
                for (double h = h0; h < us; h *= 2.0) left.push_back(us - h);
                std::sort(left.begin(), left.end());
                for (double x : left)
                    if (x > 0.0) bp.push_back(x);
                bp.push_back(us);
            }
            for (double h = h0; h < 1e4; h *= 2.0) bp.push_back(us + h);
        }
        plan.emplace_back(&seg, std::move(bp));
    }

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 15>::weights();
    // one 31-point Kronrod panel with its embedded 15-point Gauss estimate
    auto panel = [&](const detail::EulerPath::Segment& seg, double u0, double u1, double& err) {
        double c = 0.5 * (u0 + u1), h = 0.5 * (u1 - u0);
        cplx k = 0.0, g = 0.0;
        for (std::size_t i = 0; i < xk.size(); ++i) {
            for (int sgn : {1, -1}) {
                if (i == 0 && sgn < 0) continue;
                double u = c + sgn * h * xk[i];
                cplx v = integrand(seg.start + u * seg.dir, seg.dir);
                k += wk[i] * v;
                if (i % 2 == 0) g += wg[i / 2] * v;
            }
        }
        err = std::abs(k - g) * h;
        return k * h;
    };
    std::function<cplx(const detail::EulerPath::Segment&, double, double, double, int, double&)> adapt =
        [&](const detail::EulerPath::Segment& seg, double u0, double u1, double tol, int depth, double& err) {
            double e = 0.0;
            cplx v = panel(seg, u0, u1, e);
            if (e <= tol || depth == 0) {
                err += e;
                return v;
            }
            double m = 0.5 * (u0 + u1);
            return adapt(seg, u0, m, 0.5 * tol, depth - 1, err) + adapt(seg, m, u1, 0.5 * tol, depth - 1, err);
        };

    // first pass fixes the magnitude scale, second pass refines against it
    double scale_est = 0.0;
    for (const auto& [seg, bp] : plan)
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            double e = 0.0;
            scale_est = std::max(scale_est, std::abs(panel(*seg, bp[k], bp[k + 1], e)));
        }
    double tol = rel_tol * scale_est;
    cplx total = 0.0;
    double err_total = 0.0;
    for (const auto& [seg, bp] : plan) {
        int quiet = 0;
        for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
            cplx piece = adapt(*seg, bp[k], bp[k + 1], tol, 20, err_total);
            total += piece;
            bool beyond_saddle = bp[k] >= std::max(0.0, seg->saddle_u);
            if (!std::isfinite(seg->len) && beyond_saddle && std::abs(piece) < 1e-16 * scale_est) {
                if (++quiet >= 2) break;
            } else {
                quiet = 0;
            }
        }
    }
    // parity of m = (alpha^2 - 1)/8 depends only on alpha mod 16
    long r = static_cast<long>(((alpha_i % 16) + 16) % 16);
    long m_par = ((r * r - 1) / 8) % 2;
    double sign = m_par == 0 ? 1.0 : -1.0;
    double scale = std::pow(pi / 2.0, 0.25) * h_factor(t) * alpha / std::pow(t, 0.25);
    double result = scale * sign * total.real();
    if (!std::isfinite(result) || err_total > 1e-4 * std::abs(total))
        throw QuadratureError("euler_term: quadrature did not converge");
    return result;
}

inline TransitionParams transition_params(double t) {
    ScaleSet s = scales(t);
    TransitionParams p;
    p.eps = s.eps;
    // varrho measures how far the nearest odd integer sits above a
    p.varrho = -s.eps * std::pow(t, 1.0 / 6.0);
    if (std::fabs(p.varrho) >= 1.0) p.regime = TransitionRegime::none;
    else if (p.varrho >= 0.0 && p.varrho <= 0.25) p.regime = TransitionRegime::closed_form;
    else p.regime = TransitionRegime::numeric;
    return p;
}

// Contribution of the odd integer NINT_O(a) = a - eps by quadrature, in Z units.
inline double transition_numeric(double t, double eps) {
    double a = std::sqrt(8.0 * t / xconst::pi);
    double limit = std::pow(t, -1.0 / 6.0);
    if (!(std::fabs(eps) < limit)) throw std::out_of_range("transition_numeric: |eps| must be below t^(-1/6)");
    std::int64_t alpha = odd_nearest(a - eps);
    return euler_term(t, alpha);
}

// f(alpha) = cos(phase)/(alpha^2 - a^2)^(1/4), the new-series term without the 2 sqrt2 factor.
inline double f_term(double t, std::int64_t alpha) {
    return std::cos(term_phase(alpha, t).value) * std::pow(alpha2_minus_a2(double(alpha), t), -0.25);
}

inline EmTail em_tail(double t, std::int64_t K, int l = 60) {
    std::int64_t floor_k = odd_floor(t / xconst::pi) + 2;
    if (K < floor_k)
        throw std::invalid_argument("em_tail: K must be >= odd_floor(t/pi) + 2 = " + std::to_string(floor_k));
    if (l < 2 || l > 60 || l % 2 != 0) throw std::invalid_argument("em_tail: l must be even, 2..60");
    EmTail e;
    e.K = K;
    e.l = l;
    PcValue v = pc_of_alpha(double(K), t);
    double pc = v.pc;
    double pcm1 = 2.0 * v.b * (v.b + v.rho);
    PhaseAngle ph = term_phase(K, t);
    double s = std::sin(ph.value);
    double pref = std::pow(pc, 0.75) * s / (std::pow(2.0 * t, 0.75) * std::pow(xconst::pi, 0.25) * std::sqrt(pcm1));
    // |B_2j|/(2j)! (2 pi t/pc)^j = 2 zeta(2j) (t/(2 pi pc))^j
    double ratio = t / (xconst::two_pi_d * pc);
    double sum = 0.0, pw = 1.0;
    for (int j = 1; j <= l / 2; ++j) {
        pw *= ratio;
        sum += 2.0 * boost::math::zeta(2.0 * j) * pw;
    }
    e.bern_sum = pref * sum;
    e.half_term = 0.5 * std::cos(ph.value) * std::pow(alpha2_minus_a2(double(K), t), -0.25);
    e.integral_i = -s / (std::pow(xconst::pi, 0.25) * std::sqrt(pcm1)) * std::pow(pc / (2.0 * t), 0.75);
    e.tail = e.integral_i + e.bern_sum + e.half_term;
    return e;
}

enum class KPolicy { paper_0_35t, half_t, double_min };

enum class TermMethod { automatic, generic, closed_form, numeric };

struct NewsumOptions {
    KPolicy k_policy = KPolicy::double_min;
    std::int64_t main_lo = 0;                                     // 0: odd_floor(a)
    std::vector<std::pair<std::int64_t, TermMethod>> overrides;   // per-alpha method
    int l = 60;
    bool incremental = false;  // bulk of the main sum through ms_sum_incremental
    bool nearest_numeric = false;  // odd integer nearest a by quadrature unless overridden
};

struct NewsumResult {
    double z = 0.0;
    double main_sum = 0.0;  // without the 2 sqrt2 H factor
    EmTail tail;
    std::int64_t alpha_lo = 0;
    std::int64_t alpha_hi = 0;
    std::vector<std::pair<std::int64_t, TermMethod>> near_terms;  // how terms near a were evaluated
};

inline std::int64_t k_of_policy(double t, KPolicy p) {
    double a = std::sqrt(8.0 * t / xconst::pi);
    switch (p) {
    case KPolicy::paper_0_35t: return odd_floor(0.35 * t) + 4;
    case KPolicy::half_t: return odd_floor(0.5 * t) + 4;
    case KPolicy::double_min: break;
    }
    return odd_floor(2.0 * t / xconst::pi - a);
}

// Z(t) from the new series, with the Euler-Maclaurin tail beyond N_alpha = K - 2.
inline NewsumResult z_newsum(double t, const NewsumOptions& opt = {}, Exec exec = {}) {
    if (!(t > 200.0)) throw std::out_of_range("z_newsum: requires t > 200");
    const double a = std::sqrt(8.0 * t / xconst::pi);
    const double zone = std::pow(t, -1.0 / 6.0);
    const double t16 = std::pow(t, 1.0 / 6.0);
    const double to_f = 1.0 / (2.0 * std::sqrt(2.0) * h_factor(t));
    NewsumResult r;
    std::int64_t K = k_of_policy(t, opt.k_policy);
    r.alpha_lo = opt.main_lo > 0 ? opt.main_lo : odd_floor(a);
    r.alpha_hi = K - 2;

    auto method_for = [&](std::int64_t alpha) {
        for (const auto& [al, m] : opt.overrides)
            if (al == alpha) return m;
        if (opt.nearest_numeric && alpha == odd_nearest(a)) return TermMethod::numeric;
        return TermMethod::automatic;
    };

    double special = 0.0;
    std::int64_t alpha = r.alpha_lo;
    // terms below a, and terms within t^(-1/6) above it, need individual treatment
    for (; alpha <= r.alpha_hi; alpha += 2) {
        double gap = double(alpha) - a;
        TermMethod m = method_for(alpha);
        if (m == TermMethod::automatic) {
            if (gap < 0.0) m = TermMethod::numeric;
            else if (gap < zone) m = (gap * t16 <= 0.25) ? TermMethod::closed_form : TermMethod::numeric;
            else break;
        }
        double v = 0.0;
        switch (m) {
        case TermMethod::numeric: v = euler_term(t, alpha) * to_f; break;
        case TermMethod::closed_form: v = transition_term(t, std::max(0.0, gap * t16)) * to_f; break;
        default: v = f_term(t, alpha); break;
        }
        r.near_terms.emplace_back(alpha, m);
        special += v;
    }
    double bulk = 0.0;
    if (alpha <= r.alpha_hi)
        bulk = (opt.incremental ? ms_sum_incremental(t, alpha, r.alpha_hi, exec) : ms_sum(t, alpha, r.alpha_hi, exec)) /
               (2.0 * std::sqrt(2.0));
    r.main_sum = special + bulk;
    r.tail = em_tail(t, K, opt.l);
    r.z = h_factor(t) * 2.0 * std::sqrt(2.0) * (r.main_sum + r.tail.tail);
    return r;
}

}  // namespace hardyz
