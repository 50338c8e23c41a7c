#pragma once

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/float128.hpp>

#include "hardyz/zeta_sum.hpp"

namespace hardyz {

enum class RsiMethod { numeric, asymptotic };

struct RsiValue {
    std::complex<double> value;
    RsiMethod method = RsiMethod::numeric;
    double est_err = 0.0;   // relative
    double log_scale = 0.0; // the integral is value * exp(log_scale); nonzero only when it would overflow
};

namespace detail {

using quad = __float128;
using cquad = __complex128;

inline cquad cq(quad re, quad im) {
    cquad z;
    __real__ z = re;
    __imag__ z = im;
    return z;
}

struct RsiRule {
    std::vector<quad> x, wk, wg;  // nonnegative Kronrod abscissae, Kronrod and Gauss weights
};

inline const RsiRule& rsi_rule() {
    static const RsiRule rule = [] {
        using F = boost::multiprecision::float128;
        using GK = boost::math::quadrature::gauss_kronrod<F, 31>;
        RsiRule r;
        for (const auto& v : GK::abscissa()) r.x.push_back(v.backend().value());
        for (const auto& v : GK::weights()) r.wk.push_back(v.backend().value());
        using G = boost::math::quadrature::gauss<F, 15>;
        for (const auto& v : G::weights()) r.wg.push_back(v.backend().value());
        return r;
    }();
    return rule;
}

// log Gamma(w) for Re w > 0 on the branch continuous from the real axis; shift up, then Stirling.
inline cquad lgamma_quad(cquad w) {
    cquad shift = cq(0, 0);
    while (cabsq(w) < 60) {
        shift += clogq(w);
        w += 1;
    }
    static const std::vector<quad> b2n = [] {
        std::vector<quad> v;
        for (int k = 1; k <= 24; ++k)
            v.push_back(boost::math::bernoulli_b2n<boost::multiprecision::float128>(k).backend().value());
        return v;
    }();
    cquad inv = 1 / w, inv2 = inv * inv, p = inv, s = cq(0, 0);
    for (int k = 1; k <= 24; ++k) {
        s += b2n[k - 1] / quad(2 * k * (2 * k - 1)) * p;
        p *= inv2;
    }
    return (w - 0.5Q) * clogq(w) - w + 0.5Q * logq(2 * M_PIq) + s - shift;
}

}  // namespace detail

// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi in quad precision, valid for any t > 0.
inline __float128 theta_quad(double t) {
    if (!(t > 0.0)) throw std::domain_error("theta_quad: requires t > 0");
    detail::quad tq = t;
    detail::cquad lg = detail::lgamma_quad(detail::cq(0.25Q, tq / 2));
    return __imag__ lg - tq / 2 * logq(M_PIq);
}

namespace detail {

struct RsiIntegral {
    cquad value;   // scaled by exp(-3 pi t / 4)
    quad err = 0;  // absolute, same scaling
    quad peak = 0; // largest scaled integrand magnitude seen
};

struct RsiIntegrand {
    cquad s, d;
    quad shift;

    explicit RsiIntegrand(double t) {
        s = cq(0.5Q, quad(t));
        d = cexpq(cq(0, -M_PIq / 4));
        shift = 3 * M_PIq * quad(t) / 4;
    }

    // Along the line Re z < 0 forces Im z > 0, so the principal log matches the A2 branch rule.
    cquad operator()(quad q) const {
        cquad z = 0.5Q + q * d;
        cquad num = cexpq(cq(0, -M_PIq) * z * z - s * clogq(z) - shift);
        cquad den = cq(0, 2) * csinq(M_PIq * z);
        return num / den * d;
    }
};

struct RsiPanel {
    cquad k, g;
    quad peak;
};

inline RsiPanel rsi_gk(const RsiIntegrand& f, quad lo, quad hi) {
    const RsiRule& r = rsi_rule();
    quad c = (lo + hi) / 2, h = (hi - lo) / 2;
    RsiPanel p{cq(0, 0), cq(0, 0), 0};
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        int sides = (i == 0) ? 1 : 2;
        for (int sgn = 0; sgn < sides; ++sgn) {
            quad x = (sgn == 0) ? c + h * r.x[i] : c - h * r.x[i];
            cquad v = f(x);
            p.peak = fmaxq(p.peak, cabsq(v));
            p.k += r.wk[i] * v;
            if (i % 2 == 0) p.g += r.wg[i / 2] * v;
        }
    }
    p.k *= h;
    p.g *= h;
    return p;
}

inline void rsi_adapt(const RsiIntegrand& f, quad lo, quad hi, quad tol, int depth, RsiIntegral& out) {
    RsiPanel p = rsi_gk(f, lo, hi);
    out.peak = fmaxq(out.peak, p.peak);
    quad e = cabsq(p.k - p.g);
    if (e <= tol || depth == 0) {
        out.value += p.k;
        out.err += e;
        return;
    }
    quad mid = (lo + hi) / 2;
    rsi_adapt(f, lo, mid, tol / 2, depth - 1, out);
    rsi_adapt(f, mid, hi, tol / 2, depth - 1, out);
}

inline RsiIntegral rsi_integrate(double t) {
    if (!(t >= 5.0 && t <= 60.0)) throw std::out_of_range("rsi_numeric: requires 5 <= t <= 60");
    RsiIntegrand f(t);
    quad big_q = sqrtq(quad(t)) + 15;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<quad> br = {-big_q, -big_q / 2, -2, -1, 0, 1, 2, big_q / 2, big_q};
        // coarse pass for the magnitude of the integrand
        quad scale = 0;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            RsiPanel p = rsi_gk(f, br[i], br[i + 1]);
            scale = fmaxq(scale, p.peak * (br[i + 1] - br[i]));
        }
        RsiIntegral out{cq(0, 0), 0, 0};
        quad tol = scale * 1e-31Q;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) rsi_adapt(f, br[i], br[i + 1], tol / 8, 30, out);
        quad edge = fmaxq(cabsq(f(-big_q)), cabsq(f(big_q)));
        if (edge < 1e-20Q * out.peak) return out;
        big_q *= 1.5Q;
    }
    throw QuadratureError("rsi_numeric: integrand does not decay inside the window");
}

inline std::complex<double> to_complex(cquad z) { return {double(__real__ z), double(__imag__ z)}; }

}  // namespace detail

inline RsiValue rsi_numeric(double t) {
    detail::RsiIntegral in = detail::rsi_integrate(t);
    detail::quad mag = cabsq(in.value);
    detail::quad rel = in.err / mag;
    if (!(rel <= 1e-6Q)) throw QuadratureError("rsi_numeric: estimated error above 1e-6 relative");
    RsiValue r;
    r.method = RsiMethod::numeric;
    r.value = detail::to_complex(in.value * expq(3 * M_PIq * detail::quad(t) / 4));
    r.est_err = double(rel);
    return r;
}

// 2 Re[e^{i theta} I(t)] with the projection done in quad precision; the real part cancels to O(1).
inline double rsi_hardy_z(double t) {
    detail::RsiIntegral in = detail::rsi_integrate(t);
    detail::quad th = theta_quad(t);
    detail::cquad rot = detail::cq(cosq(th), sinq(th)) * in.value;
    return double(2 * __real__ rot * expq(3 * M_PIq * detail::quad(t) / 4));
}

inline RsiValue rsi_asymptotic(double t) {
    if (!(t > 5.0)) throw std::out_of_range("rsi_asymptotic: requires t > 5");
    const double pi = xconst::pi;
    double x = std::sqrt(pi * t / 2.0);
    double e2 = std::exp(-2.0 * x), e4 = e2 * e2;
    // hyperbolic ratios with the common factor e^{-x} taken out
    double s1c2 = (1.0 - e2) / (1.0 + e4);
    double c1c2 = (1.0 + e2) / (1.0 + e4);
    double sech2 = 4.0 * e4 / ((1.0 + e4) * (1.0 + e4));
    double t2 = (1.0 - e4) / (1.0 + e4);
    double first = std::pow(pi / (2.0 * t), 0.25) * s1c2;
    double second = std::pow(pi, 1.75) / (48.0 * std::pow(2.0 * t, 0.75)) *
                    (2.0 * s1c2 * t2 * (24.0 * sech2 - 7.0) + c1c2 * (13.0 - 24.0 * sech2));
    double bracket = (first - second) / (1.0 + std::exp(-2.0 * pi * t));
    double th = double(fmodq(theta_quad(t), 2 * M_PIq));
    // i e^{-i theta} = sin theta + i cos theta
    std::complex<double> m{bracket * std::sin(th), bracket * std::cos(th)};
    double log_mag = pi * t / 2.0 - x;
    RsiValue r;
    r.method = RsiMethod::asymptotic;
    if (log_mag < 700.0) {
        r.value = m * std::exp(log_mag);
    } else {
        r.value = m;
        r.log_scale = log_mag;
    }
    r.est_err = 1.0 / t;
    return r;
}

}  // namespace hardyz
