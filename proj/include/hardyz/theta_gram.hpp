#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/special_functions/lambert_w.hpp>

#include "hardyz/xprec.hpp"

namespace hardyz {

using GramIndex = std::int64_t;

struct ScaleSet {
    double t = 0.0;
    double a = 0.0;        // sqrt(8t/pi)
    std::int64_t n_t = 0;  // floor(sqrt(t/2pi))
    double eps = 0.0;      // a - NINT_O(a)
    bool transition_zone = false;
};

// The four-term expansion with no range check; theta_x guards it.
inline ExtendedReal theta_series_x(double t) {
    double half = 0.5 * t;
    ExtendedReal lead = (ext_log(t) - xconst::ln2pi_x) * half;
    ExtendedReal th = lead - half - xconst::pi_over_8_x;
    return th + (1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t));
}

// theta(t) as a two-word value; the log is carried in extended precision.
inline ExtendedReal theta_x(double t) {
    if (!(t > 10.0)) throw std::domain_error("theta: requires t > 10");
    return theta_series_x(t);
}

inline double theta(double t) { return theta_x(t).value(); }

inline double theta_prime(double t) {
    return 0.5 * std::log(t / xconst::two_pi_d) - 1.0 / (48.0 * t * t) - 7.0 / (1920.0 * t * t * t * t);
}

inline double gram_point(GramIndex n) {
    if (n < 0) throw std::domain_error("gram_point: n must be >= 0");
    // theta ~ (t/2) log(t/(2 pi e)) - pi/8, so t = 2 pi e x / W(x) with x = (n + 1/8)/e.
    double x = (double(n) + 0.125) / M_E;
    double t = xconst::two_pi_d * M_E * x / boost::math::lambert_w0(x);
    if (t < 17.0) t = 17.0;
    ExtendedReal target = xconst::pi_x * double(n);
    double tol = std::max(1e-9, double(n) * xconst::pi * 1e-13);
    for (int it = 0; it < 64; ++it) {
        double r = (theta_x(t) - target).value();
        double step = r / theta_prime(t);
        t -= step;
        if (std::fabs(r) <= tol && std::fabs(step) <= 1e-15 * t) return t;
        if (std::fabs(step) <= 4e-16 * t) {
            double r2 = (theta_x(t) - target).value();
            if (std::fabs(r2) <= tol) return t;
        }
    }
    throw std::runtime_error("gram_point: Newton iteration did not converge");
}

inline std::int64_t odd_floor(double x) {
    if (!(x >= 1.0)) throw std::domain_error("odd_floor: requires x >= 1");
    auto n = static_cast<std::int64_t>(std::floor(x));
    return (n % 2 != 0) ? n : n - 1;
}

// Nearest odd integer; an even-integer x (a tie) goes up.
inline std::int64_t odd_nearest(double x) {
    std::int64_t o = odd_floor(x);
    return (x - double(o) >= 1.0) ? o + 2 : o;
}

inline ExtendedReal a_x(double t) { return sqrt(ExtendedReal(8.0 * t) / xconst::pi_x); }

inline std::int64_t n_t_of(double t) {
    auto n = static_cast<std::int64_t>(std::floor(std::sqrt(t / xconst::two_pi_d)));
    auto above = [t](std::int64_t k) { return (xconst::two_pi_x * (double(k) * double(k))).value() > t; };
    while (n > 0 && above(n)) --n;
    while (!above(n + 1)) ++n;
    return n;
}

inline ScaleSet scales(double t) {
    if (!(t > 30.0)) throw std::domain_error("scales: requires t > 30");
    ScaleSet s;
    s.t = t;
    s.a = std::sqrt(8.0 * t / xconst::pi);
    s.n_t = n_t_of(t);
    s.eps = s.a - double(odd_nearest(s.a));
    s.transition_zone = std::fabs(s.eps) < std::pow(t, -1.0 / 6.0);
    return s;
}

}  // namespace hardyz
