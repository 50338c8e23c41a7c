#pragma once

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hardyz/xprec.hpp"

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline big from(hardyz::ExtendedReal x) { return big(x.hi) + big(x.lo); }

inline big two_pi() { return 2 * boost::math::constants::pi<big>(); }

// x mod 2pi in [0, 2pi)
inline big mod_two_pi(const big& x) {
    big tp = two_pi();
    big r = x - floor(x / tp) * tp;
    if (r < 0) r += tp;
    return r;
}

// Distance between two angles on the circle.
inline double circ_dist(double a, const big& b) {
    big d = mod_two_pi(big(a) - b);
    double dd = static_cast<double>(d);
    return std::min(dd, 2 * M_PI - dd);
}

inline double circ_dist(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 2 * M_PI);
    return std::min(d, 2 * M_PI - d);
}

}  // namespace oracle
