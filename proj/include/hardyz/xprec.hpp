#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace hardyz {

// Unevaluated sum hi + lo of two binary64 values (about 32 significant digits).
struct ExtendedReal {
    double hi = 0.0;
    double lo = 0.0;

    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double h) : hi(h) {}
    constexpr ExtendedReal(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

struct PhaseAngle {
    double value = 0.0;    // radians in [0, 2pi)
    double abs_err = 0.0;  // bound on the accumulated reduction error
    bool degraded = false; // set when the input was outside the supported range
};

enum class RangeCheck { strict, flag };

inline ExtendedReal two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline ExtendedReal quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline ExtendedReal two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline ExtendedReal operator-(ExtendedReal x) { return {-x.hi, -x.lo}; }

inline ExtendedReal operator+(ExtendedReal x, ExtendedReal y) {
    ExtendedReal s = two_sum(x.hi, y.hi);
    ExtendedReal e = two_sum(x.lo, y.lo);
    s.lo += e.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += e.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline ExtendedReal operator+(ExtendedReal x, double y) {
    ExtendedReal s = two_sum(x.hi, y);
    s.lo += x.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline ExtendedReal operator-(ExtendedReal x, ExtendedReal y) { return x + (-y); }
inline ExtendedReal operator-(ExtendedReal x, double y) { return x + (-y); }

inline ExtendedReal operator*(ExtendedReal x, ExtendedReal y) {
    ExtendedReal p = two_prod(x.hi, y.hi);
    p.lo += x.hi * y.lo + x.lo * y.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline ExtendedReal operator*(ExtendedReal x, double y) {
    ExtendedReal p = two_prod(x.hi, y);
    p.lo += x.lo * y;
    return quick_two_sum(p.hi, p.lo);
}

// Long division with a single machine reciprocal; each step gains ~53 bits.
inline ExtendedReal operator/(ExtendedReal x, double y) {
    double inv = 1.0 / y;
    double q1 = x.hi * inv;
    ExtendedReal r = x - two_prod(q1, y);
    double q2 = r.hi * inv;
    r = r - two_prod(q2, y);
    double q3 = r.hi * inv;
    return quick_two_sum(q1, q2) + q3;
}

inline ExtendedReal operator/(ExtendedReal x, ExtendedReal y) {
    double inv = 1.0 / y.hi;
    double q1 = x.hi * inv;
    ExtendedReal r = x - y * q1;
    double q2 = r.hi * inv;
    r = r - y * q2;
    double q3 = r.hi * inv;
    return quick_two_sum(q1, q2) + q3;
}

// Two-step quotient, relative error near 1e-31; for hot loops.
inline ExtendedReal div_fast(ExtendedReal x, ExtendedReal y) {
    double inv = 1.0 / y.hi;
    double q1 = x.hi * inv;
    ExtendedReal r = x - y * q1;
    return quick_two_sum(q1, r.hi * inv);
}

inline bool operator<(ExtendedReal x, ExtendedReal y) {
    return x.hi < y.hi || (x.hi == y.hi && x.lo < y.lo);
}

inline ExtendedReal ldexp(ExtendedReal x, int e) { return {std::ldexp(x.hi, e), std::ldexp(x.lo, e)}; }

inline ExtendedReal sqrt(ExtendedReal x) {
    if (x.hi <= 0.0) return {};
    double s = std::sqrt(x.hi);
    ExtendedReal p = two_prod(s, s);
    double corr = ((x.hi - p.hi) - p.lo + x.lo) / (2.0 * s);
    return quick_two_sum(s, corr);
}

namespace xconst {
inline constexpr double two_pi[3] = {6.283185307179586, 2.4492935982947064e-16, -5.989539619436679e-33};
inline constexpr ExtendedReal two_pi_x{6.283185307179586, 2.4492935982947064e-16};
inline constexpr ExtendedReal pi_x{3.141592653589793, 1.2246467991473532e-16};
inline constexpr ExtendedReal ln2_x{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr ExtendedReal ln2pi_x{1.8378770664093456, -7.756588316134483e-17};
inline constexpr ExtendedReal pi_over_8_x{0.39269908169872414, 1.5308084989341915e-17};
inline constexpr double inv_two_pi = 0.15915494309189535;
inline constexpr double pi = 3.141592653589793;
inline constexpr double two_pi_d = 6.283185307179586;
inline constexpr double max_phase_t = 1e12;
}  // namespace xconst

namespace detail {

// ln(m) for m in [1/sqrt2, sqrt2] via 2 atanh((m-1)/(m+1)); all in two-word arithmetic.
inline ExtendedReal log_reduced(ExtendedReal m) {
    ExtendedReal s = (m - 1.0) / (m + 1.0);
    ExtendedReal s2 = s * s;
    // 2 s (1 + s^2/3 + s^4/5 + ...); |s| <= 0.1716 so 23 terms reach 1e-34.
    ExtendedReal acc(0.0);
    for (int k = 23; k >= 1; --k) acc = (acc + ExtendedReal(1.0) / double(2 * k + 1)) * s2;
    acc = acc + 1.0;
    return acc * s * 2.0;
}

inline void split_binary(ExtendedReal x, int& k, ExtendedReal& m) {
    int e = 0;
    std::frexp(x.hi, &e);  // x.hi = f * 2^e with f in [0.5, 1)
    m = ldexp(x, -e);
    k = e;
    if (m.hi < 0.7071067811865476) {
        m = m * 2.0;
        k -= 1;
    }
}

struct LogTable {
    static constexpr int bits = 8;
    static constexpr int size = (1 << bits) + 1;
    std::array<ExtendedReal, size> ln_c{};
    std::array<ExtendedReal, size> inv_c{};
    LogTable();
};

}  // namespace detail

// Natural log with relative error below 1e-30.
inline ExtendedReal ext_log(ExtendedReal x) {
    if (!(x.hi > 0.0) || !std::isfinite(x.hi)) throw std::domain_error("ext_log: argument must be positive and finite");
    if (x.hi == 1.0 && x.lo == 0.0) return {};
    int k = 0;
    ExtendedReal m;
    detail::split_binary(x, k, m);
    ExtendedReal r = detail::log_reduced(m);
    if (k != 0) r = xconst::ln2_x * double(k) + r;
    return r;
}

inline ExtendedReal ext_log(double x) { return ext_log(ExtendedReal(x)); }

namespace detail {

inline LogTable::LogTable() {
    for (int j = 0; j < size; ++j) {
        double c = 1.0 + std::ldexp(double(j), -bits);
        ln_c[j] = ext_log(c);
        inv_c[j] = ExtendedReal(1.0) / c;
    }
}

inline const LogTable& log_table() {
    static const LogTable table;
    return table;
}

}  // namespace detail

// Table-driven log for hot loops; absolute error about 1e-27 for arguments up to 1e13.
inline ExtendedReal log_fast(ExtendedReal x) {
    auto bits = std::bit_cast<std::uint64_t>(x.hi);
    int e = int((bits >> 52) & 0x7ff) - 1023;
    if (e <= -1000 || e >= 1000 || x.hi <= 0.0) return ext_log(x);
    const auto& tab = detail::log_table();
    double scale = std::bit_cast<double>(std::uint64_t(1023 - e) << 52);
    ExtendedReal m{x.hi * scale, x.lo * scale};  // [1, 2)
    int j = int((m.hi - 1.0) * (1 << detail::LogTable::bits) + 0.5);
    double c = 1.0 + double(j) * (1.0 / (1 << detail::LogTable::bits));
    ExtendedReal r = two_sum(m.hi - c, m.lo) * tab.inv_c[j];
    ExtendedReal r2 = r * r;
    constexpr ExtendedReal third{0.3333333333333333, 1.850371707708594e-17};
    ExtendedReal r3t = r2 * r * third;
    double rh = r.hi;
    // log1p(r) = r - r^2/2 + r^3/3 - r^4/4 + ...
    double tail = rh * rh * rh * rh *
                  (-1.0 / 4 + rh * (1.0 / 5 + rh * (-1.0 / 6 + rh * (1.0 / 7 + rh * (-1.0 / 8 + rh * (1.0 / 9))))));
    ExtendedReal l1p = r - ExtendedReal(0.5 * r2.hi, 0.5 * r2.lo) + r3t + tail;
    ExtendedReal out = tab.ln_c[j] + l1p;
    if (e != 0) out = xconst::ln2_x * double(e) + out;
    return out;
}

inline ExtendedReal log_fast(double x) { return log_fast(ExtendedReal(x)); }

// Reduce a two-word value modulo 2pi against a three-word 2pi.
inline PhaseAngle reduce_two_pi(ExtendedReal x, double in_err = 0.0) {
    double k = std::nearbyint(x.hi * xconst::inv_two_pi);
    ExtendedReal r = x;
    if (k != 0.0) {
        ExtendedReal p1 = two_prod(k, xconst::two_pi[0]);
        ExtendedReal p2 = two_prod(k, xconst::two_pi[1]);
        double p3 = k * xconst::two_pi[2];
        r = ExtendedReal(x.hi - p1.hi) + x.lo;
        r = r - p1.lo;
        r = r - p2;
        r = r - p3;
    }
    if (r.hi < 0.0) r = r + xconst::two_pi_x;
    if (!(r < xconst::two_pi_x)) r = r - xconst::two_pi_x;
    double v = r.hi + r.lo;
    if (v >= xconst::two_pi_d) v = 0.0;
    if (v < 0.0) v = 0.0;
    PhaseAngle out;
    out.value = v;
    out.abs_err = in_err + std::fabs(x.hi) * 0x1p-100 + 4.5e-16;
    return out;
}

// (t * L) mod 2pi with the product formed in two-word arithmetic.
inline PhaseAngle phase_reduce(double t, ExtendedReal L, RangeCheck check = RangeCheck::strict) {
    bool out_of_range = !(t >= 0.0) || t > xconst::max_phase_t || !std::isfinite(L.hi);
    if (out_of_range && check == RangeCheck::strict)
        throw std::out_of_range("phase_reduce: t must lie in [0, 1e12]");
    if (t == 0.0 || (L.hi == 0.0 && L.lo == 0.0)) return {};
    ExtendedReal p = L * t;
    PhaseAngle out = reduce_two_pi(p, std::fabs(p.hi) * 0x1p-102);
    if (out_of_range) {
        out.degraded = true;
        out.abs_err += std::fabs(p.hi) * 0x1p-104 * 16.0;
    }
    return out;
}

}  // namespace hardyz
