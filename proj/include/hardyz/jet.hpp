#pragma once

#include <array>
#include <cmath>

namespace hardyz::detail {

// Truncated Taylor series c[0] + c[1] h + ... + c[N] h^N.
template <int N>
struct Jet {
    std::array<double, N + 1> c{};

    static Jet variable(double x0) {
        Jet j;
        j.c[0] = x0;
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }
    static Jet constant(double x0) {
        Jet j;
        j.c[0] = x0;
        return j;
    }
};

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

template <int N>
Jet<N> operator*(double s, const Jet<N>& a) {
    Jet<N> r;
    for (int k = 0; k <= N; ++k) r.c[k] = s * a.c[k];
    return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int k = 0; k <= N; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
        r.c[k] = s;
    }
    return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int k = 0; k <= N; ++k) {
        double s = a.c[k];
        for (int j = 0; j < k; ++j) s -= r.c[j] * b.c[k - j];
        r.c[k] = s / b.c[0];
    }
    return r;
}

// Simultaneous sin and cos of a jet via s' = c u', c' = -s u'.
template <int N>
void sincos(const Jet<N>& u, Jet<N>& s, Jet<N>& co) {
    s.c[0] = std::sin(u.c[0]);
    co.c[0] = std::cos(u.c[0]);
    for (int k = 1; k <= N; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int j = 1; j <= k; ++j) {
            ss += j * u.c[j] * co.c[k - j];
            cc -= j * u.c[j] * s.c[k - j];
        }
        s.c[k] = ss / k;
        co.c[k] = cc / k;
    }
}

template <int N>
Jet<N> cos(const Jet<N>& u) {
    Jet<N> s, c;
    sincos(u, s, c);
    return c;
}

// Drop a vanishing constant term: returns f(h)/h truncated to order N-1.
template <int N>
Jet<N - 1> shift_down(const Jet<N>& a) {
    Jet<N - 1> r;
    for (int k = 0; k < N; ++k) r.c[k] = a.c[k + 1];
    return r;
}

}  // namespace hardyz::detail
