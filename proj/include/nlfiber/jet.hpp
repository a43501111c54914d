#pragma once

// Truncated Taylor series arithmetic: Jet<N> holds c_0..c_N of f(x0 + h) in powers of h.

#include <array>
#include <cmath>
#include <cstddef>

namespace nlfiber {

template <std::size_t N>
struct Jet {
    std::array<double, N + 1> c{};

    Jet() = default;
    Jet(double v) { c[0] = v; }  // NOLINT: implicit scalar promotion is intended

    static Jet variable(double x0) {
        Jet j(x0);
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }

    Jet& operator+=(const Jet& o) {
        for (std::size_t i = 0; i <= N; ++i) c[i] += o.c[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t i = 0; i <= N; ++i) c[i] -= o.c[i];
        return *this;
    }
    Jet operator-() const {
        Jet r;
        for (std::size_t i = 0; i <= N; ++i) r.c[i] = -c[i];
        return r;
    }
};

template <std::size_t N>
Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <std::size_t N>
Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <std::size_t N>
Jet<N> operator+(Jet<N> a, double b) { a.c[0] += b; return a; }
template <std::size_t N>
Jet<N> operator+(double b, Jet<N> a) { a.c[0] += b; return a; }
template <std::size_t N>
Jet<N> operator-(Jet<N> a, double b) { a.c[0] -= b; return a; }
template <std::size_t N>
Jet<N> operator-(double b, const Jet<N>& a) { return Jet<N>(b) - a; }

template <std::size_t N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (std::size_t i = 0; i <= N; ++i)
        for (std::size_t j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}
template <std::size_t N>
Jet<N> operator*(Jet<N> a, double b) {
    for (auto& v : a.c) v *= b;
    return a;
}
template <std::size_t N>
Jet<N> operator*(double b, Jet<N> a) { return a * b; }

template <std::size_t N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (std::size_t k = 0; k <= N; ++k) {
        double s = a.c[k];
        for (std::size_t j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
        r.c[k] = s / b.c[0];
    }
    return r;
}
template <std::size_t N>
Jet<N> operator/(Jet<N> a, double b) {
    for (auto& v : a.c) v /= b;
    return a;
}
template <std::size_t N>
Jet<N> operator/(double a, const Jet<N>& b) { return Jet<N>(a) / b; }

template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::exp(a.c[0]);
    for (std::size_t k = 1; k <= N; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a.c[j] * r.c[k - j];
        r.c[k] = s / static_cast<double>(k);
    }
    return r;
}

template <std::size_t N>
Jet<N> log(const Jet<N>& a) {
    Jet<N> r;
    r.c[0] = std::log(a.c[0]);
    for (std::size_t k = 1; k <= N; ++k) {
        double s = static_cast<double>(k) * a.c[k];
        for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) * r.c[j] * a.c[k - j];
        r.c[k] = s / (static_cast<double>(k) * a.c[0]);
    }
    return r;
}

// a^p for a.c[0] > 0; p == 0 gives the constant 1 even at a.c[0] == 0.
template <std::size_t N>
Jet<N> pow(const Jet<N>& a, double p) {
    if (p == 0.0) return Jet<N>(1.0);
    Jet<N> r;
    r.c[0] = std::pow(a.c[0], p);
    for (std::size_t k = 1; k <= N; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j)
            s += (p * static_cast<double>(j) - static_cast<double>(k - j)) * a.c[j] * r.c[k - j];
        r.c[k] = s / (static_cast<double>(k) * a.c[0]);
    }
    return r;
}

template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) { return pow(a, 0.5); }

}  // namespace nlfiber
