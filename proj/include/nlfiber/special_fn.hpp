#pragma once

// Real special functions used by the channel model.
//
// Branch cutoffs (chosen where the truncation error of the asymptotic form
// falls below double rounding, or where series cancellation stays under ~2 digits):
//   J0, Y0   power series x <= 5, Miller/Neumann 5 < x <= 25, Hankel x > 25
//   I0       power series |x| <= 30, large-argument expansion beyond
//   H0       power series x <= 6, Y0 + (2/pi) G(x) beyond
//   G        (pi/2)(H0 - Y0) for alpha <= 3, Kronrod quadrature beyond
//   1F1(a;1;z)  Kummer series z <= 60, large-z expansion beyond
//   digamma  upward recurrence to x >= 10, then Stirling-type series

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "quadrature.hpp"

namespace nlfiber::special {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct SpecialFnResult {
    double value = 0.0;
    double abs_error = 0.0;
};

namespace detail {

inline constexpr double eps = std::numeric_limits<double>::epsilon();
inline constexpr double two_over_pi = 0.63661977236758134307553505349005745;

inline void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

struct J0Y0 {
    double j0, y0, err;
};

inline J0Y0 j0y0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, harmonic = 0.0;
    double j = 1.0, ysum = 0.0, big = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        j += term;
        ysum -= harmonic * term;
        big = std::max(big, std::abs(term) * harmonic);
        if (std::abs(term) * harmonic < 1e-18 * std::abs(ysum) && std::abs(term) < 1e-18) break;
    }
    const double y = two_over_pi * ((std::log(0.5 * x) + euler_gamma) * j + ysum);
    return {j, y, 4.0 * eps * big};
}

// Backward recurrence for J_n normalised by J0 + 2 sum J_2k = 1; the same
// sequence feeds the Neumann series for Y0.
inline J0Y0 j0y0_miller(double x) {
    int m = static_cast<int>(x + 30.0 + 10.0 * std::cbrt(x));
    if (m % 2) ++m;
    double jp1 = 0.0, jn = 1e-30;
    double norm = 0.0, ysum = 0.0;
    for (int n = m; n >= 1; --n) {
        const double jm1 = (2.0 * n / x) * jn - jp1;
        jp1 = jn;
        jn = jm1;
        const int idx = n - 1;
        if (idx > 0 && idx % 2 == 0) {
            const int k = idx / 2;
            norm += 2.0 * jn;
            ysum += ((k % 2) ? -jn : jn) / k;
        }
        if (std::abs(jn) > 1e250) {
            jn *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            ysum *= 1e-250;
        }
    }
    norm += jn;
    const double j0 = jn / norm;
    const double y0 = two_over_pi * (std::log(0.5 * x) + euler_gamma) * j0 - 2.0 * two_over_pi * ysum / norm;
    return {j0, y0, 16.0 * eps};
}

inline J0Y0 j0y0_hankel(double x) {
    double p = 0.0, q = 0.0, t = 1.0, last = 2.0;
    for (int k = 0; k < 400; ++k) {
        if (k > 0) t *= -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
        const double at = std::abs(t);
        if (at > last) break;
        last = at;
        switch (k % 4) {
            case 0: p += t; break;
            case 1: q += t; break;
            case 2: p -= t; break;
            case 3: q -= t; break;
        }
        if (at < 1e-17) break;
    }
    const double s = std::sin(x), c = std::cos(x);
    const double cw = (c + s) * M_SQRT1_2;  // cos(x - pi/4)
    const double sw = (s - c) * M_SQRT1_2;  // sin(x - pi/4)
    const double amp = std::sqrt(two_over_pi / x);
    return {amp * (p * cw - q * sw), amp * (p * sw + q * cw), amp * (8.0 * eps + last)};
}

inline J0Y0 j0y0(double x) {
    if (x <= 5.0) return j0y0_series(x);
    if (x <= 25.0) return j0y0_miller(x);
    return j0y0_hankel(x);
}

inline double struve_h0_series(double x, double* err = nullptr) {
    const double q = x * x;
    double term = x, sum = x, big = std::abs(x);
    for (int k = 1; k < 300; ++k) {
        const double d = 2.0 * k + 1.0;
        term *= -q / (d * d);
        sum += term;
        big = std::max(big, std::abs(term));
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    if (err) *err = two_over_pi * 4.0 * eps * big;
    return two_over_pi * sum;
}

inline SpecialFnResult g_quadrature(double alpha) {
    // G(alpha) = (1/alpha) int_0^inf e^{-t} / sqrt(1 + (t/alpha)^2) dt
    quad::Options opt;
    opt.rel_tol = 1e-14;
    auto f = [alpha](double t) {
        const double r = t / alpha;
        return std::exp(-t) / std::sqrt(1.0 + r * r);
    };
    const auto r = quad::integrate(f, {0.0, std::min(alpha, 50.0), 50.0}, opt);
    return {r.value / alpha, (r.abs_error + 2e-22) / alpha};
}

inline SpecialFnResult gamma_series_1f1(double a, double z) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 10000; ++k) {
        term *= (a + k) * z / ((k + 1.0) * (k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return {sum, 8.0 * eps * std::abs(sum)};
}

// log of 1F1(a;1;z) for large z: e^z z^{a-1}/Gamma(a) * sum (1-a)_s^2 / (s! z^s).
inline SpecialFnResult log_1f1_asymptotic(double a, double z) {
    double term = 1.0, sum = 1.0, last = 2.0;
    for (int s = 0; s < 500; ++s) {
        term *= (1.0 - a + s) * (1.0 - a + s) / ((s + 1.0) * z);
        const double at = std::abs(term);
        if (at > last || at < 1e-17) {
            last = std::min(last, at);
            break;
        }
        sum += term;
        last = at;
    }
    return {z + (a - 1.0) * std::log(z) - std::lgamma(a) + std::log(sum), 8.0 * eps * z + last};
}

}  // namespace detail

inline SpecialFnResult bessel_j0_e(double x) {
    detail::require_finite(x, "bessel_j0");
    x = std::abs(x);
    const auto r = detail::j0y0(x);
    return {r.j0, r.err};
}
inline double bessel_j0(double x) { return bessel_j0_e(x).value; }

inline SpecialFnResult bessel_y0_e(double x) {
    detail::require_finite(x, "bessel_y0");
    if (x <= 0.0) throw std::domain_error("bessel_y0: x must be positive");
    const auto r = detail::j0y0(x);
    return {r.y0, r.err * std::max(1.0, std::abs(std::log(x)))};
}
inline double bessel_y0(double x) { return bessel_y0_e(x).value; }

// e^{-|x|} I0(x)
inline double bessel_i0_scaled(double x) {
    detail::require_finite(x, "bessel_i0");
    x = std::abs(x);
    if (x <= 30.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum * std::exp(-x);
    }
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

inline double log_bessel_i0(double x) { return std::abs(x) + std::log(bessel_i0_scaled(x)); }

inline double bessel_i0(double x) {
    const double ax = std::abs(x);
    if (ax > 700.0) {
        const double l = log_bessel_i0(x);
        if (l > std::log(std::numeric_limits<double>::max()))
            throw std::overflow_error("bessel_i0: result overflows, use log_bessel_i0 or bessel_i0_scaled");
        return std::exp(l);
    }
    return bessel_i0_scaled(x) * std::exp(ax);
}

inline double gamma_fn(double x) {
    detail::require_finite(x, "gamma_fn");
    if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("gamma_fn: pole at non-positive integer");
    return std::tgamma(x);
}

inline double log_gamma(double x) {
    detail::require_finite(x, "log_gamma");
    if (x <= 0.0) throw std::domain_error("log_gamma: x must be positive");
    return std::lgamma(x);
}

inline double digamma(double x) {
    detail::require_finite(x, "digamma");
    if (x == 1.0) return -euler_gamma;
    if (x == 0.5) return -euler_gamma - 2.0 * M_LN2;
    if (x <= 0.0) {
        if (x == std::floor(x)) throw std::domain_error("digamma: pole at non-positive integer");
        return digamma(1.0 - x) - M_PI / std::tan(M_PI * x);
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    const double series =
        r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12.0))))));
    return acc + std::log(x) - 0.5 / x - series;
}

inline SpecialFnResult g_of_alpha_e(double alpha);

inline SpecialFnResult struve_h0_e(double x) {
    detail::require_finite(x, "struve_h0");
    const double sgn = x < 0.0 ? -1.0 : 1.0;
    x = std::abs(x);
    if (x <= 6.0) {
        double err = 0.0;
        const double v = detail::struve_h0_series(x, &err);
        return {sgn * v, err};
    }
    const auto y = bessel_y0_e(x);
    const auto g = g_of_alpha_e(x);
    return {sgn * (y.value + detail::two_over_pi * g.value), y.abs_error + detail::two_over_pi * g.abs_error};
}
inline double struve_h0(double x) { return struve_h0_e(x).value; }

// G(alpha) = int_0^inf e^{-alpha z} / sqrt(1 + z^2) dz = (pi/2)(H0(alpha) - Y0(alpha))
inline SpecialFnResult g_of_alpha_e(double alpha) {
    detail::require_finite(alpha, "g_of_alpha");
    if (alpha <= 0.0) throw std::domain_error("g_of_alpha: alpha must be positive");
    if (alpha <= 3.0) {
        double herr = 0.0;
        const double h = detail::struve_h0_series(alpha, &herr);
        const auto y = detail::j0y0(alpha);
        const double v = 0.5 * M_PI * (h - y.y0);
        return {v, 0.5 * M_PI * (herr + y.err * std::max(1.0, std::abs(std::log(alpha)))) + 2.0 * detail::eps * std::abs(v)};
    }
    return detail::g_quadrature(alpha);
}
inline double g_of_alpha(double alpha) { return g_of_alpha_e(alpha).value; }

// G'(alpha) = -int_0^inf z e^{-alpha z} / sqrt(1 + z^2) dz, by its own quadrature.
inline SpecialFnResult g_of_alpha_derivative_e(double alpha) {
    detail::require_finite(alpha, "g_of_alpha_derivative");
    if (alpha <= 0.0) throw std::domain_error("g_of_alpha_derivative: alpha must be positive");
    quad::Options opt;
    opt.rel_tol = 1e-14;
    auto f = [alpha](double t) {
        const double r = t / alpha;
        return t * std::exp(-t) / std::sqrt(1.0 + r * r);
    };
    std::vector<double> pts{0.0};
    if (alpha < 50.0) pts.push_back(alpha);
    pts.push_back(60.0);
    const auto r = quad::integrate(f, pts, opt);
    const double a2 = alpha * alpha;
    return {-r.value / a2, (r.abs_error + 1e-24) / a2};
}
inline double g_of_alpha_derivative(double alpha) { return g_of_alpha_derivative_e(alpha).value; }

// Confluent hypergeometric 1F1(a; 1; z).
inline SpecialFnResult log_hyp1f1_b1_e(double a, double z) {
    detail::require_finite(a, "hyp1f1");
    detail::require_finite(z, "hyp1f1");
    if (a <= 0.0) throw std::domain_error("hyp1f1: a must be positive");
    if (z < 0.0) {
        // Kummer: 1F1(a;1;z) = e^z 1F1(1-a;1;-z); only used for modest |z|.
        const auto s = detail::gamma_series_1f1(1.0 - a, -z);
        if (s.value <= 0.0) throw std::domain_error("hyp1f1: non-positive value, log undefined");
        return {z + std::log(s.value), s.abs_error / s.value};
    }
    if (z <= 60.0) {
        const auto s = detail::gamma_series_1f1(a, z);
        return {std::log(s.value), s.abs_error / s.value};
    }
    return detail::log_1f1_asymptotic(a, z);
}

inline double log_hyp1f1_b1(double a, double z) { return log_hyp1f1_b1_e(a, z).value; }

inline double hyp1f1_b1(double a, double z) {
    const double l = log_hyp1f1_b1(a, z);
    if (l > std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error("hyp1f1: result overflows, use log_hyp1f1_b1");
    return std::exp(l);
}

}  // namespace nlfiber::special
