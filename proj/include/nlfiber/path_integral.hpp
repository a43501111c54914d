#pragma once

#include <cmath>
#include <stdexcept>

#include "channel.hpp"

namespace nlfiber {

// Fluctuation matrix of the discretised quadratic action: M_ii = 2 + a,
// M_{i,i+-1} = -1 + a, otherwise a, with a = 4 mu^2 / N^3, size (N-1)x(N-1).
inline double fluctuation_alpha(int n, double mu) {
    const double nd = n;
    return 4.0 * mu * mu / (nd * nd * nd);
}

inline double det_m(int n, double mu) {
    if (n < 2) throw std::invalid_argument("det_m: n must be >= 2");
    const double nd = n;
    const double a = fluctuation_alpha(n, mu);
    return nd + a * nd * nd * (nd * nd - 1.0) / 12.0;
}

inline double m_inverse_entry(int n, double mu, int i, int j) {
    if (n < 2) throw std::invalid_argument("m_inverse_entry: n must be >= 2");
    if (i < 1 || j < 1 || i > n - 1 || j > n - 1) throw std::out_of_range("m_inverse_entry: index outside [1, n-1]");
    const double nd = n;
    const double a = fluctuation_alpha(n, mu);
    const double x = i / nd, y = j / nd;
    const double bridge = i <= j ? x * (1.0 - y) : y * (1.0 - x);
    const double c = a * nd * nd * nd * nd / (4.0 * det_m(n, mu));
    return nd * (bridge - c * x * (1.0 - x) * y * (1.0 - y));
}

struct GreenEval {
    double g11 = 0.0;
    double g12 = 0.0;
    double g21 = 0.0;
    double g22 = 0.0;
};

namespace detail {

// G^{12} in reduced coordinates a = z/L, b = z'/L; theta at a = b follows the
// retarded branch: theta(b - a) = 0, theta(a - b) = 1.
inline double green12(double a, double b, double m) {
    const double m2 = m * m;
    const double t_ab = a >= b ? 1.0 : 0.0;
    const double t_ba = 1.0 - t_ab;
    return m / (2.0 * (3.0 + m2)) *
           (t_ab * b * (1.0 - a) * (3.0 * b - 3.0 * a + b * m2 * (1.0 + a * (2.0 * b - 3.0))) +
            t_ba * a * (1.0 - b) * (3.0 * b - 3.0 * a + (b - 1.0) * m2 * (a + 2.0 * b * (a - 1.0))));
}

inline double green11_half(double a, double b, double t, double m) {
    const double m2 = m * m;
    return t * a / 2.0 * (1.0 - b) - 3.0 * m2 / (4.0 * (3.0 + m2)) * (1.0 - a) * (1.0 - b) * a * b;
}

inline double green22_half(double a, double b, double t, double m) {
    const double m2 = m * m;
    return t / (6.0 * (3.0 + m2)) * (1.0 - a) * b *
           (9.0 + 3.0 * m2 * (1.0 + a - 2.0 * a * a + 3.0 * a * b - 2.0 * b * b) +
            2.0 * m2 * m2 * b * (a - 1.0) * (b - 3.0 * a + 2.0 * a * b));
}

}  // namespace detail

// Green matrix of K = 2[[-d^2 + 4mu^2/L^2, -2mu/L d], [2mu/L d, -d^2]], K G = delta/L.
inline GreenEval green_matrix(double z, double zp, double mu, double length) {
    if (!(length > 0.0)) throw std::invalid_argument("green_matrix: length must be positive");
    if (!(z >= 0.0 && z <= length && zp >= 0.0 && zp <= length))
        throw std::domain_error("green_matrix: coordinates outside [0, L]");
    const double a = z / length, b = zp / length;
    const double t_ab = a >= b ? 1.0 : 0.0;
    const double t_ba = 1.0 - t_ab;
    GreenEval g;
    g.g11 = detail::green11_half(a, b, t_ba, mu) + detail::green11_half(b, a, t_ab, mu);
    g.g12 = detail::green12(a, b, mu);
    g.g21 = detail::green12(b, a, mu);
    g.g22 = detail::green22_half(a, b, t_ab, mu) + detail::green22_half(b, a, t_ba, mu);
    return g;
}

// Pre-exponential factor of P[Y|X] including the 1/rho correction.
inline double quantum_correction(const ReducedCoords& rc, double rho, const ChannelParams& params) {
    if (!(rho > 0.0)) throw std::domain_error("quantum_correction: rho must be positive");
    const double m = rc.mu;
    const double d = 1.0 + m * m / 3.0;
    const double ql = params.noise_power();
    const double linear = (m / rho) / (15.0 * d * d) * (m * (15.0 + m * m) * rc.x0 - 2.0 * (5.0 - m * m / 3.0) * rc.y0);
    return (1.0 - linear) / (M_PI * ql * std::sqrt(d));
}

}  // namespace nlfiber
