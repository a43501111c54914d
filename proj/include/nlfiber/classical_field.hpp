#pragma once

// Classical solutions of the noiseless action and the perturbative expansion
// Psi = (rho + kappa1 + kappa2 + ...) e^{i mu z/L + i phi_X} around Psi0.
// Coordinates: zeta = s = z/L in [0, 1].

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "channel.hpp"

namespace nlfiber {

enum class TrajectoryRegime { trigonometric, hyperbolic };

// mu_c is the integration constant (mu tilde) of the trajectory family, not gamma L |X|^2.
struct TrajectoryConstants {
    TrajectoryRegime regime = TrajectoryRegime::trigonometric;
    double k = 0.0;
    double mu_c = 0.0;
    double zeta0 = 0.0;
    double theta0 = 0.0;
};

template <class T>
struct TrajectoryPointT {
    T rho_sq;
    T theta;
};
using TrajectoryPoint = TrajectoryPointT<double>;

namespace detail {

template <class T>
T sinc(T x) {
    using std::abs, std::sin;
    if (abs(x) < T(1e-4)) {
        const T x2 = x * x;
        return T(1) - x2 / T(6) * (T(1) - x2 / T(20));
    }
    return sin(x) / x;
}

template <class T>
T sinhc(T x) {
    using std::abs, std::sinh;
    if (abs(x) < T(1e-4)) {
        const T x2 = x * x;
        return T(1) + x2 / T(6) * (T(1) + x2 / T(20));
    }
    return sinh(x) / x;
}

template <class T>
T tanhc(T x) {
    using std::abs, std::tanh;
    if (abs(x) < T(1e-4)) {
        const T x2 = x * x;
        return T(1) - x2 / T(3) * (T(1) - T(2) * x2 / T(5));
    }
    return tanh(x) / x;
}

// arctan(c tan u) continued through the poles of tan u (c > 0).
template <class T>
T atan_c_tan(T c, T u) {
    using std::atan2, std::cos, std::sin;
    const T su = sin(u), cu = cos(u);
    return u + atan2((c - T(1)) * su * cu, cu * cu + c * su * su);
}

}  // namespace detail

// Unchecked evaluation; see classical_trajectory for the validated entry point.
template <class T>
TrajectoryPointT<T> trajectory_point(const TrajectoryConstants& c, T gamma_l, T zeta) {
    using std::cos, std::cosh, std::sqrt, std::atan;
    const T k = T(c.k), m = T(c.mu_c);
    const T d = zeta - T(c.zeta0);
    const T u = k * d;
    if (c.regime == TrajectoryRegime::trigonometric) {
        const T s = sqrt(m * m - k * k);
        const T rho_sq = (m + s * cos(T(2) * u)) / (T(2) * gamma_l);
        const T cc = k / (m + s);  // (mu_c - s)/k without cancellation
        const T theta = m / T(2) * d + s * d / T(2) * detail::sinc(T(2) * u) + detail::atan_c_tan(cc, u) + T(c.theta0);
        return {rho_sq, theta};
    }
    const T s = sqrt(m * m + k * k);
    const T rho_sq = (-m + s * cosh(T(2) * u)) / (T(2) * gamma_l);
    const T m_plus_s = m >= T(0) ? m + s : k * k / (s - m);
    const T theta = -m / T(2) * d + s * d / T(2) * detail::sinhc(T(2) * u) - atan(m_plus_s * d * detail::tanhc(u)) + T(c.theta0);
    return {rho_sq, theta};
}

// Smallest rho^2 over zeta in [0, 1].
inline double trajectory_min_rho_sq(const TrajectoryConstants& c, double gamma_l) {
    const double k = c.k, m = c.mu_c;
    if (c.regime == TrajectoryRegime::trigonometric) {
        const double s = std::sqrt(m * m - k * k);
        const double p0 = -2.0 * k * c.zeta0, p1 = 2.0 * k * (1.0 - c.zeta0);
        double cmin = std::min(std::cos(p0), std::cos(p1));
        // An odd multiple of pi inside [p0, p1] reaches cos = -1.
        const double first_odd = std::ceil((p0 / M_PI - 1.0) / 2.0) * 2.0 + 1.0;
        if (k > 0.0 && first_odd * M_PI <= p1) cmin = -1.0;
        return (m + s * cmin) / (2.0 * gamma_l);
    }
    const double s = std::sqrt(m * m + k * k);
    const double zeta = std::clamp(c.zeta0, 0.0, 1.0);
    return (-m + s * std::cosh(2.0 * k * (zeta - c.zeta0))) / (2.0 * gamma_l);
}

inline void validate_constants(const TrajectoryConstants& c, double gamma_l) {
    if (!(gamma_l > 0.0)) throw std::invalid_argument("trajectory: gamma L must be positive");
    if (!(c.k >= 0.0)) throw std::invalid_argument("trajectory: k must be >= 0");
    if (c.regime == TrajectoryRegime::trigonometric && !(c.mu_c >= c.k))
        throw std::invalid_argument("trajectory: trigonometric regime needs mu_c >= k");
    if (!(trajectory_min_rho_sq(c, gamma_l) > 0.0))
        throw std::invalid_argument("trajectory: rho^2 <= 0 on [0, 1], invalid constants");
}

inline TrajectoryPoint classical_trajectory(const TrajectoryConstants& c, double gamma_l, double zeta) {
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::domain_error("classical_trajectory: zeta outside [0, 1]");
    validate_constants(c, gamma_l);
    return trajectory_point<double>(c, gamma_l, zeta);
}

// Action int_0^L |d psi/dz - i gamma |psi|^2 psi|^2 dz along the trajectory (mW/km).
inline double classical_action(const TrajectoryConstants& c, const ChannelParams& params) {
    params.validate();
    const double gl = params.gamma_l();
    validate_constants(c, gl);
    const double k = c.k, m = c.mu_c, z0 = c.zeta0;
    const double pre = k * k / (2.0 * gl * params.length_km);
    if (c.regime == TrajectoryRegime::trigonometric) {
        const double s = std::sqrt(m * m - k * k);
        const double osc = (1.0 - z0) * detail::sinc(2.0 * k * (1.0 - z0)) + z0 * detail::sinc(2.0 * k * z0);
        return pre * (m - s * osc);
    }
    const double s = std::sqrt(m * m + k * k);
    const double osc = (1.0 - z0) * detail::sinhc(2.0 * k * (1.0 - z0)) + z0 * detail::sinhc(2.0 * k * z0);
    return pre * (m + s * osc);
}

struct Kappa1Coeffs {
    double a1 = 0.0;
    double a2 = 0.0;
};

inline Kappa1Coeffs kappa1_coeffs(const ReducedCoords& rc) {
    const double mu = rc.mu;
    const double d = 1.0 + mu * mu / 3.0;
    return {(-mu * rc.x0 + rc.y0) / d, ((1.0 - 2.0 * mu * mu / 3.0) * rc.x0 + mu * rc.y0) / d};
}

template <class T>
std::complex<T> kappa1_t(T mu, T x0, T y0, T s) {
    const T d = T(1) + mu * mu / T(3);
    const T a1 = (-mu * x0 + y0) / d;
    const T a2 = ((T(1) - T(2) * mu * mu / T(3)) * x0 + mu * y0) / d;
    const T x = (-mu * a1 * s + a2) * s;
    const T y = (-T(2) / T(3) * mu * mu * a1 * s * s + mu * a2 * s + a1) * s;
    return {x, y};
}

inline cplx kappa1(const ReducedCoords& rc, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("kappa1: z/L outside [0, 1]");
    return kappa1_t<double>(rc.mu, rc.x0, rc.y0, s);
}

template <class T>
std::complex<T> kappa2_t(T m, T rho, T X, T Y, T s) {
    const T m2 = m * m, m3 = m2 * m, m4 = m2 * m2, m6 = m4 * m2;
    const T d = T(1) + m2 / T(3);
    const T pre = -(m / rho) / (T(270) * d * d * d) * (T(1) - s) * s;
    const T s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    const T w = Y - m * X;
    const T bx = m * (T(2) * m4 - T(15) * m2 + T(585)) * X * X + T(2) * (T(13) * m2 * (m2 + T(15)) - T(180)) * X * Y +
                 m * (T(2) * m2 + T(15)) * (T(5) * m2 - T(9)) * Y * Y -
                 T(5) * (m2 + T(3)) * s * (m * (m2 - T(15)) * X * X - T(4) * (m2 - T(6)) * X * Y + m * (m2 + T(9)) * Y * Y) +
                 T(5) * m * (m2 + T(3)) * s2 * (T(3) * (T(5) * m2 - T(3)) * X * X - T(36) * m * X * Y - (m2 - T(15)) * Y * Y) +
                 T(20) * m2 * (m2 + T(3)) * s3 * w * (T(2) * m * Y - (m2 - T(3)) * X) -
                 T(20) * m3 * (m2 + T(3)) * s4 * w * w;
    const T by = (T(7) * m4 - T(75) * m2 + T(360)) * X * X + T(6) * m * (m2 + T(75)) * X * Y +
                 T(3) * m2 * (T(5) * m2 + T(39)) * Y * Y +
                 T(2) * s *
                     ((m6 - T(4) * m4 + T(255) * m2 + T(180)) * X * X + m * (m2 + T(15)) * (T(13) * m2 + T(3)) * X * Y +
                      m2 * (T(5) * m4 + T(36) * m2 - T(9)) * Y * Y) -
                 T(14) * m * (m2 + T(3)) * s2 * w * ((T(15) - T(4) * m2) * X + T(9) * m * Y) +
                 T(84) * m2 * (m2 + T(3)) * s3 * w * w;
    return {pre * bx, pre * by};
}

inline cplx kappa2(const ReducedCoords& rc, double rho, double s) {
    if (!(rho > 0.0)) throw std::domain_error("kappa2: rho must be positive");
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("kappa2: z/L outside [0, 1]");
    return kappa2_t<double>(rc.mu, rho, rc.x0, rc.y0, s);
}

// Leading part of S/Q: [(1 + 4mu^2/3) x0^2 - 2 mu x0 y0 + y0^2] / (QL (1 + mu^2/3)).
inline double action_quadratic(const ReducedCoords& rc, double ql) {
    const double mu = rc.mu, x = rc.x0, y = rc.y0;
    const double form = (1.0 + 4.0 * mu * mu / 3.0) * x * x - 2.0 * mu * x * y + y * y;
    return form / (ql * (1.0 + mu * mu / 3.0));
}

// Cubic correction to S/Q, suppressed by 1/rho relative to the quadratic part.
inline double action_cubic(const ReducedCoords& rc, double rho, double ql) {
    if (!(rho > 0.0)) throw std::domain_error("action_cubic: rho must be positive");
    const double m = rc.mu, x = rc.x0, y = rc.y0;
    const double m2 = m * m, m4 = m2 * m2;
    const double d = 1.0 + m2 / 3.0;
    const double poly = m * (4.0 * m4 + 15.0 * m2 + 225.0) * x * x * x + (23.0 * m4 + 255.0 * m2 - 90.0) * x * x * y +
                        m * (20.0 * m4 + 117.0 * m2 - 45.0) * x * y * y - 3.0 * (5.0 * m4 + 33.0 * m2 + 30.0) * y * y * y;
    return (m / rho) / (135.0 * ql * d * d * d) * poly;
}

inline double action_nlo(const ReducedCoords& rc, double rho, const ChannelParams& params) {
    if (!(rho > 0.0)) throw std::domain_error("action_nlo: rho must be positive");
    const double ql = params.noise_power();
    return action_quadratic(rc, ql) + action_cubic(rc, rho, ql);
}

}  // namespace nlfiber
