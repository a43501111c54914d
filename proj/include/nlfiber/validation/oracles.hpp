#pragma once

// Brute-force and residual oracles that share no code path with the closed forms they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "../classical_field.hpp"
#include "../path_integral.hpp"

namespace nlfiber::validation {

using cld = std::complex<long double>;

// (N-1)x(N-1) matrix with a + 2 on the diagonal, a - 1 next to it, a elsewhere.
inline Eigen::MatrixXd fluctuation_matrix(int n, double mu) {
    const double a = 4.0 * mu * mu / (static_cast<double>(n) * n * n);
    const int m = n - 1;
    Eigen::MatrixXd mat = Eigen::MatrixXd::Constant(m, m, a);
    for (int i = 0; i < m; ++i) {
        mat(i, i) += 2.0;
        if (i + 1 < m) {
            mat(i, i + 1) -= 1.0;
            mat(i + 1, i) -= 1.0;
        }
    }
    return mat;
}

inline double dense_det(int n, double mu) { return fluctuation_matrix(n, mu).partialPivLu().determinant(); }

inline Eigen::MatrixXd dense_inverse(int n, double mu) { return fluctuation_matrix(n, mu).partialPivLu().inverse(); }

struct Residual {
    double max_abs = 0.0;
    double scale = 0.0;
    double relative() const { return scale > 0.0 ? max_abs / scale : max_abs; }
};

// Second-order central differences in long double.
template <class F>
std::pair<cld, cld> central_derivatives(F&& f, long double s, long double h) {
    const cld fp = f(s + h), f0 = f(s), fm = f(s - h);
    return {(fp - fm) / (2.0L * h), (fp - 2.0L * f0 + fm) / (h * h)};
}

// kappa1'' - 2i mu kappa1' - 4 mu^2 Re kappa1 in s = z/L.
inline Residual kappa1_residual(double mu, double x0, double y0, double h = 1e-4, int samples = 41) {
    auto f = [&](long double s) { return kappa1_t<long double>(mu, x0, y0, s); };
    Residual r;
    for (int i = 1; i < samples - 1; ++i) {
        const long double s = static_cast<long double>(i) / (samples - 1);
        const auto [d1, d2] = central_derivatives(f, s, h);
        const cld k = f(s);
        const cld res = d2 - cld(0, 2.0L * mu) * d1 - 4.0L * mu * mu * k.real();
        r.max_abs = std::max(r.max_abs, static_cast<double>(std::abs(res)));
        r.scale = std::max({r.scale, static_cast<double>(std::abs(d2)), static_cast<double>(std::abs(k)), std::hypot(x0, y0)});
    }
    return r;
}

// First derivative of kappa1 from its polynomial coefficients.
inline cld kappa1_prime(long double mu, long double x0, long double y0, long double s) {
    const long double d = 1.0L + mu * mu / 3.0L;
    const long double a1 = (-mu * x0 + y0) / d;
    const long double a2 = ((1.0L - 2.0L * mu * mu / 3.0L) * x0 + mu * y0) / d;
    return {-2.0L * mu * a1 * s + a2, -2.0L * mu * mu * a1 * s * s + 2.0L * mu * a2 * s + a1};
}

// kappa2'' - 2i mu kappa2' - 4 mu^2 Re kappa2 minus the kappa1 source, in s = z/L.
inline Residual kappa2_residual(double mu, double rho, double x0, double y0, double h = 1e-4, int samples = 41) {
    auto f = [&](long double s) { return kappa2_t<long double>(mu, rho, x0, y0, s); };
    Residual r;
    const long double m = mu, p = rho;
    for (int i = 1; i < samples - 1; ++i) {
        const long double s = static_cast<long double>(i) / (samples - 1);
        const auto [d1, d2] = central_derivatives(f, s, h);
        const cld k2 = f(s);
        const cld k1 = kappa1_t<long double>(m, x0, y0, s);
        const cld k1p = kappa1_prime(m, x0, y0, s);
        const cld k1c = std::conj(k1);
        const cld source = cld(0, 4.0L * m / p) * (k1 + k1c) * k1p +
                           (m * m / p) * (5.0L * k1 * k1 + 10.0L * std::norm(k1) + 3.0L * k1c * k1c);
        const cld res = d2 - cld(0, 2.0L * m) * d1 - 4.0L * m * m * k2.real() - source;
        r.max_abs = std::max(r.max_abs, static_cast<double>(std::abs(res)));
        r.scale = std::max({r.scale, static_cast<double>(std::abs(d2)), static_cast<double>(std::abs(source))});
    }
    return r;
}

inline cld trajectory_field(const TrajectoryConstants& c, long double gamma_l, long double zeta) {
    const auto p = trajectory_point<long double>(c, gamma_l, zeta);
    return std::polar(std::sqrt(p.rho_sq), p.theta);
}

// psi'' - 4i g |psi|^2 psi' - 3 g^2 |psi|^4 psi in zeta = z/L with g = gamma L.
inline Residual trajectory_residual(const TrajectoryConstants& c, double gamma_l, double h = 1e-4, int samples = 41) {
    auto f = [&](long double z) { return trajectory_field(c, gamma_l, z); };
    const long double g = gamma_l;
    Residual r;
    for (int i = 0; i < samples; ++i) {
        const long double z = static_cast<long double>(i) / (samples - 1);
        const auto [d1, d2] = central_derivatives(f, z, h);
        const cld psi = f(z);
        const long double a2 = std::norm(psi);
        const cld t1 = cld(0, 4.0L * g * a2) * d1, t2 = 3.0L * g * g * a2 * a2 * psi;
        r.max_abs = std::max(r.max_abs, static_cast<double>(std::abs(d2 - t1 - t2)));
        r.scale = std::max({r.scale, static_cast<double>(std::abs(d2)), static_cast<double>(std::abs(t1)),
                            static_cast<double>(std::abs(t2))});
    }
    return r;
}

// (1/L) int_0^1 |psi' - i g |psi|^2 psi|^2 dzeta, derivative by a five-point stencil.
inline double action_by_quadrature(const TrajectoryConstants& c, double gamma_l, double length_km) {
    const long double g = gamma_l, h = 1e-3L;
    auto f = [&](long double z) { return trajectory_field(c, gamma_l, z); };
    auto integrand = [&](long double z) {
        const cld d1 = (-f(z + 2 * h) + 8.0L * f(z + h) - 8.0L * f(z - h) + f(z - 2 * h)) / (12.0L * h);
        const cld psi = f(z);
        return std::norm(d1 - cld(0, g * std::norm(psi)) * psi);
    };
    const long double v = boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(integrand, 0.0L, 1.0L, 15, 1e-14L);
    return static_cast<double>(v / length_km);
}

// Discrete K applied to the Green column G(., s') on a uniform grid of n intervals (L = 1).
// Returns the sup of the residual away from s' and the integral of K G against f.
struct GreenDeltaResult {
    double off_diagonal_sup = 0.0;
    double test_integral_err = 0.0;
};

inline GreenDeltaResult green_delta_test(double mu, double sp, int n, const std::function<double(double)>& f) {
    const double h = 1.0 / n;
    auto g = [&](int i) { return green_matrix(i * h, sp, mu, 1.0); };
    GreenDeltaResult r;
    double integral[2][2] = {{0, 0}, {0, 0}};
    for (int i = 1; i < n; ++i) {
        const auto gm = g(i - 1), g0 = g(i), gp = g(i + 1);
        // column beta: (G^{1 beta}, G^{2 beta})
        const double u1[2][3] = {{gm.g11, g0.g11, gp.g11}, {gm.g12, g0.g12, gp.g12}};
        const double u2[2][3] = {{gm.g21, g0.g21, gp.g21}, {gm.g22, g0.g22, gp.g22}};
        for (int beta = 0; beta < 2; ++beta) {
            const double* a = u1[beta];
            const double* b = u2[beta];
            const double k1 = 2.0 * (-(a[2] - 2 * a[1] + a[0]) / (h * h) + 4.0 * mu * mu * a[1] - 2.0 * mu * (b[2] - b[0]) / (2 * h));
            const double k2 = 2.0 * (2.0 * mu * (a[2] - a[0]) / (2 * h) - (b[2] - 2 * b[1] + b[0]) / (h * h));
            const double s = i * h;
            if (std::abs(s - sp) > 2.5 * h)
                r.off_diagonal_sup = std::max({r.off_diagonal_sup, std::abs(k1), std::abs(k2)});
            integral[0][beta] += h * f(s) * k1;
            integral[1][beta] += h * f(s) * k2;
        }
    }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            r.test_integral_err = std::max(r.test_integral_err, std::abs(integral[a][b] - (a == b ? f(sp) : 0.0)));
    return r;
}

// Term-by-term action coefficients, written out independently of the implementation.
inline double action_cubic_table(double mu, double rho, double x, double y, double ql) {
    struct Term {
        int px, py;
        double c[6]; // coefficients of mu^0..mu^5
    };
    static const Term terms[] = {
        {3, 0, {0, 225, 0, 15, 0, 4}},
        {2, 1, {-90, 0, 255, 0, 23, 0}},
        {1, 2, {0, -45, 0, 117, 0, 20}},
        {0, 3, {-90, 0, -99, 0, -15, 0}},
    };
    double poly = 0.0;
    for (const auto& t : terms) {
        double c = 0.0, mp = 1.0;
        for (double v : t.c) {
            c += v * mp;
            mp *= mu;
        }
        poly += c * std::pow(x, t.px) * std::pow(y, t.py);
    }
    const double d = 1.0 + mu * mu / 3.0;
    return mu / rho * poly / (135.0 * ql * d * d * d);
}

// Linear bracket of the prefactor, coefficients of x0 and y0 expanded in powers of mu.
inline double prefactor_bracket_table(double mu, double rho, double x, double y) {
    const double d = 1.0 + mu * mu / 3.0;
    const double cx = 15.0 * mu * mu + mu * mu * mu * mu;    // mu (15 + mu^2) mu
    const double cy = -10.0 * mu + 2.0 * mu * mu * mu / 3.0; // -2 mu (5 - mu^2/3)
    return 1.0 - (cx * x + cy * y) / (rho * 15.0 * d * d);
}

}  // namespace nlfiber::validation
