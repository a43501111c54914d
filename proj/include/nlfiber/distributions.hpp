#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "channel.hpp"
#include "jet.hpp"
#include "quadrature.hpp"
#include "roots.hpp"
#include "special_fn.hpp"

namespace nlfiber {

struct BetaInput {
    double beta = 2.0;
    double power = 1.0;

    void validate() const {
        if (!(beta > 0.0 && beta <= 8.0)) throw std::invalid_argument("BetaInput: beta must lie in (0, 8]");
        if (!(power > 0.0 && std::isfinite(power))) throw std::invalid_argument("BetaInput: power must be positive");
    }
};

struct OptimalInput {
    double alpha = 0.0;
    double lambda0 = 0.0; // 1/mW
    double n0 = 0.0;      // 1/mW
    double power = 0.0;   // mW
    double gamma_l = 0.0; // 1/mW, carried for density evaluation
    bool gaussian_limit = false;
    int solver_iterations = 0;
};

// Radial input density p(rho) over the complex plane: 2 pi int rho p drho = 1.
// Near 0 it behaves like rho^(beta - 2); beta = 2 means regular.
struct RadialDensity {
    std::function<double(double)> eval;
    double scale = 1.0;
    double beta = 2.0;
};

struct IntegralValue {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
};

template <class T>
T beta_pdf_t(const BetaInput& d, T rho) {
    using std::exp, std::pow, std::log;
    const double b = d.beta, p = d.power;
    const double log_norm = std::log(M_PI) + std::lgamma(0.5 * b) + 0.5 * b * std::log(2.0 * p / b);
    return exp(-b / (2.0 * p) * rho * rho - log_norm) * pow(rho, b - 2.0);
}

inline double beta_pdf(const BetaInput& d, double rho) {
    d.validate();
    if (!(rho >= 0.0)) throw std::domain_error("beta_pdf: rho must be >= 0");
    if (rho == 0.0 && d.beta < 2.0) return std::numeric_limits<double>::infinity();
    return beta_pdf_t(d, rho);
}

template <class T>
T optimal_pdf_t(const OptimalInput& d, T rho) {
    using std::exp, std::sqrt;
    const T r2 = rho * rho;
    return d.n0 * exp(-d.lambda0 * r2) / sqrt(1.0 + d.gamma_l * d.gamma_l * r2 * r2 / 3.0);
}

inline double optimal_pdf(const OptimalInput& d, double rho) {
    if (!(rho >= 0.0)) throw std::domain_error("optimal_pdf: rho must be >= 0");
    return optimal_pdf_t(d, rho);
}

inline RadialDensity make_radial(const BetaInput& d) {
    d.validate();
    return {[d](double rho) { return rho == 0.0 && d.beta < 2.0 ? std::numeric_limits<double>::infinity() : beta_pdf_t(d, rho); },
            std::sqrt(d.power), d.beta};
}

inline RadialDensity make_radial(const OptimalInput& d) {
    return {[d](double rho) { return optimal_pdf_t(d, rho); }, std::sqrt(d.power), 2.0};
}

// 2 pi int_0^inf rho p(rho) g(rho) drho, integrated in u = rho^beta so that
// rho^(beta-1) p-singularities at the origin become regular.
template <class G>
IntegralValue radial_integral(const RadialDensity& p, G&& g, std::vector<double> rho_points = {}, double rel_tol = 1e-12) {
    const double b = p.beta;
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double rho = std::pow(u, 1.0 / b);
        const double dens = p.eval(rho);
        if (dens == 0.0) return 0.0;
        // rho drho = rho * (1/b) u^(1/b - 1) du = (1/b) rho^(2 - b) du
        return 2.0 * M_PI * dens * g(rho) * std::pow(rho, 2.0 - b) / b;
    };
    std::vector<double> pts{0.0};
    for (double r : rho_points)
        if (r > 0.0) pts.push_back(std::pow(r, b));
    std::sort(pts.begin(), pts.end());
    pts.push_back(std::numeric_limits<double>::infinity());
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.tail_scale = std::pow(p.scale, b);
    const auto r = quad::integrate(integrand, pts, opt);
    return {r.value, r.abs_error, r.converged};
}

struct RadialMoments {
    double mass = 0.0;
    double power = 0.0;
};

inline RadialMoments radial_moments(const RadialDensity& p) {
    const auto m = radial_integral(p, [](double) { return 1.0; }, {p.scale});
    const auto w = radial_integral(p, [](double r) { return r * r; }, {p.scale});
    return {m.value, w.value};
}

// P_out(rho') = (2/QL) int rho e^{-(rho - rho')^2/QL} [e^{-2 rho rho'/QL} I0(2 rho rho'/QL)] P_X(rho) drho
inline IntegralValue output_pdf_integral(const RadialDensity& p, const ChannelParams& params, double y_mag,
                                         double rel_tol = 1e-11) {
    params.validate();
    if (!(y_mag >= 0.0)) throw std::domain_error("output_pdf_integral: |Y| must be >= 0");
    const double ql = params.noise_power();
    auto kernel = [&](double rho) {
        const double d = rho - y_mag;
        return std::exp(-d * d / ql) * special::bessel_i0_scaled(2.0 * rho * y_mag / ql) / (M_PI * ql);
    };
    // radial_integral carries the 2 pi rho p(rho) factor: 2 pi * kernel/(pi QL) = 2/QL.
    const double w = 12.0 * std::sqrt(ql);
    std::vector<double> pts;
    if (y_mag > w) pts.push_back(y_mag - w);
    pts.push_back(y_mag);
    pts.push_back(y_mag + w);
    pts.push_back(p.scale);
    return radial_integral(p, kernel, pts, rel_tol);
}

// Closed-form output for the beta family, evaluated in the log domain.
inline double log_beta_output_pdf(const BetaInput& d, const ChannelParams& params, double y_mag) {
    d.validate();
    params.validate();
    if (!(y_mag >= 0.0)) throw std::domain_error("beta_output_pdf: |Y| must be >= 0");
    const double ql = params.noise_power();
    const double b = d.beta, p = d.power;
    const double y2 = y_mag * y_mag;
    const double denom = 2.0 * p + b * ql;
    const double w = 2.0 * p * y2 / (ql * denom);
    return special::log_hyp1f1_b1(0.5 * b, w) - y2 / ql - std::log(M_PI * ql) + 0.5 * b * std::log(b * ql / denom);
}

inline double beta_output_pdf(const BetaInput& d, const ChannelParams& params, double y_mag) {
    return std::exp(log_beta_output_pdf(d, params, y_mag));
}

namespace detail {

// Coefficients of Delta f around rho0 > 0 from Taylor coefficients of f; one order shorter by 2.
inline std::vector<double> radial_laplacian_series(const std::vector<double>& f, double rho0) {
    const std::size_t n = f.size();
    if (n < 3) return {};
    std::vector<double> d2(n - 2), d1(n - 2), q(n - 2);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        d2[k] = (k + 2.0) * (k + 1.0) * f[k + 2];
        d1[k] = (k + 1.0) * f[k + 1];
    }
    // d1 / (rho0 + h)
    for (std::size_t k = 0; k < q.size(); ++k) q[k] = (d1[k] - (k > 0 ? q[k - 1] : 0.0)) / rho0;
    for (std::size_t k = 0; k < q.size(); ++k) d2[k] += q[k];
    return d2;
}

}  // namespace detail

// sum_{n <= n_terms} (QL/4)^n Delta^n P_X(rho) / n!, with Delta^n from a
// truncated Taylor expansion of the density. F must accept Jet<6>.
template <class F>
    requires std::is_invocable_v<F, Jet<6>>
double hankel_output_expansion(F&& density, const ChannelParams& params, double rho, int n_terms) {
    if (n_terms < 0 || n_terms > 3) throw std::invalid_argument("hankel_output_expansion: n_terms must be in [0, 3]");
    if (!(rho >= 0.0)) throw std::domain_error("hankel_output_expansion: rho must be >= 0");
    constexpr std::size_t N = 6;
    const Jet<N> f = density(Jet<N>::variable(rho));
    std::vector<double> c(f.c.begin(), f.c.end());
    for (double v : c)
        if (!std::isfinite(v)) throw std::domain_error("hankel_output_expansion: density not smooth at rho");
    const double t = params.noise_power() / 4.0;
    double sum = c[0], tn = 1.0, fact = 1.0;
    if (rho == 0.0) {
        // Delta^n f(0) = 4^n (n!)^2 c_{2n} for radial f.
        for (int n = 1; n <= n_terms; ++n) {
            tn *= t;
            fact *= n;
            sum += tn / fact * std::pow(4.0, n) * fact * fact * c[2 * n];
        }
        return sum;
    }
    for (int n = 1; n <= n_terms; ++n) {
        c = detail::radial_laplacian_series(c, rho);
        tn *= t;
        fact *= n;
        sum += tn / fact * c[0];
    }
    return sum;
}

namespace detail {

inline double fd_laplacian_power(const std::function<double(double)>& f, double rho, int n, double h) {
    if (n == 0) return f(std::abs(rho));
    auto g = [&](double r) { return fd_laplacian_power(f, r, n - 1, h); };
    if (std::abs(rho) < 0.5 * h) return 4.0 * (g(h) - g(0.0)) / (h * h);  // Delta g(0) = 2 g''(0)
    const double gp = g(rho + h), g0 = g(rho), gm = g(rho - h);
    return (gp - 2.0 * g0 + gm) / (h * h) + (gp - gm) / (2.0 * h * rho);
}

}  // namespace detail

// Finite-difference fallback for opaque densities.
inline double hankel_output_expansion(const RadialDensity& p, const ChannelParams& params, double rho, int n_terms) {
    if (n_terms < 0 || n_terms > 3) throw std::invalid_argument("hankel_output_expansion: n_terms must be in [0, 3]");
    if (!(rho >= 0.0)) throw std::domain_error("hankel_output_expansion: rho must be >= 0");
    const double t = params.noise_power() / 4.0;
    double sum = p.eval(rho), tn = 1.0, fact = 1.0;
    for (int n = 1; n <= n_terms; ++n) {
        tn *= t;
        fact *= n;
        const double h = p.scale * std::pow(1e-16, 1.0 / (2.0 * n + 2.0));
        sum += tn / fact * detail::fd_laplacian_power(p.eval, rho, n, h);
    }
    return sum;
}

// Laplace-limit output density P_X[Y e^{-i gamma L |Y|^2}].
template <class F>
    requires std::is_invocable_r_v<double, F, ComplexAmplitude>
double large_snr_output(F&& p_in_2d, const ChannelParams& params, ComplexAmplitude y) {
    const double phase = -params.gamma_l() * y.norm();
    return p_in_2d(ComplexAmplitude::from(y.value() * std::polar(1.0, phase)));
}

inline double large_snr_output(const RadialDensity& p, const ChannelParams&, ComplexAmplitude y) {
    return p.eval(y.magnitude());
}

// gt = gamma L P / sqrt(3)
inline double gamma_tilde(double power, const ChannelParams& params) {
    return params.gamma_l() * power / std::sqrt(3.0);
}

// Solves G'(alpha)/G(alpha) = -gt for alpha, then lambda0 = gamma L alpha / sqrt(3),
// N0 = gamma L / (pi sqrt(3) G(alpha)).
inline OptimalInput solve_optimal(double power, const ChannelParams& params) {
    params.validate();
    if (!(power > 0.0 && std::isfinite(power))) throw std::invalid_argument("solve_optimal: power must be positive");
    OptimalInput out;
    out.power = power;
    out.gamma_l = params.gamma_l();
    if (params.gamma == 0.0) {
        out.lambda0 = 1.0 / power;
        out.n0 = 1.0 / (M_PI * power);
        out.gaussian_limit = true;
        return out;
    }
    const double gt = gamma_tilde(power, params);
    auto f = [gt](double a) { return special::g_of_alpha_derivative(a) / special::g_of_alpha(a) + gt; };
    const double lo = 1e-12;
    double hi = 1.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e12) throw BracketError(lo, hi, f(lo), f(hi));
    }
    const auto root = find_root_bracketed(f, lo, hi, 1e-12);
    if (!root.converged) throw BracketError(root.lo, root.hi, f(root.lo), f(root.hi));
    out.alpha = root.root;
    out.solver_iterations = root.iterations;
    const double gl3 = out.gamma_l / std::sqrt(3.0);
    out.lambda0 = gl3 * out.alpha;
    out.n0 = gl3 / (M_PI * special::g_of_alpha(out.alpha));
    return out;
}

// gt << 1: lambda0 = (1 - 2 gt^2)/P, N0 = (1 - gt^2)/(pi P)
inline OptimalInput optimal_small_power(double power, const ChannelParams& params) {
    const double gt = gamma_tilde(power, params);
    OptimalInput out;
    out.power = power;
    out.gamma_l = params.gamma_l();
    out.lambda0 = (1.0 - 2.0 * gt * gt) / power;
    out.n0 = (1.0 - gt * gt) / (M_PI * power);
    out.alpha = out.lambda0 * std::sqrt(3.0) / out.gamma_l;
    return out;
}

// gt >> 1, with C = 2 e^{-gamma_E}.
inline OptimalInput optimal_large_power(double power, const ChannelParams& params) {
    const double gt = gamma_tilde(power, params);
    const double l = std::log(2.0 * std::exp(-special::euler_gamma) * gt);
    if (!(l > 1.0)) throw std::domain_error("optimal_large_power: power below the large-power regime");
    OptimalInput out;
    out.power = power;
    out.gamma_l = params.gamma_l();
    out.lambda0 = (1.0 - std::log(l) / l) / (power * l);
    out.n0 = gt / M_PI * out.lambda0;
    out.alpha = out.lambda0 * std::sqrt(3.0) / out.gamma_l;
    return out;
}

}  // namespace nlfiber
