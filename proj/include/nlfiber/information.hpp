#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "channel.hpp"
#include "distributions.hpp"
#include "quadrature.hpp"
#include "special_fn.hpp"

namespace nlfiber {

struct MiResult {
    double power = 0.0;
    double mi_nats = 0.0;
    double h_out = 0.0;
    double h_cond = 0.0;
    std::string input_tag;
};

inline double nats_to_bits(double nats) { return nats / M_LN2; }

inline double shannon_capacity(double power, const ChannelParams& params) { return std::log1p(snr(power, params)); }

// -log(gamma N L) + (gamma_E - 1 + log 3 pi)/2 with N = QL.
inline double prior_bound_baseline(const ChannelParams& params) {
    const double qlg = params.noise_power() * params.length_km * params.gamma;
    return -std::log(qlg) + 0.5 * (special::euler_gamma - 1.0 + std::log(3.0 * M_PI));
}

// H_beta[Y] = log(P (2 pi/beta) Gamma(beta/2)) + beta/2 + ((2 - beta)/2) psi(beta/2)
inline double entropy_output_beta(double beta, double power) {
    BetaInput{beta, power}.validate();
    return std::log(power * 2.0 * M_PI / beta) + special::log_gamma(0.5 * beta) + 0.5 * beta +
           0.5 * (2.0 - beta) * special::digamma(0.5 * beta);
}

enum class LaguerreRoute { automatic, gauss_laguerre, adaptive };

struct LogMomentValue {
    double value = 0.0;
    double abs_error = 0.0;
    LaguerreRoute route = LaguerreRoute::automatic;
};

// J = int_0^inf e^{-tau} tau^{beta/2 - 1} log(1 + 4 gt^2 tau^2 / beta^2) dtau
inline LogMomentValue beta_log_moment(double beta, double gt, LaguerreRoute route = LaguerreRoute::automatic) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta_log_moment: beta must be positive");
    if (!(gt >= 0.0)) throw std::invalid_argument("beta_log_moment: gt must be >= 0");
    if (gt == 0.0) return {0.0, 0.0, LaguerreRoute::gauss_laguerre};
    const double c = 4.0 * gt * gt / (beta * beta);
    const double a = 0.5 * beta - 1.0;
    auto gl_sum = [&](int n) {
        const auto& rule = quad::gauss_laguerre(n, a);
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = rule.nodes[i];
            s += rule.weights[i] * std::log1p(c * x * x);
        }
        return s;
    };
    if (route != LaguerreRoute::adaptive) {
        const double s200 = gl_sum(200);
        const double s150 = gl_sum(150);
        const double diff = std::abs(s200 - s150);
        if (route == LaguerreRoute::gauss_laguerre || diff <= 1e-13 * std::abs(s200))
            return {s200, diff, LaguerreRoute::gauss_laguerre};
    }
    // tau = s^{2/beta}: e^{-tau} tau^{beta/2-1} dtau = (2/beta) e^{-s^{2/beta}} ds
    auto f = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double tau = std::pow(s, 2.0 / beta);
        return (2.0 / beta) * std::exp(-tau) * std::log1p(c * tau * tau);
    };
    std::vector<double> pts{0.0};
    for (double tau : {1.0 / std::sqrt(c), 1.0, 0.5 * beta, 4.0 * beta, 40.0 + 4.0 * beta}) pts.push_back(std::pow(tau, 0.5 * beta));
    std::sort(pts.begin(), pts.end());
    pts.push_back(std::numeric_limits<double>::infinity());
    quad::Options opt;
    opt.rel_tol = 1e-13;
    opt.tail_scale = std::pow(1.0 + 0.5 * beta, 0.5 * beta);
    const auto r = quad::integrate(f, pts, opt);
    if (!r.converged && r.abs_error > 1e-10 * std::abs(r.value))
        throw std::runtime_error("beta_log_moment: quadrature did not converge");
    return {r.value, r.abs_error, LaguerreRoute::adaptive};
}

// H_beta[Y|X] = log(pi e QL) + J / (2 Gamma(beta/2)), gt = gamma L P / sqrt(3)
inline double cond_entropy_beta(double beta, double power, const ChannelParams& params) {
    params.validate();
    BetaInput{beta, power}.validate();
    const double j = beta_log_moment(beta, gamma_tilde(power, params)).value;
    return std::log(M_PI * M_E * params.noise_power()) + j / (2.0 * special::gamma_fn(0.5 * beta));
}

inline MiResult mi_beta(double beta, double power, const ChannelParams& params) {
    params.validate();
    BetaInput{beta, power}.validate();
    const double g = special::gamma_fn(0.5 * beta);
    const double j = beta_log_moment(beta, gamma_tilde(power, params)).value;
    MiResult r;
    r.power = power;
    r.input_tag = "beta=" + std::to_string(beta);
    r.h_out = entropy_output_beta(beta, power);
    r.h_cond = std::log(M_PI * M_E * params.noise_power()) + j / (2.0 * g);
    r.mi_nats = std::log(snr(power, params)) + std::log(2.0 * g / beta) - j / (2.0 * g) +
                0.5 * (beta - 2.0) * (1.0 - special::digamma(0.5 * beta));
    return r;
}

// gt >> 1 limit: -log(Q L^2 gamma) - (2 - beta)/2 + log(3)/2 - (beta/2) psi(beta/2) + log Gamma(beta/2)
inline double mi_beta_asymptote(double beta, const ChannelParams& params) {
    params.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("mi_beta_asymptote: beta must be positive");
    if (!(params.gamma > 0.0)) throw std::invalid_argument("mi_beta_asymptote: needs gamma > 0");
    const double qlg = params.noise_power() * params.length_km * params.gamma;
    return -std::log(qlg) - 0.5 * (2.0 - beta) + 0.5 * std::log(3.0) - 0.5 * beta * special::digamma(0.5 * beta) +
           special::log_gamma(0.5 * beta);
}

// -2 pi int rho p log p drho
inline IntegralValue entropy_output_general(const RadialDensity& p) {
    return radial_integral(p, [&](double rho) {
        const double v = p.eval(rho);
        return v > 0.0 ? -std::log(v) : 0.0;
    }, {p.scale}, 1e-12);
}

// -int p log p d^2Y for a non-radial density; trapezoid in the angle, adaptive in the radius.
template <class F>
IntegralValue entropy_output_general_2d(F&& p_in_2d, double scale, int n_phi = 64) {
    auto ring = [&](double rho) {
        double s = 0.0;
        for (int k = 0; k < n_phi; ++k) {
            const double v = p_in_2d(ComplexAmplitude::from_polar(rho, 2.0 * M_PI * k / n_phi));
            if (v > 0.0) s -= v * std::log(v);
        }
        return rho * s * 2.0 * M_PI / n_phi;
    };
    quad::Options opt;
    opt.rel_tol = 1e-11;
    opt.tail_scale = scale;
    const auto r = quad::integrate(ring, {0.0, scale, std::numeric_limits<double>::infinity()}, opt);
    return {r.value, r.abs_error, r.converged};
}

// H[Y|X] = 1 + log(pi QL) + (1/2) 2 pi int rho P_X log(1 + gamma^2 L^2 rho^4 / 3) drho
inline IntegralValue cond_entropy_general(const RadialDensity& p, const ChannelParams& params) {
    params.validate();
    const double gl = params.gamma_l();
    const auto e = radial_integral(p, [gl](double rho) {
        const double r2 = rho * rho;
        return std::log1p(gl * gl * r2 * r2 / 3.0);
    }, {p.scale}, 1e-12);
    return {1.0 + std::log(M_PI * params.noise_power()) + 0.5 * e.value, 0.5 * e.abs_error, e.converged};
}

// I_opt = P lambda0 - log N0 - log(pi e QL)
inline MiResult mi_optimal(const OptimalInput& d, const ChannelParams& params) {
    params.validate();
    MiResult r;
    r.power = d.power;
    r.input_tag = "optimal";
    const double log_pieql = std::log(M_PI * M_E * params.noise_power());
    if (d.gaussian_limit) {
        // gamma = 0 is the AWGN channel, where the Gaussian input is exact.
        r.h_cond = log_pieql;
        r.h_out = std::log(M_PI * M_E * (d.power + params.noise_power()));
        r.mi_nats = std::log1p(snr(d.power, params));
        return r;
    }
    r.mi_nats = d.power * d.lambda0 - std::log(d.n0) - log_pieql;
    // Both entropies carry E[log(1 + gamma^2 L^2 |X|^2 ^2 / 3)]/2, which cancels in the difference.
    const double gl = params.gamma_l();
    const double half_e = 0.5 * radial_integral(make_radial(d), [gl](double rho) {
        const double r2 = rho * rho;
        return std::log1p(gl * gl * r2 * r2 / 3.0);
    }, {std::sqrt(d.power)}).value;
    r.h_cond = log_pieql + half_e;
    r.h_out = r.mi_nats + r.h_cond;
    return r;
}

inline MiResult mi_optimal(double power, const ChannelParams& params) {
    return mi_optimal(solve_optimal(power, params), params);
}

struct AsymptoticValue {
    double value = 0.0;
    bool unity_beyond_accuracy = false;
};

// log(1 + SNR) - gt^2; the unity inside the log exceeds the accuracy of the expansion.
inline AsymptoticValue mi_optimal_small_power(double power, const ChannelParams& params) {
    const double gt = gamma_tilde(power, params);
    return {std::log1p(snr(power, params)) - gt * gt, true};
}

inline double mi_optimal_large_power(double power, const ChannelParams& params) {
    params.validate();
    const double gt = gamma_tilde(power, params);
    const double l = std::log(2.0 * std::exp(-special::euler_gamma) * gt);
    if (!(l > 1.0)) throw std::domain_error("mi_optimal_large_power: power below the large-power regime");
    const double ll = std::log(l);
    const double qlg = params.noise_power() * params.length_km * params.gamma;
    return -std::log(qlg) - 1.0 + 0.5 * std::log(3.0) + ll + (ll + 1.0 - ll / l) / l;
}

}  // namespace nlfiber
