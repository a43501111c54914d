#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "channel.hpp"
#include "classical_field.hpp"
#include "path_integral.hpp"
#include "quadrature.hpp"

namespace nlfiber {

enum class PdfOrder { leading, nlo };

struct PdfValue {
    double value = 0.0;     // clamped at 0
    double raw = 0.0;       // unclamped expansion
    bool truncated = false; // raw < 0
    ValidityReport validity;
};

// Density in the reduced frame; d^2Y = dx0 dy0.
inline PdfValue conditional_pdf_reduced(const ReducedCoords& rc, double rho, const ChannelParams& params, PdfOrder order) {
    const double ql = params.noise_power();
    const double d = 1.0 + rc.mu * rc.mu / 3.0;
    const double gauss = std::exp(-action_quadratic(rc, ql));
    PdfValue out;
    if (order == PdfOrder::leading) {
        out.raw = gauss / (M_PI * ql * std::sqrt(d));
    } else {
        const double prefactor = quantum_correction(rc, rho, params);
        const double cubic = action_cubic(rc, rho, ql) / (M_PI * ql * std::sqrt(d));
        out.raw = gauss * (prefactor - cubic);
    }
    out.truncated = out.raw < 0.0;
    out.value = out.truncated ? 0.0 : out.raw;
    return out;
}

inline PdfValue conditional_pdf(ComplexAmplitude x, ComplexAmplitude y, const ChannelParams& params, PdfOrder order) {
    params.validate();
    const auto rc = reduced_coords(x, y, params);
    auto out = conditional_pdf_reduced(rc, x.magnitude(), params, order);
    out.validity = assess_validity(x, params);
    return out;
}

inline double conditional_pdf_linear(ComplexAmplitude x, ComplexAmplitude y, const ChannelParams& params) {
    const double ql = params.noise_power();
    const double dx = y.re - x.re, dy = y.im - x.im;
    return std::exp(-(dx * dx + dy * dy) / ql) / (M_PI * ql);
}

struct PdfMass {
    double raw = 0.0;     // integral of the unclamped density
    double clamped = 0.0; // integral of max(0, density)
};

// Principal axes of the leading-order exponent v^T A v, A = [[1 + 4mu^2/3, -mu], [-mu, 1]] / (QL D).
struct GaussianFrame {
    double c = 1.0, s = 0.0;     // rotation to the principal axes
    double sigma1 = 0.0, sigma2 = 0.0; // e^{-w^2} scale along each axis
    double jacobian = 0.0;
};

inline GaussianFrame leading_frame(double mu, double ql) {
    const double d = 1.0 + mu * mu / 3.0;
    const double a = 1.0 + 4.0 * mu * mu / 3.0, b = -mu, c = 1.0;
    const double tr = a + c, disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    const double l1 = 0.5 * tr + disc, l2 = 0.5 * tr - disc;
    GaussianFrame f;
    const double theta = 0.5 * std::atan2(2.0 * b, a - c);
    f.c = std::cos(theta);
    f.s = std::sin(theta);
    f.sigma1 = std::sqrt(ql * d / l1);
    f.sigma2 = std::sqrt(ql * d / l2);
    f.jacobian = f.sigma1 * f.sigma2;
    return f;
}

// Tensor Gauss-Hermite in the principal axes of the leading Gaussian.
inline PdfMass conditional_pdf_mass(ComplexAmplitude x, const ChannelParams& params, PdfOrder order, int nodes = 48) {
    params.validate();
    const double rho = x.magnitude();
    if (!(rho > 0.0)) throw std::invalid_argument("conditional_pdf_mass: input amplitude must be nonzero");
    const double mu = nonlinear_phase(x, params);
    const double ql = params.noise_power();
    const auto f = leading_frame(mu, ql);
    const auto& gh = quad::gauss_hermite(nodes);
    PdfMass m;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
            const double u = f.sigma1 * gh.nodes[i], v = f.sigma2 * gh.nodes[j];
            ReducedCoords rc{mu, f.c * u - f.s * v, f.s * u + f.c * v};
            const auto p = conditional_pdf_reduced(rc, rho, params, order);
            const double w = gh.weights[i] * gh.weights[j] * f.jacobian * std::exp(gh.nodes[i] * gh.nodes[i] + gh.nodes[j] * gh.nodes[j]);
            m.raw += w * p.raw;
            m.clamped += w * p.value;
        }
    }
    return m;
}

struct MomentPoint {
    double q = 0.0;
    double second_moment = 0.0; // E|Y - Psi0(L)|^2 under the leading-order density
};

inline std::vector<MomentPoint> delta_limit_check(ComplexAmplitude x, const ChannelParams& params,
                                                  const std::vector<double>& q_sequence) {
    const double rho = x.magnitude();
    if (!(rho > 0.0)) throw std::invalid_argument("delta_limit_check: input amplitude must be nonzero");
    for (std::size_t i = 0; i < q_sequence.size(); ++i) {
        if (!(q_sequence[i] > 0.0)) throw std::invalid_argument("delta_limit_check: q must be positive");
        if (i > 0 && !(q_sequence[i] < q_sequence[i - 1]))
            throw std::invalid_argument("delta_limit_check: q sequence must be decreasing");
    }
    std::vector<MomentPoint> out;
    const auto& gh = quad::gauss_hermite(24);
    for (double q : q_sequence) {
        ChannelParams p = params;
        p.noise_density = q;
        const double mu = nonlinear_phase(x, p);
        const auto f = leading_frame(mu, p.noise_power());
        double m2 = 0.0;
        for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
            for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
                const double u = f.sigma1 * gh.nodes[i], v = f.sigma2 * gh.nodes[j];
                ReducedCoords rc{mu, f.c * u - f.s * v, f.s * u + f.c * v};
                const double dens = conditional_pdf_reduced(rc, rho, p, PdfOrder::leading).raw;
                const double w = gh.weights[i] * gh.weights[j] * f.jacobian *
                                 std::exp(gh.nodes[i] * gh.nodes[i] + gh.nodes[j] * gh.nodes[j]);
                m2 += w * dens * (rc.x0 * rc.x0 + rc.y0 * rc.y0);
            }
        }
        out.push_back({q, m2});
    }
    return out;
}

}  // namespace nlfiber
