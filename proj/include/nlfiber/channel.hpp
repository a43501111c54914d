#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace nlfiber {

using cplx = std::complex<double>;

// Units: mW, km, nats.
struct ChannelParams {
    double gamma = 1e-3;           // 1/(mW km)
    double length_km = 1000.0;     // km
    double noise_density = 1.5e-7; // Q, mW/km

    static ChannelParams reference_defaults() { return {}; }

    double noise_power() const { return noise_density * length_km; }  // QL
    double gamma_l() const { return gamma * length_km; }

    void validate() const {
        if (!(std::isfinite(gamma) && gamma >= 0.0)) throw std::invalid_argument("ChannelParams: gamma must be >= 0");
        if (!(std::isfinite(length_km) && length_km > 0.0))
            throw std::invalid_argument("ChannelParams: length must be > 0");
        if (!(std::isfinite(noise_density) && noise_density > 0.0))
            throw std::invalid_argument("ChannelParams: noise density must be > 0");
    }
};

inline double wrap_phase(double phi) {
    double r = std::remainder(phi, 2.0 * M_PI);
    if (r >= M_PI) r -= 2.0 * M_PI;
    return r;
}

struct ComplexAmplitude {
    double re = 0.0;
    double im = 0.0;

    static ComplexAmplitude from_polar(double rho, double phi) {
        if (rho < 0.0) throw std::invalid_argument("ComplexAmplitude: negative modulus");
        return {rho * std::cos(phi), rho * std::sin(phi)};
    }
    static ComplexAmplitude from(cplx z) { return {z.real(), z.imag()}; }

    cplx value() const { return {re, im}; }
    double magnitude() const { return std::hypot(re, im); }
    double norm() const { return re * re + im * im; }
    // In [-pi, pi).
    double phase() const { return wrap_phase(std::atan2(im, re)); }
};

struct ReducedCoords {
    double mu = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
};

struct PowerRegime {
    double p_low = 0.0;
    double p_high = 0.0;
    bool unbounded() const { return std::isinf(p_high); }
    bool contains(double p) const { return p > p_low && p < p_high; }
};

inline double snr(double power, const ChannelParams& params) { return power / params.noise_power(); }

// QL << P << 1/(Q L^3 gamma^2)
inline PowerRegime intermediate_regime(const ChannelParams& params) {
    params.validate();
    const double ql = params.noise_power();
    const double l = params.length_km;
    const double hi = params.gamma == 0.0 ? std::numeric_limits<double>::infinity()
                                          : 1.0 / (ql * l * l * params.gamma * params.gamma);
    return {ql, hi};
}

// mu = gamma L |X|^2
inline double nonlinear_phase(ComplexAmplitude x, const ChannelParams& params) {
    return params.gamma_l() * x.norm();
}

// x0 + i y0 = Y e^{-i phi_X - i mu} - rho. Undefined at X = 0.
inline ReducedCoords reduced_coords(ComplexAmplitude x, ComplexAmplitude y, const ChannelParams& params) {
    const double rho = x.magnitude();
    if (!(rho > 0.0)) throw std::invalid_argument("reduced_coords: input amplitude must be nonzero");
    const double mu = nonlinear_phase(x, params);
    const cplx unit_conj = std::conj(x.value()) / rho;
    const cplx w = y.value() * unit_conj * std::polar(1.0, -mu) - rho;
    return {mu, w.real(), w.imag()};
}

inline ComplexAmplitude reconstruct_output(const ReducedCoords& rc, double rho, double phi_x) {
    const cplx y = (rho + cplx(rc.x0, rc.y0)) * std::polar(1.0, phi_x + rc.mu);
    return ComplexAmplitude::from(y);
}

// Psi0(z) = rho e^{i mu z/L + i phi_X}
inline ComplexAmplitude zero_noise_output(ComplexAmplitude x, const ChannelParams& params, double z_km) {
    if (!(z_km >= 0.0 && z_km <= params.length_km)) throw std::domain_error("zero_noise_output: z outside [0, L]");
    const double mu = nonlinear_phase(x, params);
    return ComplexAmplitude::from(x.value() * std::polar(1.0, mu * z_km / params.length_km));
}

// Noise-free output X e^{i gamma L |X|^2}.
inline ComplexAmplitude deterministic_output(ComplexAmplitude x, const ChannelParams& params) {
    return ComplexAmplitude::from(x.value() * std::polar(1.0, nonlinear_phase(x, params)));
}

struct ValidityReport {
    bool high_snr = true;          // |X|^2 >= 10 QL
    bool weak_nonlinearity = true; // gamma^2 L^3 Q |X|^2 <= 0.1
    bool ok() const { return high_snr && weak_nonlinearity; }
    std::string message() const {
        std::string m;
        if (!high_snr) m += "|X|^2 is not large compared to QL; ";
        if (!weak_nonlinearity) m += "gamma^2 L^3 Q |X|^2 is not small; ";
        return m;
    }
};

inline ValidityReport assess_validity(ComplexAmplitude x, const ChannelParams& params) {
    const double p = x.norm();
    const double l = params.length_km;
    ValidityReport r;
    r.high_snr = p >= 10.0 * params.noise_power();
    r.weak_nonlinearity = params.gamma * params.gamma * l * l * l * params.noise_density * p <= 0.1;
    return r;
}

}  // namespace nlfiber
