#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "channel.hpp"
#include "distributions.hpp"
#include "quadrature.hpp"

namespace nlfiber {

// Philox4x32-10 counter-based generator.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) {
        constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
        constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += w0;
            key[1] += w1;
        }
        return ctr;
    }
};

enum class StreamTag : std::uint32_t { noise = 0, input = 1 };

// Sequential uniforms from the counter (block, trajectory, tag) under key = seed.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t trajectory, StreamTag tag)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          traj_lo_(static_cast<std::uint32_t>(trajectory)),
          traj_hi_(static_cast<std::uint32_t>(trajectory >> 32)),
          tag_(static_cast<std::uint32_t>(tag)) {}

    // Uniform on (0, 1), never 0 or 1.
    double uniform() {
        if (pos_ == 4) refill();
        return (static_cast<double>(buf_[pos_++]) + 0.5) * 0x1p-32;
    }

    // Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() {
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    void refill() {
        buf_ = Philox4x32::generate({block_++, traj_lo_, traj_hi_, tag_}, key_);
        pos_ = 0;
    }

    Philox4x32::Key key_;
    std::uint32_t traj_lo_, traj_hi_, tag_;
    std::uint32_t block_ = 0;
    Philox4x32::Counter buf_{};
    int pos_ = 4;
};

struct McConfig {
    int n_steps = 2000;
    std::int64_t n_traj = 1000000;
    std::uint64_t seed = 20240601;
    int nx = 64, ny = 64;
    double half_width = 8.0; // in units of sqrt(QL)
    int workers = 1;

    void validate() const {
        if (n_steps < 100) throw std::invalid_argument("McConfig: n_steps must be >= 100");
        if (n_traj < 10000) throw std::invalid_argument("McConfig: n_traj must be >= 1e4");
        if (nx < 1 || ny < 1) throw std::invalid_argument("McConfig: bins must be positive");
        if (!(half_width > 0.0)) throw std::invalid_argument("McConfig: half_width must be positive");
        if (workers < 1) throw std::invalid_argument("McConfig: workers must be >= 1");
    }
};

// Splitting scheme: exact Kerr rotation over dz, then complex Gaussian noise of variance Q dz.
inline ComplexAmplitude propagate(ComplexAmplitude x, const ChannelParams& params, int n_steps, RandomStream& rng) {
    const double dz = params.length_km / n_steps;
    const double gdz = params.gamma * dz;
    const double sd = std::sqrt(0.5 * params.noise_density * dz);
    double re = x.re, im = x.im;
    for (int k = 0; k < n_steps; ++k) {
        const double phase = gdz * (re * re + im * im);
        const double c = std::cos(phase), s = std::sin(phase);
        const double r2 = re * c - im * s;
        im = re * s + im * c;
        re = r2;
        if (sd > 0.0) {
            const auto [n1, n2] = rng.normal_pair();
            re += sd * n1;
            im += sd * n2;
        }
    }
    return {re, im};
}

inline ComplexAmplitude propagate(ComplexAmplitude x, const ChannelParams& params, const McConfig& cfg,
                                  std::uint64_t stream_id) {
    RandomStream rng(cfg.seed, stream_id, StreamTag::noise);
    return propagate(x, params, cfg.n_steps, rng);
}

// Counts over a uniform grid. Radial histograms have ny == 1 with x as |Y|.
struct EmpiricalDensity {
    int nx = 0, ny = 0;
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    bool radial = false;
    std::vector<std::uint64_t> counts; // row-major, index ix * ny + iy
    std::vector<double> density;       // per unit area, normalized over the in-range samples
    std::uint64_t n_total = 0;
    std::uint64_t n_outside = 0;
    bool undercoverage = false;        // more than 1% of samples outside the grid

    double dx() const { return (x_hi - x_lo) / nx; }
    double dy() const { return (y_hi - y_lo) / ny; }
    double cell_area(int ix, int /*iy*/ = 0) const {
        if (!radial) return dx() * dy();
        const double a = x_lo + ix * dx(), b = a + dx();
        return M_PI * (b * b - a * a);
    }
    std::uint64_t count(int ix, int iy = 0) const { return counts[static_cast<std::size_t>(ix) * ny + iy]; }

    void finalize() {
        n_outside = n_total;
        for (auto c : counts) n_outside -= c;
        undercoverage = n_outside * 100 > n_total;
        density.assign(counts.size(), 0.0);
        const double inside = static_cast<double>(n_total - n_outside);
        if (inside == 0.0) return;
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy)
                density[static_cast<std::size_t>(ix) * ny + iy] = count(ix, iy) / (inside * cell_area(ix, iy));
    }
};

namespace detail {

// Runs body(begin, end, hist) on disjoint trajectory ranges and sums the counts.
template <class Body>
void run_partitioned(const McConfig& cfg, EmpiricalDensity& hist, Body&& body) {
    const int w = static_cast<int>(std::min<std::int64_t>(cfg.workers, cfg.n_traj));
    std::vector<std::vector<std::uint64_t>> parts(w, std::vector<std::uint64_t>(hist.counts.size(), 0));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    for (int t = 0; t < w; ++t) {
        const std::int64_t begin = cfg.n_traj * t / w, end = cfg.n_traj * (t + 1) / w;
        threads.emplace_back([&, t, begin, end] {
            try {
                body(begin, end, parts[t]);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& p : parts)
        for (std::size_t i = 0; i < p.size(); ++i) hist.counts[i] += p[i];
    hist.n_total = static_cast<std::uint64_t>(cfg.n_traj);
    hist.finalize();
}

inline int bin_index(double v, double lo, double hi, int n) {
    if (!(v >= lo && v < hi)) return -1;
    return std::min(n - 1, static_cast<int>((v - lo) / (hi - lo) * n));
}

}  // namespace detail

// Histogram of outputs in the reduced (x0, y0) frame of the input x.
inline EmpiricalDensity empirical_conditional(ComplexAmplitude x, const ChannelParams& params, const McConfig& cfg) {
    params.validate();
    cfg.validate();
    if (!(x.magnitude() > 0.0)) throw std::invalid_argument("empirical_conditional: input amplitude must be nonzero");
    const double h = cfg.half_width * std::sqrt(params.noise_power());
    EmpiricalDensity hist;
    hist.nx = cfg.nx;
    hist.ny = cfg.ny;
    hist.x_lo = hist.y_lo = -h;
    hist.x_hi = hist.y_hi = h;
    hist.counts.assign(static_cast<std::size_t>(cfg.nx) * cfg.ny, 0);
    detail::run_partitioned(cfg, hist, [&](std::int64_t begin, std::int64_t end, std::vector<std::uint64_t>& counts) {
        for (std::int64_t i = begin; i < end; ++i) {
            const auto y = propagate(x, params, cfg, static_cast<std::uint64_t>(i));
            const auto rc = reduced_coords(x, y, params);
            const int ix = detail::bin_index(rc.x0, -h, h, cfg.nx), iy = detail::bin_index(rc.y0, -h, h, cfg.ny);
            if (ix >= 0 && iy >= 0) ++counts[static_cast<std::size_t>(ix) * cfg.ny + iy];
        }
    });
    return hist;
}

// Draws an input amplitude for one trajectory.
struct InputSampler {
    std::variant<BetaInput, OptimalInput> dist;
    std::string tag;

    static InputSampler beta(const BetaInput& d) {
        d.validate();
        return {d, "beta"};
    }
    static InputSampler optimal(const OptimalInput& d) { return {d, "optimal"}; }

    double power() const {
        return std::visit([](const auto& d) { return d.power; }, dist);
    }

    ComplexAmplitude sample(RandomStream& rng) const {
        double tau;
        if (const auto* b = std::get_if<BetaInput>(&dist)) {
            // rho^2 ~ Gamma(beta/2, scale 2P/beta), inverted from a uniform.
            tau = boost::math::gamma_p_inv(0.5 * b->beta, rng.uniform()) * 2.0 * b->power / b->beta;
        } else {
            // Envelope e^{-lambda0 rho^2}: rho^2 ~ Exp(lambda0), accept with 1/sqrt(1 + g^2 rho^4 / 3).
            const auto& o = std::get<OptimalInput>(dist);
            for (;;) {
                tau = -std::log(rng.uniform()) / o.lambda0;
                if (rng.uniform() * std::sqrt(1.0 + o.gamma_l * o.gamma_l * tau * tau / 3.0) <= 1.0) break;
            }
        }
        return ComplexAmplitude::from_polar(std::sqrt(tau), 2.0 * M_PI * rng.uniform() - M_PI);
    }
};

// Radial histogram of |Y| over [0, radial_max) with cfg.nx bins.
inline EmpiricalDensity empirical_output(const InputSampler& sampler, const ChannelParams& params, const McConfig& cfg,
                                         double radial_max) {
    params.validate();
    cfg.validate();
    if (!(radial_max > 0.0)) throw std::invalid_argument("empirical_output: radial_max must be positive");
    EmpiricalDensity hist;
    hist.radial = true;
    hist.nx = cfg.nx;
    hist.ny = 1;
    hist.x_hi = radial_max;
    hist.counts.assign(static_cast<std::size_t>(cfg.nx), 0);
    detail::run_partitioned(cfg, hist, [&](std::int64_t begin, std::int64_t end, std::vector<std::uint64_t>& counts) {
        for (std::int64_t i = begin; i < end; ++i) {
            RandomStream in(cfg.seed, static_cast<std::uint64_t>(i), StreamTag::input);
            const auto x = sampler.sample(in);
            const auto y = propagate(x, params, cfg, static_cast<std::uint64_t>(i));
            const int ix = detail::bin_index(y.magnitude(), 0.0, radial_max, cfg.nx);
            if (ix >= 0) ++counts[static_cast<std::size_t>(ix)];
        }
    });
    return hist;
}

// Model probability of each cell plus the mass outside the grid.
struct BinProbabilities {
    std::vector<double> inside;
    double outside = 0.0;
};

// density(u, v) on the histogram plane (radial: density per unit area at |Y| = u).
template <class F>
BinProbabilities bin_probabilities(const EmpiricalDensity& h, F&& density, int gl_nodes = 8, double total_mass = 1.0) {
    const auto& gl = quad::gauss_legendre(gl_nodes);
    BinProbabilities out;
    out.inside.assign(h.counts.size(), 0.0);
    double sum = 0.0;
    for (int ix = 0; ix < h.nx; ++ix) {
        const double a = h.x_lo + ix * h.dx(), hx = 0.5 * h.dx();
        for (int iy = 0; iy < h.ny; ++iy) {
            double p = 0.0;
            if (h.radial) {
                for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
                    const double r = a + hx * (1.0 + gl.nodes[i]);
                    p += gl.weights[i] * 2.0 * M_PI * r * density(r, 0.0);
                }
                p *= hx;
            } else {
                const double b = h.y_lo + iy * h.dy(), hy = 0.5 * h.dy();
                for (std::size_t i = 0; i < gl.nodes.size(); ++i)
                    for (std::size_t j = 0; j < gl.nodes.size(); ++j)
                        p += gl.weights[i] * gl.weights[j] *
                             density(a + hx * (1.0 + gl.nodes[i]), b + hy * (1.0 + gl.nodes[j]));
                p *= hx * hy;
            }
            out.inside[static_cast<std::size_t>(ix) * h.ny + iy] = p;
            sum += p;
        }
    }
    out.outside = std::max(0.0, total_mass - sum);
    return out;
}

// 1/2 sum |p_hat - p| including the out-of-grid cell.
inline double total_variation(const EmpiricalDensity& h, const BinProbabilities& p) {
    const double n = static_cast<double>(h.n_total);
    double tv = std::abs(h.n_outside / n - p.outside);
    for (std::size_t i = 0; i < h.counts.size(); ++i) tv += std::abs(h.counts[i] / n - p.inside[i]);
    return 0.5 * tv;
}

struct ChiSquare {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
    int cells = 0;
};

// Pearson test; cells with expected count below min_expected are pooled into one cell
// together with the out-of-grid mass, and that cell is dropped if still below.
inline ChiSquare chi_square(const EmpiricalDensity& h, const BinProbabilities& p, double min_expected = 5.0) {
    const double n = static_cast<double>(h.n_total);
    double pooled_obs = static_cast<double>(h.n_outside), pooled_exp = n * p.outside;
    ChiSquare r;
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double e = n * p.inside[i], o = static_cast<double>(h.counts[i]);
        if (e < min_expected) {
            pooled_obs += o;
            pooled_exp += e;
            continue;
        }
        r.statistic += (o - e) * (o - e) / e;
        ++r.cells;
    }
    if (pooled_exp >= min_expected) {
        r.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
        ++r.cells;
    }
    r.dof = r.cells - 1;
    if (r.dof < 1) throw std::runtime_error("chi_square: too few populated cells");
    r.p_value = boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
    return r;
}

}  // namespace nlfiber
