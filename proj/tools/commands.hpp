#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nlfiber/nlfiber.hpp"
#include "table.hpp"

namespace nlfiber::cli {

struct RunConfig {
    ChannelParams params = ChannelParams::reference_defaults();
    double power_start = 1e-3; // mW
    double power_stop = 5e3;   // mW
    int power_points = 50;
    std::vector<std::string> inputs{"opt", "beta1", "beta2"};
    std::string format = "csv";
    std::string out;
    bool bits = false;
    int workers = 0; // 0: hardware concurrency
    McConfig mc;

    void validate() const {
        params.validate();
        if (!(power_start > 0.0) || !(power_stop > power_start) || power_points < 2)
            throw std::invalid_argument("power grid must satisfy 0 < start < stop with at least 2 points");
        if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
        for (const auto& s : inputs)
            if (s != "opt" && s != "beta1" && s != "beta2") throw std::invalid_argument("unknown input '" + s + "'");
    }

    int worker_count() const {
        if (workers > 0) return workers;
        return std::max(1u, std::thread::hardware_concurrency());
    }
};

struct CommandResult {
    Table table;
    std::vector<std::string> report; // one line per check
    bool ok = true;
};

// Evaluates body(i) for i in [0, n) on a pool; results land at their own index.
template <class F>
void parallel_for(int n, int workers, F&& body) {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, n); ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) body(i);
        });
    for (auto& t : pool) t.join();
}

inline bool has_input(const RunConfig& cfg, const std::string& name) {
    return std::find(cfg.inputs.begin(), cfg.inputs.end(), name) != cfg.inputs.end();
}

inline CommandResult cmd_mi_sweep(const RunConfig& cfg) {
    cfg.validate();
    const auto grid = validation::log_grid(cfg.power_start, cfg.power_stop, cfg.power_points);
    const double unit = cfg.bits ? 1.0 / std::log(2.0) : 1.0;
    const bool opt = has_input(cfg, "opt"), b1 = has_input(cfg, "beta1"), b2 = has_input(cfg, "beta2");
    CommandResult res;
    auto& t = res.table;
    t.columns = {"P_mW", "SNR"};
    if (opt) t.columns.push_back("I_opt");
    if (b2) t.columns.push_back("I_beta2");
    if (b1) t.columns.push_back("I_beta1");
    t.columns.insert(t.columns.end(), {"I_beta1_asymptote", "shannon", "prior_bound", "status"});
    t.rows.resize(grid.size());
    const auto& p = cfg.params;
    const bool nonlinear = p.gamma > 0.0;
    std::vector<char> row_ok(grid.size(), 1);
    parallel_for(static_cast<int>(grid.size()), cfg.worker_count(), [&](int i) {
        const double pw = grid[i];
        auto& row = t.rows[i];
        row = {pw, snr(pw, p)};
        try {
            if (opt) row.push_back(unit * mi_optimal(pw, p).mi_nats);
            if (b2) row.push_back(unit * mi_beta(2.0, pw, p).mi_nats);
            if (b1) row.push_back(unit * mi_beta(1.0, pw, p).mi_nats);
            const double nan = std::nan("");
            row.push_back(nonlinear ? unit * mi_beta_asymptote(1.0, p) : nan);
            row.push_back(unit * shannon_capacity(pw, p));
            row.push_back(nonlinear ? unit * prior_bound_baseline(p) : nan);
            row.push_back(std::string("ok"));
        } catch (const std::exception& e) {
            row.resize(2);
            while (row.size() + 1 < t.columns.size()) row.push_back(std::nan(""));
            row.push_back(std::string("error: ") + e.what());
            row_ok[i] = 0;
        }
    });
    for (char ok : row_ok) res.ok = res.ok && ok;
    return res;
}

// Solver record plus the density sampled on [0, rho_max_factor sqrt(P)].
inline CommandResult cmd_optimal_input(const RunConfig& cfg, double power, int samples = 200, double rho_max_factor = 4.0) {
    cfg.params.validate();
    const auto d = solve_optimal(power, cfg.params);
    const auto [mass, pw] = validation::optimal_moments_oracle(d);
    CommandResult res;
    validation::Report r;
    r.at_most("optimal_mass", std::abs(mass - 1.0), 1e-8);
    r.at_most("optimal_power", std::abs(pw - power) / power, 1e-8);
    for (const auto& c : r.checks) res.report.push_back(validation::format_line(c));
    res.ok = r.passed();
    auto& t = res.table;
    t.columns = {"rho", "density", "alpha", "lambda0", "N0", "P_mW"};
    for (int i = 0; i <= samples; ++i) {
        const double rho = rho_max_factor * std::sqrt(power) * i / samples;
        t.rows.push_back({rho, optimal_pdf(d, rho), d.alpha, d.lambda0, d.n0, d.power});
    }
    return res;
}

// P[Y|X] on a square grid of Y around the noiseless output, half-width in units of sqrt(QL).
inline CommandResult cmd_pdf_grid(const RunConfig& cfg, ComplexAmplitude x, int points, double half_width) {
    cfg.params.validate();
    if (points < 2) throw std::invalid_argument("pdf-grid needs at least 2 points per axis");
    const auto center = deterministic_output(x, cfg.params);
    const double h = half_width * std::sqrt(cfg.params.noise_power());
    CommandResult res;
    auto& t = res.table;
    t.columns = {"y_re", "y_im", "x0", "y0", "p_leading", "p_nlo", "p_nlo_raw"};
    for (int i = 0; i < points; ++i) {
        for (int j = 0; j < points; ++j) {
            const ComplexAmplitude y{center.re - h + 2.0 * h * i / (points - 1), center.im - h + 2.0 * h * j / (points - 1)};
            const auto rc = reduced_coords(x, y, cfg.params);
            const auto lo = conditional_pdf(x, y, cfg.params, PdfOrder::leading);
            const auto nlo = conditional_pdf(x, y, cfg.params, PdfOrder::nlo);
            t.rows.push_back({y.re, y.im, rc.x0, rc.y0, lo.value, nlo.value, nlo.raw});
        }
    }
    const auto v = assess_validity(x, cfg.params);
    if (!v.ok()) res.report.push_back("validity WARN " + v.message());
    return res;
}

inline void append_reports(CommandResult& res, const std::vector<validation::Report>& reports) {
    for (const auto& r : reports) {
        for (const auto& c : r.checks) res.report.push_back(r.name + "." + validation::format_line(c));
        res.ok = res.ok && r.passed();
    }
}

inline CommandResult cmd_validate(const RunConfig& cfg, const std::string& suite) {
    cfg.params.validate();
    const auto& all = validation::suites();
    CommandResult res;
    if (suite == "all") {
        for (const auto& [name, fn] : all) append_reports(res, fn(cfg.params));
        return res;
    }
    const auto it = all.find(suite);
    if (it == all.end()) {
        std::string names;
        for (const auto& [name, fn] : all) names += " " + name;
        throw std::invalid_argument("unknown suite '" + suite + "'; available: all" + names);
    }
    append_reports(res, it->second(cfg.params));
    return res;
}

inline Table histogram_table(const EmpiricalDensity& h) {
    Table t;
    if (h.radial) {
        t.columns = {"rho_lo", "rho_hi", "count", "density"};
        for (int i = 0; i < h.nx; ++i)
            t.rows.push_back({h.x_lo + i * h.dx(), h.x_lo + (i + 1) * h.dx(), static_cast<double>(h.count(i)),
                              h.density[static_cast<std::size_t>(i)]});
        return t;
    }
    t.columns = {"x0_center", "y0_center", "count", "density"};
    for (int i = 0; i < h.nx; ++i)
        for (int j = 0; j < h.ny; ++j)
            t.rows.push_back({h.x_lo + (i + 0.5) * h.dx(), h.y_lo + (j + 0.5) * h.dy(), static_cast<double>(h.count(i, j)),
                              h.density[static_cast<std::size_t>(i) * h.ny + j]});
    return t;
}

// Named Monte Carlo comparisons:
//   conditional  - reduced-frame histogram at X = 1 mW^{1/2} vs the analytic P[Y|X]
//   linear       - gamma = 0, histogram vs the exact Gaussian
//   output-beta2 - radial |Y| histogram for a Gaussian input vs the closed-form output PDF
inline CommandResult cmd_mc_check(const RunConfig& cfg, const std::string& which, double power) {
    cfg.params.validate();
    McConfig mc = cfg.mc;
    mc.workers = cfg.workers > 0 ? cfg.workers : mc.workers;
    CommandResult res;
    validation::Report r;
    r.name = which;
    if (which == "conditional" || which == "linear") {
        ChannelParams p = cfg.params;
        if (which == "linear") p.gamma = 0.0;
        const ComplexAmplitude x{std::sqrt(power), 0.0};
        const auto m = validation::mc_conditional(x, p, mc);
        if (which == "linear") {
            r.add("chi2_p_vs_gaussian", m.chi_leading.p_value, 0.01, m.chi_leading.p_value > 0.01);
        } else {
            r.at_most("tv_vs_leading_order", m.tv_leading, 0.02);
            r.add("chi2_p_vs_nlo", m.chi_nlo.p_value, 0.01, m.chi_nlo.p_value > 0.01);
            r.info("chi2_p_vs_leading_order", m.chi_leading.p_value);
        }
        r.at_most("undercoverage_flag", m.hist.undercoverage ? 1.0 : 0.0, 0.0);
        res.table = histogram_table(m.hist);
    } else if (which == "output-beta2") {
        const BetaInput d{2.0, power};
        const double rmax = 4.0 * std::sqrt(power + cfg.params.noise_power());
        const auto h = empirical_output(InputSampler::beta(d), cfg.params, mc, rmax);
        const auto probs = bin_probabilities(h, [&](double rho, double) { return beta_output_pdf(d, cfg.params, rho); });
        const auto chi = chi_square(h, probs);
        r.add("chi2_p_vs_closed_form", chi.p_value, 0.01, chi.p_value > 0.01);
        r.info("tv_vs_closed_form", total_variation(h, probs));
        res.table = histogram_table(h);
    } else {
        throw std::invalid_argument("unknown mc case '" + which + "'; available: conditional linear output-beta2");
    }
    for (const auto& c : r.checks) res.report.push_back(r.name + "." + validation::format_line(c));
    res.ok = r.passed();
    return res;
}

}  // namespace nlfiber::cli
