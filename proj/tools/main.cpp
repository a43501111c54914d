#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"

using namespace nlfiber;
using namespace nlfiber::cli;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

// Copies key from the JSON config into target unless the flag was given on the command line.
template <class T>
void from_config(const nlohmann::json& j, const char* key, const CLI::Option* opt, T& target) {
    if (opt->count() == 0 && j.contains(key)) target = j.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear nondispersive fiber channel: conditional PDF, mutual information, optimal input"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string inputs = "opt,beta1,beta2", config_path;
    std::uint64_t seed = cfg.mc.seed;
    auto* o_gamma = app.add_option("--gamma", cfg.params.gamma, "Kerr coefficient, 1/(mW km)");
    auto* o_len = app.add_option("--length-km", cfg.params.length_km, "Fiber length, km");
    auto* o_q = app.add_option("--q-noise", cfg.params.noise_density, "Noise density Q, mW/km");
    auto* o_ps = app.add_option("--power-start", cfg.power_start, "First grid power, mW");
    auto* o_pe = app.add_option("--power-stop", cfg.power_stop, "Last grid power, mW");
    auto* o_pn = app.add_option("--power-points", cfg.power_points, "Number of log-spaced powers");
    auto* o_in = app.add_option("--inputs", inputs, "Comma list of inputs: opt,beta1,beta2");
    auto* o_fmt = app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    auto* o_seed = app.add_option("--seed", seed, "Monte Carlo seed");
    auto* o_out = app.add_option("--out", cfg.out, "Output file (default stdout)");
    auto* o_bits = app.add_flag("--bits", cfg.bits, "Report mutual information in bits instead of nats");
    auto* o_workers = app.add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
    app.add_option("--config", config_path, "JSON config with the same field names; flags take precedence")
        ->check(CLI::ExistingFile);

    auto* sweep = app.add_subcommand("mi-sweep", "Mutual information curves over a power grid");

    auto* optimal = app.add_subcommand("optimal-input", "Optimal input parameters and density");
    double opt_power = 1.0;
    int opt_samples = 200;
    optimal->add_option("--power", opt_power, "Average power, mW")->required();
    optimal->add_option("--samples", opt_samples, "Density samples");

    auto* grid = app.add_subcommand("pdf-grid", "Conditional PDF P[Y|X] on a grid of Y");
    double x_re = 1.0, x_im = 0.0, half_width = 5.0;
    int points = 41;
    grid->add_option("--x-re", x_re, "Input real part, mW^1/2");
    grid->add_option("--x-im", x_im, "Input imaginary part, mW^1/2");
    grid->add_option("--points", points, "Grid points per axis");
    grid->add_option("--half-width", half_width, "Half-width in units of sqrt(QL)");

    auto* validate = app.add_subcommand("validate", "Run a validation suite");
    std::string suite = "all";
    validate->add_option("--suite", suite, "figures, normalization, output-pdf, brute-force, ode-residuals, solver, all");

    auto* mc = app.add_subcommand("mc-check", "Monte Carlo comparison against the analytic densities");
    std::string mc_case = "conditional";
    double mc_power = 1.0;
    mc->add_option("--case", mc_case, "conditional, linear, output-beta2");
    mc->add_option("--power", mc_power, "|X|^2 (conditional, linear) or average power (output-beta2), mW");
    auto* o_traj = mc->add_option("--n-traj", cfg.mc.n_traj, "Trajectories");
    auto* o_steps = mc->add_option("--n-steps", cfg.mc.n_steps, "Propagation steps");
    auto* o_bins = mc->add_option("--bins", cfg.mc.nx, "Bins per axis");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            const auto j = nlohmann::json::parse(in);
            from_config(j, "gamma", o_gamma, cfg.params.gamma);
            from_config(j, "length_km", o_len, cfg.params.length_km);
            from_config(j, "q_noise", o_q, cfg.params.noise_density);
            from_config(j, "power_start", o_ps, cfg.power_start);
            from_config(j, "power_stop", o_pe, cfg.power_stop);
            from_config(j, "power_points", o_pn, cfg.power_points);
            from_config(j, "format", o_fmt, cfg.format);
            from_config(j, "seed", o_seed, seed);
            from_config(j, "out", o_out, cfg.out);
            from_config(j, "bits", o_bits, cfg.bits);
            from_config(j, "workers", o_workers, cfg.workers);
            from_config(j, "n_traj", o_traj, cfg.mc.n_traj);
            from_config(j, "n_steps", o_steps, cfg.mc.n_steps);
            from_config(j, "bins", o_bins, cfg.mc.nx);
            if (o_in->count() == 0 && j.contains("inputs")) {
                const auto& v = j.at("inputs");
                if (v.is_array()) {
                    inputs.clear();
                    for (const auto& s : v) inputs += s.get<std::string>() + ",";
                } else {
                    inputs = v.get<std::string>();
                }
            }
        }
        cfg.inputs = split_list(inputs);
        cfg.mc.seed = seed;
        cfg.mc.ny = cfg.mc.nx;

        CommandResult res;
        if (*sweep) res = cmd_mi_sweep(cfg);
        else if (*optimal) res = cmd_optimal_input(cfg, opt_power, opt_samples);
        else if (*grid) res = cmd_pdf_grid(cfg, {x_re, x_im}, points, half_width);
        else if (*validate) res = cmd_validate(cfg, suite);
        else if (*mc) res = cmd_mc_check(cfg, mc_case, mc_power);

        const bool has_table = !res.table.columns.empty();
        if (has_table) {
            if (cfg.out.empty()) {
                write_table(std::cout, res.table, cfg.format);
            } else {
                std::ofstream f(cfg.out, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + cfg.out);
                write_table(f, res.table, cfg.format);
            }
        }
        std::ostream& rep = has_table && cfg.out.empty() ? std::cerr : std::cout;
        for (const auto& line : res.report) rep << line << '\n';
        return res.ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
