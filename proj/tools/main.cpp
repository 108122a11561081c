// Command-line front end: run / verify / exact / sweep.

#include "burgerslab/estimates.hpp"
#include "burgerslab/exact.hpp"
#include "burgerslab/experiment.hpp"
#include "burgerslab/moment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace burgerslab;

std::string default_out_root(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv(kOutEnvVar); env && *env) return env;
    return "runs";
}

std::optional<std::pair<double, double>> parse_window(const std::string& w) {
    if (w.empty()) return std::nullopt;
    const auto colon = w.find(':');
    if (colon == std::string::npos)
        throw ConfigError("--window expects T0:T1");
    try {
        const double t0 = std::stod(w.substr(0, colon));
        const double t1 = std::stod(w.substr(colon + 1));
        return std::make_pair(t0, t1);
    } catch (const std::exception&) {
        throw ConfigError("--window expects numeric T0:T1");
    }
}

int cmd_exact_constants(int d, const std::string& k_csv) {
    if (!k_csv.empty()) {
        std::vector<int> k;
        std::stringstream ss(k_csv);
        std::string item;
        while (std::getline(ss, item, ',')) if (!item.empty()) k.push_back(std::stoi(item));
        const MonomialConstants c = monomial_constants(k);
        std::cout << "exponents:";
        for (int kj : c.k) std::cout << ' ' << kj;
        std::cout << "\nK = " << c.K << "\nN = " << c.N
                  << "\nadmissible = " << (c.admissible ? "yes" : "no")
                  << "\ntheta = " << to_string(c.theta);
        if (c.decay_defined)
            std::cout << "\ngamma = " << to_string(c.gamma)
                      << "\ndelta = " << to_string(c.delta);
        else
            std::cout << "\ngamma/delta undefined (N <= K)";
        std::cout << "\nnorm exponent = " << to_string(c.norm_exponent) << "\n";
        return kExitPass;
    }
    const ExponentSet e = burgers_exponents(d);
    std::cout << "d = " << d << "\ngamma = " << to_string(e.gamma)
              << "\ndelta = " << to_string(e.delta) << "\nkappa = " << to_string(e.kappa)
              << "\nnu = " << to_string(e.nu) << "\ntheta = " << to_string(e.theta)
              << "\nbeta = " << to_string(e.beta) << "\nalpha = " << to_string(e.alpha)
              << "\np_star = " << to_string(e.p_star)
              << "\nH_d = " << to_string(hilbert_det(d)) << "\n";
    return kExitPass;
}

int cmd_exact_n_wave(double L, const std::vector<double>& ts, const std::vector<double>& ps) {
    std::cout << "L = " << L << "\n";
    const double mass = L * L / 2.0;  // conserved for every t
    for (double t : ts) {
        std::cout << "t = " << t << ": mass = " << format_g17(mass);
        for (double p : ps)
            std::cout << ", l" << p << " = " << format_g17(n_wave_lp_norm(L, t, p));
        std::cout << "\n";
    }
    return kExitPass;
}

int cmd_exact_riemann(double uL, double uR, double t, const std::vector<double>& ys) {
    for (double y : ys)
        std::cout << "u(" << t << ", " << y
                  << ") = " << format_g17(riemann_burgers_1d(uL, uR, t, y)) << "\n";
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"burgerslab: monotone finite-volume laboratory for multi-dimensional"
                 " Burgers-type conservation laws"};
    app.require_subcommand(1);

    std::string out_flag;
    app.add_option("--out", out_flag, "output root (default: $BURGERSLAB_OUT or ./runs)");

    // run
    auto* run_cmd = app.add_subcommand("run", "execute a configured run and write artifacts");
    std::string run_config;
    run_cmd->add_option("--config", run_config, "experiment JSON")->required();

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "evaluate estimate checks against a finished run");
    std::string verify_dir, verify_checks, verify_window;
    verify_cmd->add_option("--run", verify_dir, "run directory")->required();
    verify_cmd->add_option("--checks", verify_checks,
                           "comma-separated estimate names (default: all configured)");
    verify_cmd->add_option("--window", verify_window, "override fit window, T0:T1");

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "closed-form reference values");
    exact_cmd->require_subcommand(1);
    auto* const_cmd = exact_cmd->add_subcommand("constants", "scaling exponents/constants");
    int const_d = 2;
    std::string const_k;
    const_cmd->add_option("--d", const_d, "dimension of the Burgers family (default 2)");
    const_cmd->add_option("--k", const_k, "monomial exponent list, e.g. 2,3");
    auto* nwave_cmd = exact_cmd->add_subcommand("n_wave", "N-wave norms");
    double nw_L = 1.0;
    std::vector<double> nw_t{0.0}, nw_p{1.0, 2.0};
    nwave_cmd->add_option("--L", nw_L, "initial extent (default 1)");
    nwave_cmd->add_option("--t", nw_t, "times")->delimiter(',');
    nwave_cmd->add_option("--p", nw_p, "norm exponents")->delimiter(',');
    auto* riemann_cmd = exact_cmd->add_subcommand("riemann", "1-D Riemann solution samples");
    double rm_uL = 1.0, rm_uR = 0.0, rm_t = 1.0;
    std::vector<double> rm_y{0.0};
    riemann_cmd->add_option("--uL", rm_uL, "left state")->required();
    riemann_cmd->add_option("--uR", rm_uR, "right state")->required();
    riemann_cmd->add_option("--t", rm_t, "time");
    riemann_cmd->add_option("--y", rm_y, "sample points")->delimiter(',');

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a family of related experiments");
    std::string sweep_config, sweep_axis, sweep_values;
    int sweep_threads = 1;
    sweep_cmd->add_option("--config", sweep_config, "experiment JSON template")->required();
    sweep_cmd->add_option("--axis", sweep_axis, "mesh | lambda | truncation | flux_exponents")
        ->required();
    sweep_cmd->add_option("--values", sweep_values,
                          "comma-separated values ('|'-separated lists for flux_exponents)")
        ->required();
    sweep_cmd->add_option("--threads", sweep_threads, "concurrent sweep points (default 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(run_config, default_out_root(out_flag));
        if (*verify_cmd) {
            std::vector<std::string> names;
            std::stringstream ss(verify_checks);
            std::string item;
            while (std::getline(ss, item, ',')) if (!item.empty()) names.push_back(item);
            return cmd_verify(verify_dir, names, parse_window(verify_window));
        }
        if (*exact_cmd) {
            if (*const_cmd) return cmd_exact_constants(const_d, const_k);
            if (*nwave_cmd) return cmd_exact_n_wave(nw_L, nw_t, nw_p);
            if (*riemann_cmd) return cmd_exact_riemann(rm_uL, rm_uR, rm_t, rm_y);
        }
        if (*sweep_cmd)
            return cmd_sweep(sweep_config, sweep_axis, sweep_values, sweep_threads,
                             default_out_root(out_flag));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SolverError& e) {
        std::cerr << "runtime abort: " << e.what() << "\n";
        return kExitAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
