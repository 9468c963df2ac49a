// Experiment runner for the sqha shared library. Thin shell: argv handling
// here, everything else behind the C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sqha.h"

namespace {

struct CommonFlags {
    std::string config;
    std::string out;
    std::string seed;
    std::string conserve_mass;
};

int exit_code_for(sqha_status status) {
    if (status == SQHA_OK) return 0;
    if (status == SQHA_ERR_NUMERICAL) return 3;
    return 2;
}

int run(const std::string& experiment, const CommonFlags& flags) {
    std::vector<std::string> overrides{"experiment=" + experiment};
    if (!flags.seed.empty()) {
        overrides.push_back("seed=" + flags.seed);
        overrides.push_back("noise.seed=" + flags.seed);
    }
    if (!flags.conserve_mass.empty())
        overrides.push_back("noise.conserve_mass=" + flags.conserve_mass);

    std::vector<const char*> raw;
    raw.reserve(overrides.size());
    for (const auto& o : overrides) raw.push_back(o.c_str());

    const std::string out_dir =
        flags.out.empty() ? "sqha-out-" + experiment : flags.out;

    sqha_status status;
    if (flags.config.empty())
        status = sqha_run_experiment_text("", out_dir.c_str(), raw.data(), raw.size());
    else
        status = sqha_run_experiment_file(flags.config.c_str(), out_dir.c_str(), raw.data(),
                                          raw.size());

    if (status != SQHA_OK) {
        std::fprintf(stderr, "sqha %s: error: %s\n", experiment.c_str(), sqha_last_error());
        return exit_code_for(status);
    }
    const char* warnings = sqha_last_warnings();
    if (warnings && warnings[0] != '\0')
        std::fprintf(stderr, "sqha %s: warning: %s\n", experiment.c_str(), warnings);
    std::fprintf(stderr, "sqha %s: outputs in %s\n", experiment.c_str(), out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic quantum hydrodynamics toolkit"};
    app.set_version_flag("--version", std::string(sqha_version()));
    app.require_subcommand(1);

    const std::vector<std::string> experiments{"vqu",         "eigencheck", "evolve",
                                               "noise-check", "lambda-q",   "report"};
    const std::vector<std::string> descriptions{
        "quantum potential of an amplitude field",
        "harmonic-oscillator eigenstate report (E_n, identity, stationarity)",
        "deterministic / stochastic time evolution with trajectories",
        "empirical noise covariance against the Gaussian kernel",
        "quantum potential range of interaction and tail typology",
        "decoherence regime report (lambda_c, lambda_q, T_c, products)"};

    CommonFlags flags;
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        CLI::App* sub = app.add_subcommand(experiments[i], descriptions[i]);
        sub->add_option("--config", flags.config, "config file (key = value sections)");
        sub->add_option("--out", flags.out, "output directory");
        sub->add_option("--seed", flags.seed, "seed override (u64)");
        sub->add_option("--conserve-mass", flags.conserve_mass,
                        "project the spatial mean out of each noise sample (true/false)");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) return run(experiments[i], flags);
    return 2;
}
