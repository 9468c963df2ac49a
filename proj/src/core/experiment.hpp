#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/dynamics.hpp"

namespace sqha {

/// Known experiment names: vqu, eigencheck, evolve, noise-check, lambda-q,
/// report.
bool is_known_experiment(const std::string& name);

struct ExperimentOutcome {
    std::vector<std::string> warnings;
    std::vector<std::filesystem::path> outputs;
};

/// Runs one experiment described by the config into out_dir, writing a
/// manifest (version, seed, config hash, canonical config) alongside the
/// CSV outputs. Throws ConfigError for validation failures and
/// NumericalAbort when the run itself goes numerically bad.
ExperimentOutcome run_experiment(const ConfigMap& config, const std::filesystem::path& out_dir);

/// Stochastic ensemble helper: n_runs matched runs with member seeds
/// derived from base_seed, fanned out across worker threads; results are
/// ordered by member index regardless of scheduling.
std::vector<EvolutionResult> run_ensemble(const ComplexField& psi0, const PhysicalParams& params,
                                          const EvolutionConfig& config, std::size_t n_runs,
                                          std::uint64_t base_seed);

} // namespace sqha
