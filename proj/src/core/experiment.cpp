#include "core/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "core/csv.hpp"
#include "core/fields.hpp"
#include "core/nonlocality.hpp"
#include "core/noise.hpp"
#include "core/oscillator.hpp"
#include "core/regimes.hpp"
#include "core/version.hpp"

namespace sqha {

namespace {

namespace fs = std::filesystem;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t top_seed(const ConfigMap& cfg) { return cfg.get_u64("", "seed", 0); }

void write_manifest(const ConfigMap& cfg, const fs::path& dir, const std::string& experiment) {
    std::ofstream out(dir / "manifest.txt");
    if (!out) throw IoError("cannot write manifest in " + dir.string());
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    out << "sqha manifest\n"
        << "version = " << kVersion << "\n"
        << "experiment = " << experiment << "\n"
        << "seed = " << top_seed(cfg) << "\n"
        << "config_hash = " << hash << "\n"
        << "--- config ---\n"
        << cfg.serialize();
}

std::vector<double> parse_start_points(const std::string& csv) {
    std::vector<double> pts;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        pts.push_back(std::stod(cell));
    }
    return pts;
}

PseudoGaussianSpec pseudo_spec_from_config(const ConfigMap& cfg) {
    PseudoGaussianSpec spec;
    const std::string family = cfg.get_string("pseudo_gaussian", "case", "gaussian");
    if (family == "a") spec.family = PseudoGaussianSpec::Case::a;
    else if (family == "b") spec.family = PseudoGaussianSpec::Case::b;
    else if (family == "c") spec.family = PseudoGaussianSpec::Case::c;
    else if (family == "d") spec.family = PseudoGaussianSpec::Case::d;
    else if (family == "gaussian") spec.family = PseudoGaussianSpec::Case::gaussian;
    else throw ConfigError("pseudo_gaussian.case: unknown case '" + family + "'");
    spec.lambda_scale = cfg.get_double("pseudo_gaussian", "lambda", 1.0);
    spec.delta_q = cfg.get_double("pseudo_gaussian", "delta_q", 0.1);
    spec.g = cfg.get_double("pseudo_gaussian", "g", 1.0);
    spec.center = cfg.get_double("pseudo_gaussian", "center", 0.0);
    return spec;
}

RealField sqrt_field(const RealField& density) {
    std::vector<double> a(density.size());
    for (std::size_t j = 0; j < density.size(); ++j)
        a[j] = std::sqrt(std::max(density[j], 0.0));
    return RealField(density.grid(), std::move(a));
}

// ---------------------------------------------------------------------- vqu
ExperimentOutcome run_vqu(const ConfigMap& cfg, const fs::path& dir) {
    ExperimentOutcome out;
    PhysicalParams params = params_from_config(cfg);
    const std::string input = cfg.get_string("vqu", "input", "cosine");

    RealField amplitude = [&]() -> RealField {
        if (input == "cosine") {
            const double lambda = cfg.get_double("vqu", "wavelength", 1.0);
            Grid1D grid = grid_from_config(cfg, 0.0, 1.0, 4001);
            return RealField::sampled(
                grid, [&](double q) { return std::cos(2.0 * std::numbers::pi * q / lambda); });
        }
        if (input == "gaussian") {
            const double dq2 = cfg.get_double("vqu", "delta_q_sq", 1.0);
            const double center = cfg.get_double("vqu", "center", 0.0);
            Grid1D grid = grid_from_config(cfg, -8.0, 8.0, 8001);
            return RealField::sampled(grid, [&](double q) {
                return std::exp(-(q - center) * (q - center) / (2.0 * dq2));
            });
        }
        if (input == "pseudo_gaussian") {
            Grid1D grid = grid_from_config(cfg, -14.0, 14.0, 14001);
            auto pg = pseudo_gaussian(pseudo_spec_from_config(cfg), grid);
            return sqrt_field(pg.density);
        }
        if (input == "csv")
            return read_real_field_csv(cfg.require_string("vqu", "amplitude_csv"));
        throw ConfigError("vqu.input: unknown input '" + input +
                          "' (cosine | gaussian | pseudo_gaussian | csv)");
    }();

    std::vector<double> dens(amplitude.size());
    for (std::size_t j = 0; j < amplitude.size(); ++j)
        dens[j] = amplitude[j] * amplitude[j];
    RealField density = normalize(RealField(amplitude.grid(), std::move(dens)));
    if (boundary_density_exceeds(density))
        out.warnings.push_back("vqu: boundary density exceeds 1e-8 of the peak");

    auto res = compute_vqu(amplitude, params, cfg.get_double("vqu", "eps_node", kNodeEpsilonDefault));

    double mean = 0.0;
    std::size_t n_interior = 0;
    for (std::size_t j = 1; j + 1 < amplitude.size(); ++j) {
        if (!res.valid[j]) continue;
        mean += res.vqu[j];
        ++n_interior;
    }
    if (n_interior) mean /= static_cast<double>(n_interior);

    write_real_field_csv(dir / "amplitude.csv", amplitude);
    write_real_field_csv(dir / "vqu.csv", res.vqu);
    write_real_field_csv(dir / "force.csv", res.force);
    CsvWriter summary(dir / "summary.csv",
                      {"mean_vqu_interior", "quantum_energy", "n_valid", "n_masked"});
    summary.row({mean, quantum_energy(density, res), static_cast<double>(res.n_valid()),
                 static_cast<double>(amplitude.size() - res.n_valid())});
    out.outputs = {dir / "amplitude.csv", dir / "vqu.csv", dir / "force.csv",
                   dir / "summary.csv"};
    return out;
}

// ---------------------------------------------------------------- eigencheck
ExperimentOutcome run_eigencheck(const ConfigMap& cfg, const fs::path& dir) {
    ExperimentOutcome out;
    PhysicalParams params = params_from_config(cfg);
    const int n_max = static_cast<int>(cfg.get_u64("oscillator", "n_max", 5));
    const double omega = cfg.get_double("oscillator", "omega", 1.0);
    const double dx = cfg.get_double("oscillator", "dx", 1e-3);
    const double evo_dx = cfg.get_double("oscillator", "stationarity_dx", 2e-3);
    const double periods = cfg.get_double("oscillator", "stationarity_periods", 1.0);
    if (n_max < 0 || n_max > 12) throw ConfigError("oscillator.n_max: must be in [0, 12]");

    params.potential = Potential::harmonic(omega);

    CsvWriter report(dir / "report.csv", {"n", "E_n", "max_vqu_deviation", "stationarity_drift"});
    for (int n = 0; n <= n_max; ++n) {
        HOSpec spec{params.mass, omega, params.hbar, n};
        const double span = 6.0 * spec.turning_point() + 0.5;
        auto points = static_cast<std::size_t>(std::ceil(2.0 * span / dx)) + 1;
        Grid1D grid(-span, span, points);
        const double energy = energy_expectation(spec, grid, params);
        const double deviation = verify_vqu_identity(spec, grid, params).max_deviation;

        // Stationarity on a coarser evolution grid.
        auto evo_points = static_cast<std::size_t>(std::ceil(2.0 * span / evo_dx)) + 1;
        Grid1D evo_grid(-span, span, evo_points);
        ComplexField psi0 = ComplexField::from_real(ho_eigenstate(spec, evo_grid));
        const double period = 2.0 * std::numbers::pi / omega;
        EvolutionConfig evo;
        evo.dt = period / 100.0;
        evo.n_steps = static_cast<std::size_t>(std::llround(100.0 * periods));
        evo.record_every = 25;
        auto run = evolve_deterministic(psi0, params, evo);
        const RealField a0 = run.snapshots.front().abs();
        double drift = 0.0;
        for (const auto& snap : run.snapshots) {
            const RealField a = snap.abs();
            for (std::size_t j = 0; j < a.size(); ++j)
                drift = std::max(drift, std::abs(a[j] - a0[j]));
        }
        report.row({static_cast<double>(n), energy, deviation, drift});
    }
    out.outputs = {dir / "report.csv"};
    return out;
}

// -------------------------------------------------------------------- evolve
ComplexField initial_state(const ConfigMap& cfg, const Grid1D& grid,
                           const PhysicalParams& params) {
    const std::string kind = cfg.get_string("initial", "kind", "gaussian");
    if (kind == "ho_eigenstate") {
        HOSpec spec{params.mass, cfg.get_double("initial", "omega", 1.0), params.hbar,
                    static_cast<int>(cfg.get_u64("initial", "level", 0))};
        return ComplexField::from_real(ho_eigenstate(spec, grid));
    }
    if (kind == "gaussian") {
        const double sigma = cfg.get_double("initial", "sigma", 1.0);
        const double center = cfg.get_double("initial", "center", 0.0);
        const double p0 = cfg.get_double("initial", "momentum", 0.0);
        if (!(sigma > 0.0)) throw ConfigError("initial.sigma: must be > 0");
        RealField amp = RealField::sampled(grid, [&](double q) {
            return std::exp(-(q - center) * (q - center) / (4.0 * sigma * sigma));
        });
        std::vector<double> dens(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) dens[j] = amp[j] * amp[j];
        const double mass = trapezoid(dens, grid.dx());
        std::vector<double> scaled(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) scaled[j] = amp[j] / std::sqrt(mass);
        RealField action =
            RealField::sampled(grid, [&](double q) { return p0 * q; });
        return wave_from_polar(RealField(grid, std::move(scaled)), action, params.hbar);
    }
    if (kind == "plane_windowed") {
        const double p0 = cfg.get_double("initial", "momentum", 0.0);
        const double flat = cfg.get_double("initial", "flat_half_width", 15.0);
        const double edge = cfg.get_double("initial", "edge_width", 2.0);
        RealField amp = RealField::sampled(grid, [&](double q) {
            return 0.25 * (1.0 + std::tanh((q + flat) / edge)) *
                   (1.0 - std::tanh((q - flat) / edge));
        });
        std::vector<double> dens(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) dens[j] = amp[j] * amp[j];
        const double mass = trapezoid(dens, grid.dx());
        std::vector<double> scaled(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) scaled[j] = amp[j] / std::sqrt(mass);
        RealField action = RealField::sampled(grid, [&](double q) { return p0 * q; });
        return wave_from_polar(RealField(grid, std::move(scaled)), action, params.hbar);
    }
    if (kind == "pseudo_gaussian") {
        auto pg = pseudo_gaussian(pseudo_spec_from_config(cfg), grid);
        return ComplexField::from_real(sqrt_field(pg.density));
    }
    if (kind == "csv")
        return read_complex_field_csv(cfg.require_string("initial", "psi_csv"));
    throw ConfigError("initial.kind: unknown kind '" + kind +
                      "' (ho_eigenstate | gaussian | plane_windowed | pseudo_gaussian | csv)");
}

NoiseSpec noise_from_config(const ConfigMap& cfg) {
    NoiseSpec spec;
    spec.temperature = cfg.get_double("noise", "temperature", 0.0);
    spec.lambda_c = cfg.get_double("noise", "lambda_c", 1.0);
    spec.mu = cfg.get_double("noise", "mu", 1.0);
    spec.seed = cfg.get_u64("noise", "seed", top_seed(cfg));
    spec.conserve_mass = cfg.get_bool("noise", "conserve_mass", true);
    try {
        spec.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("noise: ") + e.what());
    }
    return spec;
}

std::vector<double> rms_delta_s_series(const TrajectoryBundle& bundle) {
    std::vector<double> rms(bundle.times.size(), 0.0);
    if (!bundle.has_split() || bundle.positions.empty()) return rms;
    for (std::size_t k = 0; k < bundle.times.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < bundle.action_delta.size(); ++i)
            acc += bundle.action_delta[i][k] * bundle.action_delta[i][k];
        rms[k] = std::sqrt(acc / static_cast<double>(bundle.action_delta.size()));
    }
    return rms;
}

ExperimentOutcome run_evolve(const ConfigMap& cfg, const fs::path& dir) {
    ExperimentOutcome out;
    PhysicalParams params = params_from_config(cfg);
    Grid1D grid = grid_from_config(cfg, -10.0, 10.0, 2001);
    ComplexField psi0 = initial_state(cfg, grid, params);

    EvolutionConfig evo;
    evo.dt = cfg.get_double("evolution", "dt", 1e-3);
    evo.n_steps = cfg.get_size("evolution", "n_steps", 1000);
    evo.record_every = cfg.get_size("evolution", "record_every", 10);
    const std::string scheme = cfg.get_string("evolution", "scheme", "deterministic");
    if (scheme == "deterministic") evo.scheme = Scheme::deterministic;
    else if (scheme == "stochastic") evo.scheme = Scheme::stochastic;
    else throw ConfigError("evolution.scheme: must be deterministic | stochastic");
    if (evo.scheme == Scheme::stochastic) {
        if (!cfg.has("", "seed") && !cfg.has("noise", "seed"))
            throw ConfigError("seed: stochastic experiments need an explicit seed");
        evo.noise = noise_from_config(cfg);
    }
    if (cfg.has("trajectories", "start_points"))
        evo.trajectory_starts =
            parse_start_points(cfg.require_string("trajectories", "start_points"));
    try {
        evo.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("evolution: ") + e.what());
    }

    // Stochastic runs carry a matched deterministic twin for the action split.
    std::optional<EvolutionResult> reference;
    if (evo.scheme == Scheme::stochastic) {
        EvolutionConfig ref = evo;
        ref.scheme = Scheme::deterministic;
        ref.noise.reset();
        reference = evolve_deterministic(psi0, params, ref);
    }
    EvolutionResult run = run_evolution(psi0, params, evo);
    for (const auto& w : run.warnings) out.warnings.push_back("evolve: " + w);

    if (run.trajectories && reference && reference->trajectories)
        attach_action_reference(*run.trajectories, *reference->trajectories);

    // Continuity residual per interior recorded time.
    std::vector<double> residual_col(run.times.size(), kNan);
    if (run.snapshots.size() >= 3) {
        auto res = continuity_residual(run.snapshots, run.times, params);
        for (std::size_t k = 0; k < res.times.size(); ++k) residual_col[k + 1] = res.max_abs[k];
    }

    std::vector<double> rms_col(run.times.size(), kNan);
    if (evo.scheme == Scheme::deterministic) {
        std::fill(rms_col.begin(), rms_col.end(), 0.0);  // delta S vanishes identically
    } else if (run.trajectories && run.trajectories->has_split()) {
        rms_col = rms_delta_s_series(*run.trajectories);
    }

    CsvWriter series(dir / "series.csv", {"t", "norm", "energy", "max_residual", "rms_deltaS"});
    for (std::size_t k = 0; k < run.times.size(); ++k)
        series.row({run.times[k], run.norm[k], run.energy[k], residual_col[k], rms_col[k]});
    out.outputs.push_back(dir / "series.csv");

    if (run.trajectories) {
        std::vector<std::string> cols{"t"};
        for (std::size_t i = 0; i < run.trajectories->start_points.size(); ++i)
            cols.push_back("q_" + std::to_string(i + 1));
        CsvWriter traj(dir / "trajectories.csv", cols);
        for (std::size_t k = 0; k < run.trajectories->times.size(); ++k) {
            std::vector<double> row{run.trajectories->times[k]};
            for (const auto& q : run.trajectories->positions) row.push_back(q[k]);
            traj.row(row);
        }
        out.outputs.push_back(dir / "trajectories.csv");

        CsvWriter action(dir / "actions.csv", [&] {
            std::vector<std::string> c{"t"};
            for (std::size_t i = 0; i < run.trajectories->start_points.size(); ++i)
                c.push_back("S_" + std::to_string(i + 1));
            return c;
        }());
        for (std::size_t k = 0; k < run.trajectories->times.size(); ++k) {
            std::vector<double> row{run.trajectories->times[k]};
            for (const auto& s : run.trajectories->action) row.push_back(s[k]);
            action.row(row);
        }
        out.outputs.push_back(dir / "actions.csv");
    }

    for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
        char name[48];
        std::snprintf(name, sizeof(name), "snapshot_%06zu.csv", k);
        write_complex_field_csv(dir / name, run.snapshots[k]);
        out.outputs.push_back(dir / name);
    }
    return out;
}

// ---------------------------------------------------------------- noise-check
ExperimentOutcome run_noise_check(const ConfigMap& cfg, const fs::path& dir) {
    ExperimentOutcome out;
    PhysicalParams params = params_from_config(cfg);
    NoiseSpec spec = noise_from_config(cfg);
    if (!cfg.has("", "seed") && !cfg.has("noise", "seed"))
        throw ConfigError("seed: stochastic experiments need an explicit seed");
    const double dt = cfg.get_double("evolution", "dt", 1e-2);
    const std::size_t n_samples = cfg.get_size("noise", "n_samples", 10000);
    Grid1D grid = grid_from_config(cfg, 0.0, 20.0 * spec.lambda_c,
                                   static_cast<std::size_t>(std::ceil(20.0 * spec.lambda_c /
                                                                      (spec.lambda_c / 10.0))) + 1);

    NormalSampler rng(spec.seed);
    const double dx = grid.dx();
    const std::vector<double> seps{0.0, 0.5 * spec.lambda_c, spec.lambda_c, 2.0 * spec.lambda_c};
    std::vector<std::size_t> offsets;
    for (double s : seps) offsets.push_back(static_cast<std::size_t>(std::llround(s / dx)));

    // Interior margin keeps the estimate clear of edge effects.
    const auto margin = static_cast<std::size_t>(std::ceil(2.0 * spec.lambda_c / dx));
    std::vector<double> acc(offsets.size(), 0.0);
    std::vector<std::size_t> cnt(offsets.size(), 0);
    RealField first_sample(grid, std::vector<double>(grid.size(), 0.0));
    for (std::size_t s = 0; s < n_samples; ++s) {
        RealField eta = sample_noise(grid, spec, params.boltzmann, dt, rng);
        if (s == 0) first_sample = eta;
        for (std::size_t o = 0; o < offsets.size(); ++o) {
            const std::size_t off = offsets[o];
            for (std::size_t j = margin; j + off + margin < grid.size(); ++j) {
                acc[o] += eta[j] * eta[j + off];
                ++cnt[o];
            }
        }
    }

    const double c0_theory = noise_variance(spec, params.boltzmann, dt);
    CsvWriter cov(dir / "covariance.csv",
                  {"separation", "empirical", "theoretical", "empirical_over_theory"});
    for (std::size_t o = 0; o < offsets.size(); ++o) {
        const double sep = static_cast<double>(offsets[o]) * dx;
        const double emp = cnt[o] ? acc[o] / static_cast<double>(cnt[o]) : 0.0;
        const double theo =
            c0_theory * std::exp(-sep * sep / (spec.lambda_c * spec.lambda_c));
        cov.row({sep, emp, theo, theo != 0.0 ? emp / theo : 0.0});
    }
    write_real_field_csv(dir / "noise_sample.csv", first_sample);
    out.outputs = {dir / "covariance.csv", dir / "noise_sample.csv"};
    return out;
}

// ------------------------------------------------------------------ lambda-q
ExperimentOutcome run_lambda_q(const ConfigMap& cfg, const fs::path& dir) {
    ExperimentOutcome out;
    PhysicalParams params = params_from_config(cfg);

    RealField amplitude = [&]() -> RealField {
        if (cfg.has("lambda_q", "amplitude_csv"))
            return read_real_field_csv(cfg.require_string("lambda_q", "amplitude_csv"));
        Grid1D grid = grid_from_config(cfg, -14.0, 14.0, 14001);
        auto pg = pseudo_gaussian(pseudo_spec_from_config(cfg), grid);
        return sqrt_field(pg.density);
    }();

    const double lc = cfg.has("lambda_q", "lambda_c")
                          ? cfg.require_double("lambda_q", "lambda_c")
                          : lambda_c(params);
    if (!std::isfinite(lc))
        throw ConfigError("lambda_q.lambda_c: needed explicitly when temperature is 0");
    const double q_max = cfg.get_double("lambda_q", "q_max", 6.0);
    const double center = cfg.get_double("lambda_q", "center",
                                         cfg.get_double("pseudo_gaussian", "center", 0.0));

    // The tail analysis needs the quantum potential deep into the tail, so
    // the node mask is relaxed to representability only.
    const double eps = cfg.get_double("lambda_q", "eps_node", 0.0);
    auto qp = compute_vqu(amplitude, params, eps);
    auto res = lambda_q(qp, lc, q_max, center);
    auto typ = classify_typology(amplitude);

    CsvWriter row(dir / "lambda_q.csv", {"lambda_q", "typology", "k_fit", "fit_residual"});
    row.raw_row({format_double(res.value), typology_name(typ.typology),
                 format_double(typ.tail.poly_degree), format_double(typ.tail.fit_residual)});
    CsvWriter diag(dir / "diagnostics.csv",
                   {"finite", "tail_exponent", "floored", "cutoff_sensitivity", "quad_error"});
    diag.row({res.finite ? 1.0 : 0.0, res.tail_exponent, res.floored ? 1.0 : 0.0,
              res.cutoff_sensitivity, res.quad_error});
    out.outputs = {dir / "lambda_q.csv", dir / "diagnostics.csv"};
    return out;
}

// -------------------------------------------------------------------- report
ExperimentOutcome run_report(const ConfigMap& cfg, const fs::path& dir) {
    ExperimentOutcome out;
    PhysicalParams params = params_from_config(cfg);
    const double system_length = cfg.require_double("report", "system_length");
    const std::string lq_text = cfg.get_string("report", "lambda_q", "infinite");
    const double lq = (lq_text == "infinite" || lq_text == "inf")
                          ? kInfiniteLength
                          : cfg.require_double("report", "lambda_q");

    std::optional<ForceFluctuation> diag;
    if (cfg.has("report", "fluctuation_ratio")) {
        ForceFluctuation f;
        f.ratio = cfg.require_double("report", "fluctuation_ratio");
        f.force_norm = cfg.get_double("report", "force_norm", 0.0);
        f.fluctuation_norm = cfg.get_double("report", "fluctuation_norm", 0.0);
        diag = f;
    }

    RegimeReport rep = regime_report(params, system_length, lq, diag);

    CsvWriter row(dir / "report.csv",
                  {"lambda_c", "lambda_q", "lambda_q_effective", "system_length", "T_c",
                   "delta_E", "delta_p", "Et_product", "Lp_product", "force_norm",
                   "fluctuation_norm", "fluctuation_over_force", "regime"});
    row.raw_row({format_double(rep.lambda_c), format_double(rep.lambda_q),
                 format_double(rep.lambda_q_effective), format_double(rep.system_length),
                 format_double(rep.t_c), format_double(rep.products.delta_e),
                 format_double(rep.products.delta_p), format_double(rep.products.e_t_product),
                 format_double(rep.products.l_p_product), format_double(rep.force_norm),
                 format_double(rep.fluctuation_norm), format_double(rep.ratio),
                 regime_name(rep.regime)});

    std::ofstream text(dir / "report.txt");
    if (!text) throw IoError("cannot write report.txt");
    text << format_regime_report(rep);
    out.outputs = {dir / "report.csv", dir / "report.txt"};
    return out;
}

} // namespace

bool is_known_experiment(const std::string& name) {
    return name == "vqu" || name == "eigencheck" || name == "evolve" ||
           name == "noise-check" || name == "lambda-q" || name == "report";
}

ExperimentOutcome run_experiment(const ConfigMap& config, const fs::path& out_dir) {
    const std::string experiment = config.get_string("", "experiment", "");
    if (experiment.empty())
        throw ConfigError("experiment: missing (vqu | eigencheck | evolve | noise-check | "
                          "lambda-q | report)");
    if (!is_known_experiment(experiment))
        throw ConfigError("experiment: unknown experiment '" + experiment + "'");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());
    write_manifest(config, out_dir, experiment);

    ExperimentOutcome out;
    if (experiment == "vqu") out = run_vqu(config, out_dir);
    else if (experiment == "eigencheck") out = run_eigencheck(config, out_dir);
    else if (experiment == "evolve") out = run_evolve(config, out_dir);
    else if (experiment == "noise-check") out = run_noise_check(config, out_dir);
    else if (experiment == "lambda-q") out = run_lambda_q(config, out_dir);
    else out = run_report(config, out_dir);
    out.outputs.push_back(out_dir / "manifest.txt");
    return out;
}

std::vector<EvolutionResult> run_ensemble(const ComplexField& psi0, const PhysicalParams& params,
                                          const EvolutionConfig& config, std::size_t n_runs,
                                          std::uint64_t base_seed) {
    if (!config.noise) throw InvalidInput("run_ensemble: config needs a noise spec");
    std::vector<EvolutionResult> results(n_runs);
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n_runs);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n_runs) break;
            EvolutionConfig c = config;
            c.scheme = Scheme::stochastic;
            c.noise->seed = NormalSampler::derive_seed(base_seed, k);
            results[k] = evolve_stochastic(psi0, params, c);
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

} // namespace sqha
