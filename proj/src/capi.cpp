#include "sqha.h"

#include <cstring>
#include <string>

#include "core/config.hpp"
#include "core/csv.hpp"
#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/fields.hpp"
#include "core/nonlocality.hpp"
#include "core/noise.hpp"
#include "core/oscillator.hpp"
#include "core/qpotential.hpp"
#include "core/regimes.hpp"
#include "core/version.hpp"

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_warnings;

sqha_status fail(sqha_status code, const char* what) {
    g_last_error = what ? what : "";
    return code;
}

template <typename Fn>
sqha_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SQHA_OK;
    } catch (const sqha::ConfigError& e) {
        return fail(SQHA_ERR_CONFIG, e.what());
    } catch (const sqha::InvalidInput& e) {
        return fail(SQHA_ERR_INVALID_ARGUMENT, e.what());
    } catch (const sqha::NumericalAbort& e) {
        return fail(SQHA_ERR_NUMERICAL, e.what());
    } catch (const sqha::IoError& e) {
        return fail(SQHA_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SQHA_ERR_UNKNOWN, e.what());
    } catch (...) {
        return fail(SQHA_ERR_UNKNOWN, "unknown error");
    }
}

sqha_status need(bool ok, const char* what) {
    return ok ? SQHA_OK : fail(SQHA_ERR_INVALID_ARGUMENT, what);
}

} // namespace

struct sqha_grid { sqha::Grid1D grid; };
struct sqha_real_field { sqha::RealField field; };
struct sqha_complex_field { sqha::ComplexField field; };
struct sqha_params { sqha::PhysicalParams params; };
struct sqha_vqu { sqha::QuantumPotentialResult result; };
struct sqha_noise {
    sqha::NoiseSpec spec;
    sqha::NormalSampler rng;
};
struct sqha_run { sqha::EvolutionResult result; };

extern "C" {

const char* sqha_version(void) { return sqha::kVersion; }
const char* sqha_last_error(void) { return g_last_error.c_str(); }
const char* sqha_last_warnings(void) { return g_last_warnings.c_str(); }

/* ------------------------------------------------------------------ grids */

sqha_status sqha_grid_create(double x_min, double x_max, size_t n_points, sqha_grid** out) {
    if (auto s = need(out != nullptr, "sqha_grid_create: out is NULL")) return s;
    return guarded([&] { *out = new sqha_grid{sqha::Grid1D(x_min, x_max, n_points)}; });
}
void sqha_grid_free(sqha_grid* grid) { delete grid; }
size_t sqha_grid_size(const sqha_grid* grid) { return grid ? grid->grid.size() : 0; }
double sqha_grid_dx(const sqha_grid* grid) { return grid ? grid->grid.dx() : 0.0; }
double sqha_grid_x(const sqha_grid* grid, size_t j) {
    return grid && j < grid->grid.size() ? grid->grid.x(j) : 0.0;
}

/* ----------------------------------------------------------------- fields */

sqha_status sqha_real_field_create(const sqha_grid* grid, const double* values, size_t n,
                                   sqha_real_field** out) {
    if (auto s = need(grid && values && out, "sqha_real_field_create: NULL argument")) return s;
    if (auto s = need(n == grid->grid.size(), "sqha_real_field_create: length mismatch"))
        return s;
    return guarded([&] {
        *out = new sqha_real_field{
            sqha::RealField(grid->grid, std::vector<double>(values, values + n))};
    });
}
void sqha_real_field_free(sqha_real_field* field) { delete field; }
size_t sqha_real_field_size(const sqha_real_field* field) {
    return field ? field->field.size() : 0;
}
sqha_status sqha_real_field_values(const sqha_real_field* field, double* out, size_t n) {
    if (auto s = need(field && out, "sqha_real_field_values: NULL argument")) return s;
    if (auto s = need(n == field->field.size(), "sqha_real_field_values: length mismatch"))
        return s;
    std::memcpy(out, field->field.values().data(), n * sizeof(double));
    return SQHA_OK;
}
sqha_status sqha_real_field_write_csv(const sqha_real_field* field, const char* path) {
    if (auto s = need(field && path, "sqha_real_field_write_csv: NULL argument")) return s;
    return guarded([&] { sqha::write_real_field_csv(path, field->field); });
}
sqha_status sqha_real_field_read_csv(const char* path, sqha_real_field** out) {
    if (auto s = need(path && out, "sqha_real_field_read_csv: NULL argument")) return s;
    return guarded([&] { *out = new sqha_real_field{sqha::read_real_field_csv(path)}; });
}

sqha_status sqha_complex_field_create(const sqha_grid* grid, const double* re_im, size_t n,
                                      sqha_complex_field** out) {
    if (auto s = need(grid && re_im && out, "sqha_complex_field_create: NULL argument")) return s;
    if (auto s = need(n == grid->grid.size(), "sqha_complex_field_create: length mismatch"))
        return s;
    return guarded([&] {
        std::vector<sqha::Complex> v(n);
        for (size_t j = 0; j < n; ++j) v[j] = sqha::Complex(re_im[2 * j], re_im[2 * j + 1]);
        *out = new sqha_complex_field{sqha::ComplexField(grid->grid, std::move(v))};
    });
}
void sqha_complex_field_free(sqha_complex_field* field) { delete field; }
size_t sqha_complex_field_size(const sqha_complex_field* field) {
    return field ? field->field.size() : 0;
}
sqha_status sqha_complex_field_values(const sqha_complex_field* field, double* re_im, size_t n) {
    if (auto s = need(field && re_im, "sqha_complex_field_values: NULL argument")) return s;
    if (auto s = need(n == field->field.size(), "sqha_complex_field_values: length mismatch"))
        return s;
    for (size_t j = 0; j < n; ++j) {
        re_im[2 * j] = field->field[j].real();
        re_im[2 * j + 1] = field->field[j].imag();
    }
    return SQHA_OK;
}
sqha_status sqha_complex_field_write_csv(const sqha_complex_field* field, const char* path) {
    if (auto s = need(field && path, "sqha_complex_field_write_csv: NULL argument")) return s;
    return guarded([&] { sqha::write_complex_field_csv(path, field->field); });
}
sqha_status sqha_complex_field_read_csv(const char* path, sqha_complex_field** out) {
    if (auto s = need(path && out, "sqha_complex_field_read_csv: NULL argument")) return s;
    return guarded([&] { *out = new sqha_complex_field{sqha::read_complex_field_csv(path)}; });
}

sqha_status sqha_normalize(const sqha_real_field* density, sqha_real_field** out) {
    if (auto s = need(density && out, "sqha_normalize: NULL argument")) return s;
    return guarded([&] { *out = new sqha_real_field{sqha::normalize(density->field)}; });
}

sqha_status sqha_wave_from_polar(const sqha_real_field* amplitude, const sqha_real_field* action,
                                 double hbar, sqha_complex_field** out) {
    if (auto s = need(amplitude && action && out, "sqha_wave_from_polar: NULL argument"))
        return s;
    return guarded([&] {
        *out = new sqha_complex_field{
            sqha::wave_from_polar(amplitude->field, action->field, hbar)};
    });
}

sqha_status sqha_polar_from_wave(const sqha_complex_field* psi, double hbar, double eps_node,
                                 sqha_real_field** amplitude, sqha_real_field** momentum,
                                 uint8_t* valid) {
    if (auto s = need(psi && amplitude && momentum, "sqha_polar_from_wave: NULL argument"))
        return s;
    return guarded([&] {
        auto polar = sqha::polar_from_wave(psi->field, hbar, eps_node);
        if (valid)
            for (size_t j = 0; j < polar.valid.size(); ++j) valid[j] = polar.valid[j] ? 1 : 0;
        *amplitude = new sqha_real_field{std::move(polar.amplitude)};
        *momentum = new sqha_real_field{std::move(polar.momentum)};
    });
}

/* ----------------------------------------------------------------- params */

sqha_status sqha_params_create(double mass, double hbar, double boltzmann, double temperature,
                               sqha_params** out) {
    if (auto s = need(out != nullptr, "sqha_params_create: out is NULL")) return s;
    return guarded([&] {
        sqha::PhysicalParams p;
        p.mass = mass;
        p.hbar = hbar;
        p.boltzmann = boltzmann;
        p.temperature = temperature;
        p.validate();
        *out = new sqha_params{p};
    });
}
void sqha_params_free(sqha_params* params) { delete params; }
sqha_status sqha_params_set_light_speed(sqha_params* params, double c) {
    if (auto s = need(params != nullptr, "sqha_params_set_light_speed: NULL params")) return s;
    return guarded([&] {
        params->params.light_speed = c;
        params->params.validate();
    });
}
sqha_status sqha_params_set_free_potential(sqha_params* params) {
    if (auto s = need(params != nullptr, "sqha_params_set_free_potential: NULL params")) return s;
    params->params.potential = sqha::Potential::free_particle();
    return SQHA_OK;
}
sqha_status sqha_params_set_harmonic_potential(sqha_params* params, double omega, double center) {
    if (auto s = need(params != nullptr, "sqha_params_set_harmonic_potential: NULL params"))
        return s;
    return guarded([&] { params->params.potential = sqha::Potential::harmonic(omega, center); });
}
sqha_status sqha_params_set_tabulated_potential(sqha_params* params, const sqha_real_field* v) {
    if (auto s = need(params && v, "sqha_params_set_tabulated_potential: NULL argument"))
        return s;
    return guarded([&] { params->params.potential = sqha::Potential::tabulated(v->field); });
}

/* ------------------------------------------------------- quantum potential */

sqha_status sqha_compute_vqu(const sqha_real_field* amplitude, const sqha_params* params,
                             double eps_node, sqha_vqu** out) {
    if (auto s = need(amplitude && params && out, "sqha_compute_vqu: NULL argument")) return s;
    return guarded([&] {
        *out = new sqha_vqu{sqha::compute_vqu(amplitude->field, params->params, eps_node)};
    });
}
void sqha_vqu_free(sqha_vqu* vqu) { delete vqu; }
sqha_status sqha_vqu_potential(const sqha_vqu* vqu, sqha_real_field** out) {
    if (auto s = need(vqu && out, "sqha_vqu_potential: NULL argument")) return s;
    return guarded([&] { *out = new sqha_real_field{vqu->result.vqu}; });
}
sqha_status sqha_vqu_force(const sqha_vqu* vqu, sqha_real_field** out) {
    if (auto s = need(vqu && out, "sqha_vqu_force: NULL argument")) return s;
    return guarded([&] { *out = new sqha_real_field{vqu->result.force}; });
}
sqha_status sqha_vqu_mask(const sqha_vqu* vqu, uint8_t* out, size_t n) {
    if (auto s = need(vqu && out, "sqha_vqu_mask: NULL argument")) return s;
    if (auto s = need(n == vqu->result.valid.size(), "sqha_vqu_mask: length mismatch")) return s;
    for (size_t j = 0; j < n; ++j) out[j] = vqu->result.valid[j] ? 1 : 0;
    return SQHA_OK;
}
sqha_status sqha_quantum_energy(const sqha_real_field* density, const sqha_vqu* vqu,
                                double* out) {
    if (auto s = need(density && vqu && out, "sqha_quantum_energy: NULL argument")) return s;
    return guarded([&] { *out = sqha::quantum_energy(density->field, vqu->result); });
}

/* -------------------------------------------------------------- oscillator */

sqha_status sqha_hermite(int n, double x, double* out) {
    if (auto s = need(out != nullptr, "sqha_hermite: out is NULL")) return s;
    return guarded([&] { *out = sqha::hermite(n, x); });
}
sqha_status sqha_ho_eigenstate(double mass, double omega, double hbar, int level,
                               const sqha_grid* grid, sqha_real_field** out) {
    if (auto s = need(grid && out, "sqha_ho_eigenstate: NULL argument")) return s;
    return guarded([&] {
        sqha::HOSpec spec{mass, omega, hbar, level};
        *out = new sqha_real_field{sqha::ho_eigenstate(spec, grid->grid)};
    });
}
sqha_status sqha_ho_energy_expectation(double mass, double omega, double hbar, int level,
                                       const sqha_grid* grid, double* out) {
    if (auto s = need(grid && out, "sqha_ho_energy_expectation: NULL argument")) return s;
    return guarded([&] {
        sqha::HOSpec spec{mass, omega, hbar, level};
        sqha::PhysicalParams p;
        p.mass = mass;
        p.hbar = hbar;
        p.potential = sqha::Potential::harmonic(omega);
        *out = sqha::energy_expectation(spec, grid->grid, p);
    });
}
sqha_status sqha_ho_identity_deviation(double mass, double omega, double hbar, int level,
                                       const sqha_grid* grid, double* out) {
    if (auto s = need(grid && out, "sqha_ho_identity_deviation: NULL argument")) return s;
    return guarded([&] {
        sqha::HOSpec spec{mass, omega, hbar, level};
        sqha::PhysicalParams p;
        p.mass = mass;
        p.hbar = hbar;
        *out = sqha::verify_vqu_identity(spec, grid->grid, p).max_deviation;
    });
}

/* ------------------------------------------------------------------- noise */

double sqha_lambda_c(const sqha_params* params) {
    if (!params) return 0.0;
    try {
        return sqha::lambda_c(params->params);
    } catch (...) {
        return 0.0;
    }
}
sqha_status sqha_noise_create(double temperature, double lambda_c, double mu, uint64_t seed,
                              int conserve_mass, sqha_noise** out) {
    if (auto s = need(out != nullptr, "sqha_noise_create: out is NULL")) return s;
    return guarded([&] {
        sqha::NoiseSpec spec;
        spec.temperature = temperature;
        spec.lambda_c = lambda_c;
        spec.mu = mu;
        spec.seed = seed;
        spec.conserve_mass = conserve_mass != 0;
        spec.validate();
        *out = new sqha_noise{spec, sqha::NormalSampler(seed)};
    });
}
void sqha_noise_free(sqha_noise* noise) { delete noise; }
sqha_status sqha_noise_sample(sqha_noise* noise, const sqha_grid* grid, double boltzmann,
                              double dt, sqha_real_field** out) {
    if (auto s = need(noise && grid && out, "sqha_noise_sample: NULL argument")) return s;
    return guarded([&] {
        *out = new sqha_real_field{
            sqha::sample_noise(grid->grid, noise->spec, boltzmann, dt, noise->rng)};
    });
}

/* ---------------------------------------------------------------- dynamics */

sqha_status sqha_evolve(const sqha_complex_field* psi0, const sqha_params* params,
                        const sqha_evolution_opts* opts, sqha_run** out) {
    if (auto s = need(psi0 && params && opts && out, "sqha_evolve: NULL argument")) return s;
    return guarded([&] {
        sqha::EvolutionConfig cfg;
        cfg.dt = opts->dt;
        cfg.n_steps = opts->n_steps;
        cfg.record_every = opts->record_every ? opts->record_every : 1;
        cfg.scheme = opts->stochastic ? sqha::Scheme::stochastic : sqha::Scheme::deterministic;
        if (opts->stochastic) {
            sqha::NoiseSpec spec;
            spec.temperature = opts->noise_temperature;
            spec.lambda_c = opts->noise_lambda_c;
            spec.mu = opts->noise_mu;
            spec.seed = opts->noise_seed;
            spec.conserve_mass = opts->noise_conserve_mass != 0;
            cfg.noise = spec;
        }
        if (opts->trajectory_starts && opts->n_trajectories)
            cfg.trajectory_starts.assign(opts->trajectory_starts,
                                         opts->trajectory_starts + opts->n_trajectories);
        *out = new sqha_run{sqha::run_evolution(psi0->field, params->params, cfg)};
    });
}
void sqha_run_free(sqha_run* run) { delete run; }
size_t sqha_run_n_snapshots(const sqha_run* run) { return run ? run->result.times.size() : 0; }
sqha_status sqha_run_time(const sqha_run* run, size_t k, double* out) {
    if (auto s = need(run && out && k < run->result.times.size(), "sqha_run_time: bad index"))
        return s;
    *out = run->result.times[k];
    return SQHA_OK;
}
sqha_status sqha_run_norm(const sqha_run* run, size_t k, double* out) {
    if (auto s = need(run && out && k < run->result.norm.size(), "sqha_run_norm: bad index"))
        return s;
    *out = run->result.norm[k];
    return SQHA_OK;
}
sqha_status sqha_run_energy(const sqha_run* run, size_t k, double* out) {
    if (auto s = need(run && out && k < run->result.energy.size(), "sqha_run_energy: bad index"))
        return s;
    *out = run->result.energy[k];
    return SQHA_OK;
}
sqha_status sqha_run_snapshot(const sqha_run* run, size_t k, sqha_complex_field** out) {
    if (auto s =
            need(run && out && k < run->result.snapshots.size(), "sqha_run_snapshot: bad index"))
        return s;
    return guarded([&] { *out = new sqha_complex_field{run->result.snapshots[k]}; });
}
size_t sqha_run_n_trajectories(const sqha_run* run) {
    return run && run->result.trajectories ? run->result.trajectories->start_points.size() : 0;
}
sqha_status sqha_run_trajectory(const sqha_run* run, size_t i, double* q, double* s_out,
                                size_t n) {
    if (auto s = need(run && q && s_out, "sqha_run_trajectory: NULL argument")) return s;
    if (auto s = need(run->result.trajectories &&
                          i < run->result.trajectories->positions.size() &&
                          n == run->result.trajectories->times.size(),
                      "sqha_run_trajectory: bad index or length"))
        return s;
    const auto& b = *run->result.trajectories;
    for (size_t k = 0; k < n; ++k) {
        q[k] = b.positions[i][k];
        s_out[k] = b.action[i][k];
    }
    return SQHA_OK;
}

/* ------------------------------------------------------------- nonlocality */

namespace {
sqha::PseudoGaussianSpec convert(const sqha_pseudo_gaussian_spec* spec) {
    sqha::PseudoGaussianSpec s;
    switch (spec->family) {
        case 'a': s.family = sqha::PseudoGaussianSpec::Case::a; break;
        case 'b': s.family = sqha::PseudoGaussianSpec::Case::b; break;
        case 'c': s.family = sqha::PseudoGaussianSpec::Case::c; break;
        case 'd': s.family = sqha::PseudoGaussianSpec::Case::d; break;
        case 'g': s.family = sqha::PseudoGaussianSpec::Case::gaussian; break;
        default:
            throw sqha::InvalidInput("pseudo-gaussian family must be one of a, b, c, d, g");
    }
    s.lambda_scale = spec->lambda_scale;
    s.delta_q = spec->delta_q;
    s.g = spec->g;
    s.center = spec->center;
    return s;
}
} // namespace

sqha_status sqha_pseudo_gaussian(const sqha_pseudo_gaussian_spec* spec, const sqha_grid* grid,
                                 sqha_real_field** density) {
    if (auto s = need(spec && grid && density, "sqha_pseudo_gaussian: NULL argument")) return s;
    return guarded([&] {
        auto res = sqha::pseudo_gaussian(convert(spec), grid->grid);
        *density = new sqha_real_field{std::move(res.density)};
    });
}

sqha_status sqha_classify_typology(const sqha_real_field* amplitude, sqha_typology_result* out) {
    if (auto s = need(amplitude && out, "sqha_classify_typology: NULL argument")) return s;
    return guarded([&] {
        auto res = sqha::classify_typology(amplitude->field);
        out->typology = static_cast<int>(res.typology);
        out->poly_degree = res.tail.poly_degree;
        out->phi = res.tail.phi;
        out->fit_residual = res.tail.fit_residual;
        out->window_lo = res.tail.fit_window_lo;
        out->window_hi = res.tail.fit_window_hi;
    });
}
const char* sqha_typology_name(int typology) {
    return sqha::typology_name(static_cast<sqha::Typology>(typology));
}

sqha_status sqha_lambda_q(const sqha_vqu* vqu, double lambda_c, double q_max, double center,
                          sqha_lambda_q_result* out) {
    if (auto s = need(vqu && out, "sqha_lambda_q: NULL argument")) return s;
    return guarded([&] {
        auto res = sqha::lambda_q(vqu->result, lambda_c, q_max, center);
        out->finite = res.finite ? 1 : 0;
        out->value = res.value;
        out->tail_exponent = res.tail_exponent;
        out->floored = res.floored ? 1 : 0;
        out->cutoff_sensitivity = res.cutoff_sensitivity;
        out->quad_error = res.quad_error;
    });
}

sqha_status sqha_case_d_asymptotics(const sqha_pseudo_gaussian_spec* spec,
                                    const sqha_params* params, sqha_case_d_result* out) {
    if (auto s = need(spec && params && out, "sqha_case_d_asymptotics: NULL argument")) return s;
    return guarded([&] {
        auto res = sqha::case_d_asymptotics(convert(spec), params->params);
        out->vqu_exponent = res.vqu_exponent;
        out->force_exponent = res.force_exponent;
        out->vqu_residual = res.vqu_residual;
        out->force_residual = res.force_residual;
    });
}

/* ----------------------------------------------------------------- regimes */

sqha_status sqha_critical_temperature(const sqha_params* params, double system_length,
                                      double* out) {
    if (auto s = need(params && out, "sqha_critical_temperature: NULL argument")) return s;
    return guarded([&] { *out = sqha::critical_temperature(params->params, system_length); });
}

sqha_status sqha_uncertainty_products(const sqha_params* params, double* delta_e,
                                      double* delta_p, double* e_t_product,
                                      double* l_p_product) {
    if (auto s = need(params && delta_e && delta_p && e_t_product && l_p_product,
                      "sqha_uncertainty_products: NULL argument"))
        return s;
    return guarded([&] {
        auto p = sqha::uncertainty_products(params->params);
        *delta_e = p.delta_e;
        *delta_p = p.delta_p;
        *e_t_product = p.e_t_product;
        *l_p_product = p.l_p_product;
    });
}

sqha_status sqha_regime_classify(const sqha_params* params, double system_length, double lambda_q,
                               int has_diagnostics, double force_norm, double fluctuation_norm,
                               double ratio, sqha_regime_report* out) {
    if (auto s = need(params && out, "sqha_regime_report: NULL argument")) return s;
    return guarded([&] {
        std::optional<sqha::ForceFluctuation> diag;
        if (has_diagnostics) {
            sqha::ForceFluctuation f;
            f.force_norm = force_norm;
            f.fluctuation_norm = fluctuation_norm;
            f.ratio = ratio;
            diag = f;
        }
        auto rep = sqha::regime_report(params->params, system_length, lambda_q, diag);
        out->lambda_c = rep.lambda_c;
        out->lambda_q = rep.lambda_q;
        out->lambda_q_effective = rep.lambda_q_effective;
        out->system_length = rep.system_length;
        out->t_c = rep.t_c;
        out->force_norm = rep.force_norm;
        out->fluctuation_norm = rep.fluctuation_norm;
        out->ratio = rep.ratio;
        out->regime = static_cast<int>(rep.regime);
    });
}
const char* sqha_regime_name(int regime) {
    return sqha::regime_name(static_cast<sqha::Regime>(regime));
}

/* ------------------------------------------------------------- experiments */

namespace {
sqha_status run_experiment_common(sqha::ConfigMap cfg, const char* out_dir,
                                  const char* const* overrides, size_t n_overrides) {
    return guarded([&] {
        for (size_t i = 0; i < n_overrides; ++i) {
            const std::string ov = overrides[i] ? overrides[i] : "";
            const auto eq = ov.find('=');
            if (eq == std::string::npos)
                throw sqha::ConfigError("override must look like section.key=value: '" + ov +
                                        "'");
            std::string key = ov.substr(0, eq);
            const std::string value = ov.substr(eq + 1);
            std::string section;
            if (const auto dot = key.find('.'); dot != std::string::npos) {
                section = key.substr(0, dot);
                key = key.substr(dot + 1);
            }
            cfg.set(section, key, value);
        }
        auto outcome = sqha::run_experiment(cfg, out_dir);
        g_last_warnings.clear();
        for (const auto& w : outcome.warnings) {
            if (!g_last_warnings.empty()) g_last_warnings += '\n';
            g_last_warnings += w;
        }
    });
}
} // namespace

sqha_status sqha_run_experiment_text(const char* config_text, const char* out_dir,
                                     const char* const* overrides, size_t n_overrides) {
    if (auto s = need(config_text && out_dir, "sqha_run_experiment_text: NULL argument"))
        return s;
    try {
        return run_experiment_common(sqha::ConfigMap::parse_text(config_text), out_dir,
                                     overrides, n_overrides);
    } catch (const sqha::ConfigError& e) {
        return fail(SQHA_ERR_CONFIG, e.what());
    }
}

sqha_status sqha_run_experiment_file(const char* config_path, const char* out_dir,
                                     const char* const* overrides, size_t n_overrides) {
    if (auto s = need(config_path && out_dir, "sqha_run_experiment_file: NULL argument"))
        return s;
    try {
        return run_experiment_common(sqha::ConfigMap::parse_file(config_path), out_dir,
                                     overrides, n_overrides);
    } catch (const sqha::ConfigError& e) {
        return fail(SQHA_ERR_CONFIG, e.what());
    }
}

} /* extern "C" */
