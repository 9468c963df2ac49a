/*
 * sqha - stochastic quantum hydrodynamics toolkit, C API.
 *
 * Opaque handles + status codes. Every function that can fail returns a
 * sqha_status; on failure sqha_last_error() carries a message for the
 * calling thread. Handles returned through out-parameters are owned by the
 * caller and released with the matching *_free function.
 */
#ifndef SQHA_H
#define SQHA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SQHA_API __declspec(dllexport)
#else
#define SQHA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqha_status {
    SQHA_OK = 0,
    SQHA_ERR_INVALID_ARGUMENT = 1,
    SQHA_ERR_NUMERICAL = 2,
    SQHA_ERR_IO = 3,
    SQHA_ERR_CONFIG = 4,
    SQHA_ERR_UNKNOWN = 5
} sqha_status;

SQHA_API const char* sqha_version(void);
/* Message from the last failing call on this thread ("" if none). */
SQHA_API const char* sqha_last_error(void);
/* Newline-separated warnings from the last experiment run on this thread. */
SQHA_API const char* sqha_last_warnings(void);

typedef struct sqha_grid sqha_grid;
typedef struct sqha_real_field sqha_real_field;
typedef struct sqha_complex_field sqha_complex_field;
typedef struct sqha_params sqha_params;
typedef struct sqha_vqu sqha_vqu;
typedef struct sqha_noise sqha_noise;
typedef struct sqha_run sqha_run;

/* ------------------------------------------------------------------ grids */
SQHA_API sqha_status sqha_grid_create(double x_min, double x_max, size_t n_points,
                                      sqha_grid** out);
SQHA_API void sqha_grid_free(sqha_grid* grid);
SQHA_API size_t sqha_grid_size(const sqha_grid* grid);
SQHA_API double sqha_grid_dx(const sqha_grid* grid);
SQHA_API double sqha_grid_x(const sqha_grid* grid, size_t j);

/* ----------------------------------------------------------------- fields */
SQHA_API sqha_status sqha_real_field_create(const sqha_grid* grid, const double* values,
                                            size_t n, sqha_real_field** out);
SQHA_API void sqha_real_field_free(sqha_real_field* field);
SQHA_API size_t sqha_real_field_size(const sqha_real_field* field);
SQHA_API sqha_status sqha_real_field_values(const sqha_real_field* field, double* out, size_t n);
SQHA_API sqha_status sqha_real_field_write_csv(const sqha_real_field* field, const char* path);
SQHA_API sqha_status sqha_real_field_read_csv(const char* path, sqha_real_field** out);

/* values interleaved re,im (length 2n) */
SQHA_API sqha_status sqha_complex_field_create(const sqha_grid* grid, const double* re_im,
                                               size_t n, sqha_complex_field** out);
SQHA_API void sqha_complex_field_free(sqha_complex_field* field);
SQHA_API size_t sqha_complex_field_size(const sqha_complex_field* field);
SQHA_API sqha_status sqha_complex_field_values(const sqha_complex_field* field, double* re_im,
                                               size_t n);
SQHA_API sqha_status sqha_complex_field_write_csv(const sqha_complex_field* field,
                                                  const char* path);
SQHA_API sqha_status sqha_complex_field_read_csv(const char* path, sqha_complex_field** out);

/* Normalize a nonnegative density to unit trapezoidal integral. */
SQHA_API sqha_status sqha_normalize(const sqha_real_field* density, sqha_real_field** out);

/* psi = A exp(i S / hbar); A must be nonnegative. */
SQHA_API sqha_status sqha_wave_from_polar(const sqha_real_field* amplitude,
                                          const sqha_real_field* action, double hbar,
                                          sqha_complex_field** out);
/* Amplitude |psi| and momentum p = hbar Im(psi* psi') / |psi|^2; `valid`
 * (length n, may be NULL) flags points above the node threshold. */
SQHA_API sqha_status sqha_polar_from_wave(const sqha_complex_field* psi, double hbar,
                                          double eps_node, sqha_real_field** amplitude,
                                          sqha_real_field** momentum, uint8_t* valid);

/* ----------------------------------------------------------------- params */
SQHA_API sqha_status sqha_params_create(double mass, double hbar, double boltzmann,
                                        double temperature, sqha_params** out);
SQHA_API void sqha_params_free(sqha_params* params);
SQHA_API sqha_status sqha_params_set_light_speed(sqha_params* params, double c);
SQHA_API sqha_status sqha_params_set_free_potential(sqha_params* params);
SQHA_API sqha_status sqha_params_set_harmonic_potential(sqha_params* params, double omega,
                                                        double center);
SQHA_API sqha_status sqha_params_set_tabulated_potential(sqha_params* params,
                                                         const sqha_real_field* v);

/* ------------------------------------------------------- quantum potential */
SQHA_API sqha_status sqha_compute_vqu(const sqha_real_field* amplitude,
                                      const sqha_params* params, double eps_node,
                                      sqha_vqu** out);
SQHA_API void sqha_vqu_free(sqha_vqu* vqu);
SQHA_API sqha_status sqha_vqu_potential(const sqha_vqu* vqu, sqha_real_field** out);
SQHA_API sqha_status sqha_vqu_force(const sqha_vqu* vqu, sqha_real_field** out);
SQHA_API sqha_status sqha_vqu_mask(const sqha_vqu* vqu, uint8_t* out, size_t n);
SQHA_API sqha_status sqha_quantum_energy(const sqha_real_field* density, const sqha_vqu* vqu,
                                         double* out);

/* -------------------------------------------------------------- oscillator */
SQHA_API sqha_status sqha_hermite(int n, double x, double* out);
SQHA_API sqha_status sqha_ho_eigenstate(double mass, double omega, double hbar, int level,
                                        const sqha_grid* grid, sqha_real_field** out);
SQHA_API sqha_status sqha_ho_energy_expectation(double mass, double omega, double hbar,
                                                int level, const sqha_grid* grid, double* out);
SQHA_API sqha_status sqha_ho_identity_deviation(double mass, double omega, double hbar,
                                                int level, const sqha_grid* grid, double* out);

/* ------------------------------------------------------------------- noise */
/* (pi/2)^{3/2} hbar / sqrt(2 m k T); +inf at T = 0. */
SQHA_API double sqha_lambda_c(const sqha_params* params);
SQHA_API sqha_status sqha_noise_create(double temperature, double lambda_c, double mu,
                                       uint64_t seed, int conserve_mass, sqha_noise** out);
SQHA_API void sqha_noise_free(sqha_noise* noise);
SQHA_API sqha_status sqha_noise_sample(sqha_noise* noise, const sqha_grid* grid,
                                       double boltzmann, double dt, sqha_real_field** out);

/* ---------------------------------------------------------------- dynamics */
typedef struct sqha_evolution_opts {
    double dt;
    size_t n_steps;
    int stochastic; /* 0 deterministic, 1 stochastic (noise fields below) */
    size_t record_every;
    double noise_temperature;
    double noise_lambda_c;
    double noise_mu;
    uint64_t noise_seed;
    int noise_conserve_mass;
    const double* trajectory_starts; /* may be NULL */
    size_t n_trajectories;
} sqha_evolution_opts;

SQHA_API sqha_status sqha_evolve(const sqha_complex_field* psi0, const sqha_params* params,
                                 const sqha_evolution_opts* opts, sqha_run** out);
SQHA_API void sqha_run_free(sqha_run* run);
SQHA_API size_t sqha_run_n_snapshots(const sqha_run* run);
SQHA_API sqha_status sqha_run_time(const sqha_run* run, size_t k, double* out);
SQHA_API sqha_status sqha_run_norm(const sqha_run* run, size_t k, double* out);
SQHA_API sqha_status sqha_run_energy(const sqha_run* run, size_t k, double* out);
SQHA_API sqha_status sqha_run_snapshot(const sqha_run* run, size_t k, sqha_complex_field** out);
SQHA_API size_t sqha_run_n_trajectories(const sqha_run* run);
/* q and s are per-recorded-time arrays of length sqha_run_n_snapshots(). */
SQHA_API sqha_status sqha_run_trajectory(const sqha_run* run, size_t i, double* q, double* s,
                                         size_t n);

/* ------------------------------------------------------------- nonlocality */
typedef struct sqha_pseudo_gaussian_spec {
    char family; /* 'a', 'b', 'c', 'd', 'g' (plain Gaussian) */
    double lambda_scale;
    double delta_q;
    double g;
    double center;
} sqha_pseudo_gaussian_spec;

SQHA_API sqha_status sqha_pseudo_gaussian(const sqha_pseudo_gaussian_spec* spec,
                                          const sqha_grid* grid, sqha_real_field** density);

typedef struct sqha_typology_result {
    int typology; /* 0 strong, 1 ballistic, 2 middle, 3 weak, 4 unclassified */
    double poly_degree;
    double phi;
    double fit_residual;
    double window_lo;
    double window_hi;
} sqha_typology_result;
SQHA_API sqha_status sqha_classify_typology(const sqha_real_field* amplitude,
                                            sqha_typology_result* out);
SQHA_API const char* sqha_typology_name(int typology);

typedef struct sqha_lambda_q_result {
    int finite;
    double value; /* +inf when not finite */
    double tail_exponent;
    int floored;
    double cutoff_sensitivity;
    double quad_error;
} sqha_lambda_q_result;
SQHA_API sqha_status sqha_lambda_q(const sqha_vqu* vqu, double lambda_c, double q_max,
                                   double center, sqha_lambda_q_result* out);

typedef struct sqha_case_d_result {
    double vqu_exponent;
    double force_exponent;
    double vqu_residual;
    double force_residual;
} sqha_case_d_result;
SQHA_API sqha_status sqha_case_d_asymptotics(const sqha_pseudo_gaussian_spec* spec,
                                             const sqha_params* params,
                                             sqha_case_d_result* out);

/* ----------------------------------------------------------------- regimes */
SQHA_API sqha_status sqha_critical_temperature(const sqha_params* params, double system_length,
                                               double* out);
SQHA_API sqha_status sqha_uncertainty_products(const sqha_params* params, double* delta_e,
                                               double* delta_p, double* e_t_product,
                                               double* l_p_product);

typedef struct sqha_regime_report {
    double lambda_c;
    double lambda_q;
    double lambda_q_effective;
    double system_length;
    double t_c;
    double force_norm;
    double fluctuation_norm;
    double ratio;
    int regime; /* 0 quantum, 1 stochastic-quantum, 2 classical-stochastic */
} sqha_regime_report;
/* has_diagnostics == 0: force/fluctuation inputs are ignored. */
SQHA_API sqha_status sqha_regime_classify(const sqha_params* params, double system_length,
                                        double lambda_q, int has_diagnostics, double force_norm,
                                        double fluctuation_norm, double ratio,
                                        sqha_regime_report* out);
SQHA_API const char* sqha_regime_name(int regime);

/* ------------------------------------------------------------- experiments */
/* Overrides are "section.key=value" strings ("key=value" for top-level keys)
 * applied after parsing; they keep the CLI flags and the config file in one
 * canonical config, which is what the manifest records. */
SQHA_API sqha_status sqha_run_experiment_text(const char* config_text, const char* out_dir,
                                              const char* const* overrides, size_t n_overrides);
SQHA_API sqha_status sqha_run_experiment_file(const char* config_path, const char* out_dir,
                                              const char* const* overrides, size_t n_overrides);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SQHA_H */
