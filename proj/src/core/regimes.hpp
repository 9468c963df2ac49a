#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/dynamics.hpp"
#include "core/types.hpp"

namespace sqha {

/// Critical temperature at which lambda_c equals the system length:
/// T_c = hbar^2 / (2 m k L^2).
double critical_temperature(const PhysicalParams& params, double system_length);

/// Thermal uncertainty measure. Both products reduce symbolically to
/// lambda_c * sqrt(2 m k T), which is (pi/2)^{3/2} hbar for the lambda_c
/// of this model -- independent of m and T.
struct UncertaintyProducts {
    double delta_e = 0.0;       // sqrt(2 m c^2 k T)
    double delta_p = 0.0;       // sqrt(2 m k T)
    double e_t_product = 0.0;   // delta_e * lambda_c / c
    double l_p_product = 0.0;   // lambda_c * delta_p
    bool relativistic_warning = false;  // kT above 1% of m c^2
};
UncertaintyProducts uncertainty_products(const PhysicalParams& params);

/// Time/ensemble-averaged L2 norms of the reference quantum force and of
/// its fluctuation gradient d(delta V_qu)/dq over a spatial window.
struct ForceFluctuation {
    double force_norm = 0.0;
    double fluctuation_norm = 0.0;
    double ratio = 0.0;  // fluctuation / force; 0 when fluctuation vanishes
    double window_lo = 0.0;
    double window_hi = 0.0;
};

/// Window defaults to the region holding 99% of the reference density at
/// t = 0. The ensemble must hold at least 30 runs, each matched to the
/// reference (same initial state and stepping).
ForceFluctuation force_vs_fluctuation(const EvolutionResult& reference,
                                      const std::vector<EvolutionResult>& ensemble,
                                      const PhysicalParams& params,
                                      std::optional<std::pair<double, double>> window = {},
                                      double eps_node = kNodeEpsilonDefault);

enum class Regime { quantum, stochastic_quantum, classical_stochastic };
const char* regime_name(Regime r);

struct RegimeReport {
    double lambda_c = 0.0;           // may be +inf at T = 0
    double lambda_q = 0.0;           // raw input, +inf allowed
    double lambda_q_effective = 0.0; // floored to lambda_c
    double system_length = 0.0;
    double t_c = 0.0;
    double force_norm = 0.0;
    double fluctuation_norm = 0.0;
    double ratio = 0.0;
    bool has_diagnostics = false;
    UncertaintyProducts products;
    Regime regime = Regime::stochastic_quantum;
    std::vector<std::string> notes;
};

/// Classification:
///   quantum                when lambda_c >= L,
///   classical-stochastic   when lambda_q is finite, its lambda_c-floored
///                          value is <= L/10 and the measured fluctuation
///                          norm exceeds the force norm,
///   stochastic-quantum     otherwise.
RegimeReport regime_report(const PhysicalParams& params, double system_length,
                           double lambda_q_input,
                           std::optional<ForceFluctuation> diagnostics = {});

/// Plain-text block for the report experiment.
std::string format_regime_report(const RegimeReport& report);

} // namespace sqha
