#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/noise.hpp"
#include "core/qpotential.hpp"
#include "core/types.hpp"

namespace sqha {

enum class Scheme { deterministic, stochastic };

struct EvolutionConfig {
    double dt = 1e-3;
    std::size_t n_steps = 100;
    Scheme scheme = Scheme::deterministic;
    std::size_t record_every = 1;
    std::optional<NoiseSpec> noise;
    double eps_node = kNodeEpsilonDefault;

    /// Non-empty: Bohmian trajectories are integrated online, against the
    /// per-step momentum field rather than the recorded snapshots.
    std::vector<double> trajectory_starts;

    void validate() const {
        if (!(dt > 0.0)) throw InvalidInput("EvolutionConfig: dt must be > 0");
        if (n_steps == 0) throw InvalidInput("EvolutionConfig: n_steps must be > 0");
        if (record_every == 0) throw InvalidInput("EvolutionConfig: record_every must be > 0");
        if (scheme == Scheme::stochastic && !noise)
            throw InvalidInput("EvolutionConfig: stochastic scheme needs a noise spec");
    }
};

/// Bohmian trajectories q_i(t) with the action accumulated along each one,
/// dS = (p^2/2m - V - V_qu) dt. When a matched deterministic reference is
/// attached, action_reference/action_delta hold S0 and dS = S - S0.
struct TrajectoryBundle {
    std::vector<double> start_points;
    std::vector<double> times;
    std::vector<std::vector<double>> positions;  // [traj][time]
    std::vector<std::vector<double>> action;     // [traj][time]
    std::vector<bool> exited;                    // left the grid (truncated)
    std::vector<std::vector<double>> action_reference;
    std::vector<std::vector<double>> action_delta;

    bool has_split() const { return !action_delta.empty(); }
};

struct EvolutionResult {
    std::vector<double> times;            // recorded snapshot times
    std::vector<ComplexField> snapshots;  // recorded states
    std::vector<double> norm;             // per recorded snapshot
    std::vector<double> energy;           // hydrodynamic energy per snapshot
    std::vector<std::size_t> clamped;     // amplitude clamps per snapshot interval
    std::vector<std::string> warnings;
    std::optional<TrajectoryBundle> trajectories;
};

/// Crank-Nicolson evolution of i hbar dpsi/dt = -(hbar^2/2m) psi'' + V psi,
/// homogeneous Dirichlet edges. Aborts when |norm - 1| exceeds 1e-4.
EvolutionResult evolve_deterministic(const ComplexField& psi0, const PhysicalParams& params,
                                     const EvolutionConfig& config);

/// One deterministic substep per step followed by the amplitude noise
/// increment A <- A + dt * eta / A (the delta(tau) scaling lives inside
/// sample_noise). Seeded and reproducible; at T = 0 the path is bitwise the
/// deterministic one.
EvolutionResult evolve_stochastic(const ComplexField& psi0, const PhysicalParams& params,
                                  const EvolutionConfig& config);

/// Dispatch on config.scheme.
EvolutionResult run_evolution(const ComplexField& psi0, const PhysicalParams& params,
                              const EvolutionConfig& config);

/// Offline trajectory integration over a recorded snapshot series: RK4 in
/// time (cubic interpolation of the momentum and potential fields in space,
/// cubic in time where four snapshots are available).
TrajectoryBundle bohmian_trajectories(const std::vector<ComplexField>& states,
                                      const std::vector<double>& times,
                                      const PhysicalParams& params,
                                      const std::vector<double>& start_points,
                                      double eps_node = kNodeEpsilonDefault);

/// Attach a matched reference: fills action_reference = S0 and
/// action_delta = S - S0 on `bundle`.
void attach_action_reference(TrajectoryBundle& bundle, const TrajectoryBundle& reference);

/// Continuity residual d_t n + d_q (n p / m) at the interior recorded times
/// (central differences in both t and q). max_abs is taken over points
/// whose density is at least support_threshold of the peak.
struct ContinuityResidual {
    std::vector<double> times;        // interior snapshot times
    std::vector<RealField> residual;  // residual field per interior time
    std::vector<double> max_abs;      // per interior time
    double overall_max = 0.0;
};
ContinuityResidual continuity_residual(const std::vector<ComplexField>& states,
                                       const std::vector<double>& times,
                                       const PhysicalParams& params,
                                       double support_threshold = 1e-3,
                                       double eps_node = kNodeEpsilonDefault);

/// Hydrodynamic energy integral n (V + V_qu + p^2/2m) dq over valid points.
double hydrodynamic_energy(const ComplexField& psi, const PhysicalParams& params,
                           double eps_node = kNodeEpsilonDefault);

/// Cross-check integrator for node-free smooth states: explicit RK4 on the
/// coupled amplitude/action pair
///   dS/dt = -V + (hbar^2/2m) A''/A - (S')^2 / 2m
///   dA/dt = -(A' S' + A S''/2) / m.
/// Valid only away from nodes; used to confirm the psi-scheme on short
/// horizons.
struct PolarState {
    RealField amplitude;
    RealField action;
};
PolarState evolve_polar_pair(const RealField& amplitude0, const RealField& action0,
                             const PhysicalParams& params, double dt, std::size_t n_steps);

} // namespace sqha
