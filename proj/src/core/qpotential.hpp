#pragma once

#include <vector>

#include "core/types.hpp"

namespace sqha {

/// Quantum pseudo-potential of an amplitude field and the force it exerts.
/// `valid[j] == false` marks node points (and runs too short for the
/// stencil); vqu/force hold 0 there and must not be used downstream.
struct QuantumPotentialResult {
    RealField vqu;
    RealField force;  // -d(vqu)/dq
    std::vector<bool> valid;

    std::size_t n_valid() const {
        std::size_t c = 0;
        for (bool b : valid) c += b ? 1 : 0;
        return c;
    }
};

/// V_qu = -(hbar^2/2m) A'' / A, evaluated per contiguous unmasked run.
/// The amplitude may be signed (excited eigenstates); it is rescaled to
/// unit peak before differencing, which leaves V_qu unchanged.
/// Node mask: density below eps_node relative to the peak density.
QuantumPotentialResult compute_vqu(const RealField& amplitude, const PhysicalParams& params,
                                   double eps_node = kNodeEpsilonDefault);

/// Elastic-like quantum energy: trapezoidal integral of n * V_qu over
/// unmasked points. The density should be normalized.
double quantum_energy(const RealField& density, const QuantumPotentialResult& vqu);

/// Spec of a Gaussian amplitude exp(-(q - center)^2 / (2 delta_q_sq)).
struct GaussianAmplitudeSpec {
    double center = 0.0;
    double delta_q_sq = 1.0;  // variance of the amplitude profile
};

/// Least-squares slope of the quantum force against (q - center) over the
/// central half of the grid. For the Gaussian amplitude the slope is
/// (hbar^2/2m) * 2 / delta_q_sq^2 (repulsive, linear).
double quantum_force_linear_check(const GaussianAmplitudeSpec& spec, const Grid1D& grid,
                                  const PhysicalParams& params);

} // namespace sqha
