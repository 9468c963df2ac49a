#pragma once

#include <vector>

#include "core/types.hpp"

namespace sqha {

/// psi = A * exp(i S / hbar). Both fields must share a grid and A >= 0.
ComplexField wave_from_polar(const RealField& amplitude, const RealField& action, double hbar);

/// Polar decomposition of a wave. The action itself is multi-valued, so the
/// single-valued momentum field p = hbar * Im(psi* d_q psi) / |psi|^2 is
/// returned instead of S. Points with |psi|^2 < eps_node * max|psi|^2 are
/// masked (momentum set to 0 there).
struct PolarDecomposition {
    RealField amplitude;
    RealField momentum;
    std::vector<bool> valid;
};
PolarDecomposition polar_from_wave(const ComplexField& psi, double hbar,
                                   double eps_node = kNodeEpsilonDefault);

/// Scale a nonnegative density so its trapezoidal integral is 1.
RealField normalize(const RealField& density);

double integral(const RealField& f);

/// Mean and variance of a (normalized or not) density.
struct Moments {
    double mass = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};
Moments density_moments(const RealField& density);

/// True when the boundary density exceeds `threshold` times the peak;
/// fields are assumed to decay to ~0 at grid edges.
bool boundary_density_exceeds(const RealField& density, double threshold = 1e-8);

} // namespace sqha
