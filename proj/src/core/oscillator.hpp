#pragma once

#include <vector>

#include "core/qpotential.hpp"
#include "core/types.hpp"

namespace sqha {

/// Harmonic-oscillator eigenstate spec. Level is capped at 12: beyond that
/// the Hermite recurrence loses accuracy in double precision on the grids
/// this toolkit works at.
struct HOSpec {
    double mass = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    int level = 0;

    void validate() const {
        if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
            throw InvalidInput("HOSpec: mass, omega, hbar must be > 0");
        if (level < 0 || level > 12)
            throw InvalidInput("HOSpec: level must be in [0, 12]");
    }

    /// Classical turning point sqrt((2n+1) hbar / (m omega)).
    double turning_point() const {
        return std::sqrt((2.0 * level + 1.0) * hbar / (mass * omega));
    }

    double energy() const { return (level + 0.5) * hbar * omega; }
};

/// Physicists' Hermite polynomial H_n(x), three-term recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}.
double hermite(int n, double x);

/// H_n(x) exp(-x^2/2), the recurrence run on the pre-scaled sequence so
/// large n does not overflow before the Gaussian factor is applied.
double hermite_gauss(int n, double x);

/// Normalized amplitude of the n-th eigenstate on the grid (signed; its
/// square integrates to 1). The grid must span +-6 turning points.
RealField ho_eigenstate(const HOSpec& spec, const Grid1D& grid);

/// Roots of H_n (the interior nodes of the n-th eigenstate), in units of q.
std::vector<double> ho_nodes(const HOSpec& spec);

/// Max over the evaluation window of |V_qu(q) - (-(m w^2/2) q^2 + (n+1/2) hbar w)|,
/// with V_qu computed numerically from the eigenstate amplitude. Points
/// within 3 dx of a Hermite node are excluded, as are tail points with
/// density below support_threshold relative to the peak (the 3-point
/// stencil error grows like A''''/A ~ q^4 out there and would swamp the
/// identity check).
struct IdentityCheck {
    double max_deviation = 0.0;
    std::size_t n_evaluated = 0;
};
IdentityCheck verify_vqu_identity(const HOSpec& spec, const Grid1D& grid,
                                  const PhysicalParams& params,
                                  double support_threshold = 1e-2);

/// Quadrature of n [ (m w^2/2) q^2 + V_qu + p^2/2m ] with every term
/// computed numerically; equals (n + 1/2) hbar omega.
double energy_expectation(const HOSpec& spec, const Grid1D& grid, const PhysicalParams& params);

} // namespace sqha
