#include "core/fields.hpp"

#include <algorithm>
#include <cmath>

#include "core/numerics.hpp"

namespace sqha {

ComplexField wave_from_polar(const RealField& amplitude, const RealField& action, double hbar) {
    require_same_grid(amplitude.grid(), action.grid(), "wave_from_polar");
    if (!(hbar > 0.0)) throw InvalidInput("wave_from_polar: hbar must be > 0");
    std::vector<Complex> v(amplitude.size());
    for (std::size_t j = 0; j < amplitude.size(); ++j) {
        if (amplitude[j] < 0.0)
            throw InvalidInput("wave_from_polar: negative amplitude");
        v[j] = std::polar(amplitude[j], action[j] / hbar);
    }
    return ComplexField(amplitude.grid(), std::move(v));
}

PolarDecomposition polar_from_wave(const ComplexField& psi, double hbar, double eps_node) {
    if (!(hbar > 0.0)) throw InvalidInput("polar_from_wave: hbar must be > 0");
    const std::size_t n = psi.size();
    const double dx = psi.grid().dx();

    double max_density = 0.0;
    for (std::size_t j = 0; j < n; ++j) max_density = std::max(max_density, std::norm(psi[j]));
    if (max_density == 0.0) throw InvalidInput("polar_from_wave: all-zero wave");

    const double cutoff = eps_node * max_density;
    std::vector<double> amp(n), mom(n, 0.0);
    std::vector<bool> valid(n, false);
    for (std::size_t j = 0; j < n; ++j) amp[j] = std::abs(psi[j]);

    for (std::size_t j = 0; j < n; ++j) {
        double dens = std::norm(psi[j]);
        if (dens < cutoff) continue;
        Complex dpsi;
        if (j == 0)
            dpsi = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * dx);
        else if (j + 1 == n)
            dpsi = (3.0 * psi[n - 1] - 4.0 * psi[n - 2] + psi[n - 3]) / (2.0 * dx);
        else
            dpsi = (psi[j + 1] - psi[j - 1]) / (2.0 * dx);
        mom[j] = hbar * std::imag(std::conj(psi[j]) * dpsi) / dens;
        valid[j] = true;
    }

    return PolarDecomposition{RealField(psi.grid(), std::move(amp)),
                              RealField(psi.grid(), std::move(mom)), std::move(valid)};
}

double integral(const RealField& f) { return trapezoid(f.values(), f.grid().dx()); }

RealField normalize(const RealField& density) {
    for (double v : density.values())
        if (v < 0.0) throw InvalidInput("normalize: negative density");
    double mass = integral(density);
    if (!(mass > 0.0)) throw InvalidInput("normalize: zero-mass input");
    std::vector<double> v(density.size());
    const double inv = 1.0 / mass;
    for (std::size_t j = 0; j < density.size(); ++j) v[j] = density[j] * inv;
    return RealField(density.grid(), std::move(v));
}

Moments density_moments(const RealField& density) {
    const Grid1D& g = density.grid();
    std::vector<double> qn(density.size()), qqn(density.size());
    for (std::size_t j = 0; j < density.size(); ++j) {
        qn[j] = g.x(j) * density[j];
        qqn[j] = g.x(j) * g.x(j) * density[j];
    }
    Moments m;
    m.mass = integral(density);
    if (m.mass <= 0.0) throw InvalidInput("density_moments: zero-mass input");
    m.mean = trapezoid(qn, g.dx()) / m.mass;
    m.variance = trapezoid(qqn, g.dx()) / m.mass - m.mean * m.mean;
    return m;
}

bool boundary_density_exceeds(const RealField& density, double threshold) {
    double peak = *std::max_element(density.values().begin(), density.values().end());
    if (peak <= 0.0) return false;
    return density[0] > threshold * peak || density[density.size() - 1] > threshold * peak;
}

} // namespace sqha
