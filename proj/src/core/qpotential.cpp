#include "core/qpotential.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "core/numerics.hpp"

namespace sqha {

namespace {
constexpr std::size_t kMinRun = 5;  // one-sided deriv2 stencil width
}

QuantumPotentialResult compute_vqu(const RealField& amplitude, const PhysicalParams& params,
                                   double eps_node) {
    params.validate();
    const std::size_t n = amplitude.size();
    const double dx = amplitude.grid().dx();

    double peak = 0.0;
    for (double v : amplitude.values()) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) throw InvalidInput("compute_vqu: all-zero amplitude");

    // Rescale to unit peak; V_qu is invariant under A -> cA.
    std::vector<double> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = amplitude[j] / peak;

    std::vector<bool> valid(n);
    for (std::size_t j = 0; j < n; ++j) valid[j] = a[j] * a[j] >= eps_node;

    std::vector<double> vqu(n, 0.0), force(n, 0.0);
    const double coef = -params.hbar * params.hbar / (2.0 * params.mass);

    std::size_t longest_run = 0;
    std::size_t j = 0;
    while (j < n) {
        if (!valid[j]) { ++j; continue; }
        std::size_t k = j;
        while (k < n && valid[k]) ++k;  // run [j, k)
        const std::size_t len = k - j;
        longest_run = std::max(longest_run, len);
        if (len < kMinRun) {
            for (std::size_t i = j; i < k; ++i) valid[i] = false;
        } else {
            std::span<const double> run(a.data() + j, len);
            auto d2 = deriv2(run, dx);
            for (std::size_t i = 0; i < len; ++i) vqu[j + i] = coef * d2[i] / run[i];
            auto d1 = deriv1(std::span<const double>(vqu.data() + j, len), dx);
            for (std::size_t i = 0; i < len; ++i) force[j + i] = -d1[i];
        }
        j = k;
    }
    if (longest_run < kMinRun)
        throw InvalidInput("compute_vqu: fewer than 5 contiguous unmasked points");

    return QuantumPotentialResult{RealField(amplitude.grid(), std::move(vqu)),
                                  RealField(amplitude.grid(), std::move(force)),
                                  std::move(valid)};
}

double quantum_energy(const RealField& density, const QuantumPotentialResult& vqu) {
    require_same_grid(density.grid(), vqu.vqu.grid(), "quantum_energy");
    const std::size_t n = density.size();
    std::vector<double> integrand(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        if (vqu.valid[j]) integrand[j] = density[j] * vqu.vqu[j];
    return trapezoid_masked(integrand, vqu.valid, density.grid().dx());
}

double quantum_force_linear_check(const GaussianAmplitudeSpec& spec, const Grid1D& grid,
                                  const PhysicalParams& params) {
    if (!(spec.delta_q_sq > 0.0))
        throw InvalidInput("quantum_force_linear_check: delta_q_sq must be > 0");
    RealField amp = RealField::sampled(grid, [&](double q) {
        double d = q - spec.center;
        return std::exp(-d * d / (2.0 * spec.delta_q_sq));
    });
    auto res = compute_vqu(amp, params);

    const double half = 0.25 * (grid.x_max() - grid.x_min());
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double d = grid.x(j) - spec.center;
        if (std::abs(d) <= half && res.valid[j]) {
            xs.push_back(d);
            ys.push_back(res.force[j]);
        }
    }
    return fit_line(xs, ys).slope;
}

} // namespace sqha
