#include "core/oscillator.hpp"

#include <algorithm>
#include <cmath>

#include "core/fields.hpp"
#include "core/numerics.hpp"

namespace sqha {

double hermite(int n, double x) {
    if (n < 0) throw InvalidInput("hermite: n must be >= 0");
    double hm = 0.0, h = 1.0;  // H_{-1}, H_0
    for (int k = 0; k < n; ++k) {
        double next = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = next;
    }
    return h;
}

double hermite_gauss(int n, double x) {
    if (n < 0) throw InvalidInput("hermite_gauss: n must be >= 0");
    const double g = std::exp(-0.5 * x * x);
    double hm = 0.0, h = g;  // H_k exp(-x^2/2), recurrence is linear so it carries through
    for (int k = 0; k < n; ++k) {
        double next = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = next;
    }
    return h;
}

RealField ho_eigenstate(const HOSpec& spec, const Grid1D& grid) {
    spec.validate();
    const double span = 6.0 * spec.turning_point();
    if (grid.x_max() < span || grid.x_min() > -span)
        throw InvalidInput("ho_eigenstate: grid too narrow (needs +-6 turning points)");

    const double alpha = std::sqrt(spec.mass * spec.omega / spec.hbar);
    std::vector<double> a(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        a[j] = hermite_gauss(spec.level, alpha * grid.x(j));

    std::vector<double> dens(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) dens[j] = a[j] * a[j];
    double mass = trapezoid(dens, grid.dx());
    if (!(mass > 0.0)) throw InvalidInput("ho_eigenstate: degenerate state");
    const double scale = 1.0 / std::sqrt(mass);
    for (double& v : a) v *= scale;
    return RealField(grid, std::move(a));
}

std::vector<double> ho_nodes(const HOSpec& spec) {
    spec.validate();
    const int n = spec.level;
    if (n == 0) return {};
    const double alpha = std::sqrt(spec.mass * spec.omega / spec.hbar);
    // Bracket sign changes of H_n on a fine sweep, then bisect.
    const double xmax = std::sqrt(2.0 * n + 1.0) + 1.0;
    const int sweeps = 4000 * n;
    std::vector<double> roots;
    double prev_x = -xmax, prev_h = hermite(n, prev_x);
    for (int i = 1; i <= sweeps; ++i) {
        double x = -xmax + 2.0 * xmax * i / sweeps;
        double h = hermite(n, x);
        if ((prev_h < 0.0 && h > 0.0) || (prev_h > 0.0 && h < 0.0)) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                double hm = hermite(n, mid);
                if ((hm < 0.0) == (prev_h < 0.0)) lo = mid; else hi = mid;
            }
            roots.push_back(0.5 * (lo + hi) / alpha);
        } else if (h == 0.0) {
            roots.push_back(x / alpha);
        }
        prev_x = x;
        prev_h = h;
    }
    return roots;
}

namespace {
void require_consistent(const HOSpec& spec, const PhysicalParams& params, const char* who) {
    if (params.mass != spec.mass || params.hbar != spec.hbar)
        throw InvalidInput(std::string(who) + ": params.mass/hbar disagree with HOSpec");
}
} // namespace

IdentityCheck verify_vqu_identity(const HOSpec& spec, const Grid1D& grid,
                                  const PhysicalParams& params, double support_threshold) {
    require_consistent(spec, params, "verify_vqu_identity");
    RealField amp = ho_eigenstate(spec, grid);
    auto res = compute_vqu(amp, params);
    auto nodes = ho_nodes(spec);
    const double dx = grid.dx();
    const double window = 3.0 * dx;

    double peak_density = 0.0;
    for (double v : amp.values()) peak_density = std::max(peak_density, v * v);
    const double floor = support_threshold * peak_density;

    IdentityCheck out;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (!res.valid[j]) continue;
        const double q = grid.x(j);
        if (amp[j] * amp[j] < floor) continue;
        bool near_node = false;
        for (double r : nodes)
            if (std::abs(q - r) <= window) { near_node = true; break; }
        if (near_node) continue;
        const double target =
            -0.5 * spec.mass * spec.omega * spec.omega * q * q + spec.energy();
        out.max_deviation = std::max(out.max_deviation, std::abs(res.vqu[j] - target));
        ++out.n_evaluated;
    }
    if (out.n_evaluated == 0)
        throw InvalidInput("verify_vqu_identity: no evaluable points");
    return out;
}

double energy_expectation(const HOSpec& spec, const Grid1D& grid, const PhysicalParams& params) {
    require_consistent(spec, params, "energy_expectation");
    RealField amp = ho_eigenstate(spec, grid);
    auto res = compute_vqu(amp, params);
    // Eigenstate amplitudes are real => the momentum field vanishes; it is
    // still computed through the generic path for the kinetic term.
    auto polar = polar_from_wave(ComplexField::from_real(amp), spec.hbar);

    const std::size_t n = grid.size();
    std::vector<double> integrand(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (!res.valid[j]) continue;
        const double q = grid.x(j);
        const double dens = amp[j] * amp[j];
        const double v = 0.5 * spec.mass * spec.omega * spec.omega * q * q;
        const double kin = polar.momentum[j] * polar.momentum[j] / (2.0 * spec.mass);
        integrand[j] = dens * (v + res.vqu[j] + kin);
    }
    return trapezoid_masked(integrand, res.valid, grid.dx());
}

} // namespace sqha
