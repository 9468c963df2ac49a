#include "core/noise.hpp"

#include <cmath>
#include <numbers>

namespace sqha {

double lambda_c(const PhysicalParams& params) {
    params.validate();
    if (params.temperature == 0.0) return kInfiniteLength;
    const double halfpi = 0.5 * std::numbers::pi;
    return std::pow(halfpi, 1.5) * params.hbar /
           std::sqrt(2.0 * params.mass * params.boltzmann * params.temperature);
}

double noise_variance(const NoiseSpec& spec, double boltzmann, double dt) {
    spec.validate();
    if (!(dt > 0.0)) throw InvalidInput("noise_variance: dt must be > 0");
    return spec.mu * boltzmann * spec.temperature / (2.0 * spec.lambda_c * spec.lambda_c * dt);
}

RealField sample_noise(const Grid1D& grid, const NoiseSpec& spec, double boltzmann, double dt,
                       NormalSampler& rng) {
    spec.validate();
    if (!(dt > 0.0)) throw InvalidInput("sample_noise: dt must be > 0");
    if (spec.temperature == 0.0)
        return RealField(grid, std::vector<double>(grid.size(), 0.0));
    if (grid.dx() >= 0.5 * spec.lambda_c)
        throw InvalidInput("sample_noise: grid under-resolves the correlation kernel "
                           "(need dx < lambda_c / 2)");

    const std::size_t n = grid.size();
    const double dx = grid.dx();

    // Kernel g(u) = exp(-2 u^2 / lambda_c^2): the self-convolution of g has
    // the target exp[-(s/lambda_c)^2] shape. Truncated at 6 lambda_c where
    // the tail is < 1e-15 of the peak.
    const auto half = static_cast<std::size_t>(std::ceil(6.0 * spec.lambda_c / dx));
    std::vector<double> kernel(2 * half + 1);
    double sumsq = 0.0;
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        double u = (static_cast<double>(i) - static_cast<double>(half)) * dx;
        kernel[i] = std::exp(-2.0 * u * u / (spec.lambda_c * spec.lambda_c));
        sumsq += kernel[i] * kernel[i];
    }

    // White noise extended half a kernel past each edge keeps the sample
    // stationary all the way to the boundary points.
    std::vector<double> white(n + 2 * half);
    for (double& w : white) w = rng.next();

    const double scale = std::sqrt(noise_variance(spec, boltzmann, dt) / sumsq);
    std::vector<double> eta(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < kernel.size(); ++i) acc += kernel[i] * white[j + i];
        eta[j] = scale * acc;
    }

    if (spec.conserve_mass) {
        double mean = 0.0;
        for (double v : eta) mean += v;
        mean /= static_cast<double>(n);
        for (double& v : eta) v -= mean;
    }
    return RealField(grid, std::move(eta));
}

} // namespace sqha
