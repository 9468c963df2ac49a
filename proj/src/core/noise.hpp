#pragma once

#include <cstdint>

#include "core/numerics.hpp"
#include "core/types.hpp"

namespace sqha {

/// Spatially correlated, temporally white Gaussian noise on the density.
struct NoiseSpec {
    double temperature = 0.0;   // noise amplitude parameter (K)
    double lambda_c = 1.0;      // spatial correlation length
    double mu = 1.0;            // migration coefficient (length^2/time)
    std::uint64_t seed = 0;
    bool conserve_mass = true;  // project the spatial mean out of each sample

    void validate() const {
        if (temperature < 0.0) throw InvalidInput("NoiseSpec: temperature must be >= 0");
        if (!(lambda_c > 0.0)) throw InvalidInput("NoiseSpec: lambda_c must be > 0");
        if (!(mu > 0.0)) throw InvalidInput("NoiseSpec: mu must be > 0");
    }
};

/// Correlation length of the noise, (pi/2)^{3/2} hbar / sqrt(2 m k T).
/// Diverges at T = 0 (returned as +infinity).
double lambda_c(const PhysicalParams& params);

/// Stationary covariance amplitude C(0) = mu k T / (2 lambda_c^2 dt); the
/// 1/dt realizes the delta(tau) of white-in-time noise for a discrete step
/// (Euler-Maruyama convention: ensemble statistics are dt-independent).
double noise_variance(const NoiseSpec& spec, double boltzmann, double dt);

/// One spatial noise sample with covariance
///   <eta(q) eta(q+s)> = C(0) exp[-(s/lambda_c)^2].
/// White Gaussian samples are convolved with a Gaussian kernel (truncated
/// at 6 lambda_c, extended past the grid edges so the covariance is
/// stationary), then rescaled so C(0) is exact. At T = 0 the field is
/// identically zero and the generator state is untouched.
RealField sample_noise(const Grid1D& grid, const NoiseSpec& spec, double boltzmann, double dt,
                       NormalSampler& rng);

} // namespace sqha
