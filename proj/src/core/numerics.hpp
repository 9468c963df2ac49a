#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sqha {

// Finite differences, O(dx^2): central in the interior, one-sided at the
// ends of the span. Spans must hold at least 5 samples for deriv2 (the
// one-sided second-derivative stencil is 5 points wide) and 3 for deriv1.
std::vector<double> deriv1(std::span<const double> f, double dx);
std::vector<double> deriv2(std::span<const double> f, double dx);

/// Trapezoidal quadrature on a uniform grid.
double trapezoid(std::span<const double> f, double dx);

/// Trapezoid restricted to intervals whose two endpoints are both valid.
double trapezoid_masked(std::span<const double> f, const std::vector<bool>& valid, double dx);

/// Ordinary least squares y = a + b x. Returns intercept, slope and the
/// root-mean-square residual of the fit.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms_residual = 0.0;
    std::size_t n = 0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Catmull-Rom cubic interpolation of uniformly sampled data, linear near
/// the ends of the sample. `t` is the fractional index into f.
double cubic_interp_uniform(std::span<const double> f, double t);

/// Normal sampler: mt19937_64 engine plus an explicit Box-Muller transform,
/// so streams are reproducible bit-for-bit independent of the standard
/// library's normal_distribution implementation.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

    double next();

    /// Independent stream for ensemble member k (splitmix64 of base ^ k).
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;

    double next_unit();  // uniform in (0,1]
};

} // namespace sqha
