#include "core/numerics.hpp"

#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace sqha {

std::vector<double> deriv1(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    if (n < 3) throw InvalidInput("deriv1: need at least 3 samples");
    std::vector<double> d(n);
    const double inv2 = 1.0 / (2.0 * dx);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - f[j - 1]) * inv2;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
    return d;
}

std::vector<double> deriv2(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    if (n < 5) throw InvalidInput("deriv2: need at least 5 samples");
    std::vector<double> d(n);
    const double inv = 1.0 / (dx * dx);
    // 5-point one-sided stencil, O(dx^2).
    d[0] = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) * inv / 12.0;
    for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * inv;
    d[n - 1] = (35.0 * f[n - 1] - 104.0 * f[n - 2] + 114.0 * f[n - 3] - 56.0 * f[n - 4] +
                11.0 * f[n - 5]) * inv / 12.0;
    return d;
}

double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f[j];
    return s * dx;
}

double trapezoid_masked(std::span<const double> f, const std::vector<bool>& valid, double dx) {
    if (f.size() != valid.size()) throw InvalidInput("trapezoid_masked: size mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < f.size(); ++j)
        if (valid[j] && valid[j + 1]) s += 0.5 * (f[j] + f[j + 1]);
    return s * dx;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidInput("fit_line: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw InvalidInput("fit_line: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t j = 0; j < n; ++j) { mx += x[j]; my += y[j]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sxx += (x[j] - mx) * (x[j] - mx);
        sxy += (x[j] - mx) * (y[j] - my);
    }
    if (sxx == 0.0) throw InvalidInput("fit_line: degenerate abscissa");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double r = y[j] - (fit.intercept + fit.slope * x[j]);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(n));
    fit.n = n;
    return fit;
}

double cubic_interp_uniform(std::span<const double> f, double t) {
    const std::size_t n = f.size();
    if (n == 0) throw InvalidInput("cubic_interp_uniform: empty data");
    if (n == 1) return f[0];
    if (t <= 0.0) return f[0];
    if (t >= static_cast<double>(n - 1)) return f[n - 1];
    auto j = static_cast<std::size_t>(t);
    double u = t - static_cast<double>(j);
    if (j == 0 || j + 2 >= n) {  // linear near the ends
        return f[j] * (1.0 - u) + f[j + 1] * u;
    }
    const double fm = f[j - 1], f0 = f[j], f1 = f[j + 1], f2 = f[j + 2];
    const double a = -0.5 * fm + 1.5 * f0 - 1.5 * f1 + 0.5 * f2;
    const double b = fm - 2.5 * f0 + 2.0 * f1 - 0.5 * f2;
    const double c = -0.5 * fm + 0.5 * f1;
    return ((a * u + b) * u + c) * u + f0;
}

double NormalSampler::next_unit() {
    // (0,1]: never returns 0, so log() below is safe.
    const double scale = 1.0 / 9007199254740992.0;  // 2^-53
    std::uint64_t r = engine_();
    return (static_cast<double>(r >> 11) + 1.0) * scale;
}

double NormalSampler::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u1 = next_unit();
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

std::uint64_t NormalSampler::derive_seed(std::uint64_t base, std::uint64_t k) {
    // splitmix64 mix of base + golden-ratio stride.
    std::uint64_t z = base + (k + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace sqha
