#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/qpotential.hpp"
#include "core/types.hpp"

namespace sqha {

/// Result of a tail-exponent fit: amplitude tails exp[-P^k(q)] are
/// characterized by the polynomial degree k, fitted as the slope of
/// ln(-ln A) against ln q. phi = 3 - 2k controls whether the quantum
/// force integral converges (phi > 0).
struct TailModel {
    double poly_degree = 0.0;
    double phi = 3.0;
    double fit_window_lo = 0.0;
    double fit_window_hi = 0.0;
    double fit_residual = 0.0;
};

enum class Typology { strong, ballistic, middle, weak, unclassified };

const char* typology_name(Typology t);

struct TypologyResult {
    Typology typology = Typology::unclassified;
    TailModel tail;
};

/// Classify the quantum-potential interaction from the decay degree k of
/// the amplitude tail: k > 2 strong, k = 2 +- 0.05 ballistic,
/// 3/2 <= k < 2 middle, k < 3/2 weak. A fit residual above 0.05 (a
/// non-monotone / non-polynomial tail) yields `unclassified`.
TypologyResult classify_typology(const RealField& amplitude);

/// Pseudo-Gaussian density family: indistinguishable from a Gaussian near
/// the center, with slower tails controlled by f:
///   n = exp[ -x^2 / (dq2 (1 + x^2/(Lambda^2 f(x)))) ],  x = q - center,
///   case a: f = 1            case b: f = 1 + |x|
///   case c: f = 1 + ln(1+|x|^g)   case d: f = 1 + |x|^g   (0 < g < 2)
/// plus the pure Gaussian n = exp(-x^2/dq2) as the g = 2 reference.
struct PseudoGaussianSpec {
    enum class Case { a, b, c, d, gaussian };
    Case family = Case::gaussian;
    double lambda_scale = 1.0;  // Lambda
    double delta_q = 0.1;       // sqrt(dq2)
    double g = 1.0;             // cases c, d
    double center = 0.0;

    void validate() const;
    /// Lambda^2 f(0) / dq2; a warning is attached below 100.
    double scale_separation() const;
};

struct PseudoGaussianResult {
    RealField density;
    std::vector<std::string> warnings;
};
PseudoGaussianResult pseudo_gaussian(const PseudoGaussianSpec& spec, const Grid1D& grid);

/// Range of interaction of the quantum potential,
///   lambda_q = 2 * integral_0^qmax |q^-1 dV_qu/dq| dq / (lambda_c^-1 |dV_qu/dq|(lambda_c)),
/// measured from `center` along the positive side of the grid. Divergence
/// is detected from the integrand's log-log slope on the outermost decade
/// (slope >= -1 + 0.02 means the improper integral cannot converge);
/// finite results below lambda_c are floored to lambda_c.
struct LambdaQResult {
    bool finite = false;
    double value = kInfiniteLength;
    double tail_exponent = 0.0;
    bool floored = false;             // raw value was below lambda_c
    double cutoff_sensitivity = 0.0;  // share of the integral in [0, dx)
    double quad_error = 0.0;          // trapezoid Richardson estimate
};
LambdaQResult lambda_q(const QuantumPotentialResult& vqu, double lambda_c_value, double q_max,
                       double center = 0.0);

/// Tail scaling of the case-d quantum potential and force: the asymptotic
/// laws V_qu ~ x^{2(g-1)} and -dV_qu/dq ~ x^{2g-3} realized as data, with
/// the exponents recovered by log-log fits over the sampled tail. Accepts
/// g in (0, 2]; g = 2 is the Gaussian (linear-force) limit.
struct CaseDAsymptotics {
    double vqu_exponent = 0.0;
    double force_exponent = 0.0;
    double vqu_residual = 0.0;
    double force_residual = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};
CaseDAsymptotics case_d_asymptotics(const PseudoGaussianSpec& spec, const PhysicalParams& params);

} // namespace sqha
