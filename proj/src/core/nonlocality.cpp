#include "core/nonlocality.hpp"

#include <algorithm>
#include <cmath>

#include "core/fields.hpp"
#include "core/numerics.hpp"

namespace sqha {

const char* typology_name(Typology t) {
    switch (t) {
        case Typology::strong: return "strong";
        case Typology::ballistic: return "ballistic";
        case Typology::middle: return "middle";
        case Typology::weak: return "weak";
        case Typology::unclassified: return "unclassified";
    }
    return "unclassified";
}

void PseudoGaussianSpec::validate() const {
    if (!(lambda_scale > 0.0)) throw InvalidInput("PseudoGaussianSpec: Lambda must be > 0");
    if (!(delta_q > 0.0)) throw InvalidInput("PseudoGaussianSpec: delta_q must be > 0");
    if ((family == Case::c || family == Case::d) && !(g > 0.0 && g < 2.0))
        throw InvalidInput("PseudoGaussianSpec: g must be in (0, 2) for cases c and d");
}

double PseudoGaussianSpec::scale_separation() const {
    // f(0) = 1 for every family.
    return lambda_scale * lambda_scale / (delta_q * delta_q);
}

namespace {

double family_f(PseudoGaussianSpec::Case family, double g, double ax) {
    switch (family) {
        case PseudoGaussianSpec::Case::a: return 1.0;
        case PseudoGaussianSpec::Case::b: return 1.0 + ax;
        case PseudoGaussianSpec::Case::c: return 1.0 + std::log1p(std::pow(ax, g));
        case PseudoGaussianSpec::Case::d: return 1.0 + std::pow(ax, g);
        case PseudoGaussianSpec::Case::gaussian: return 1.0;  // unused
    }
    return 1.0;
}

} // namespace

PseudoGaussianResult pseudo_gaussian(const PseudoGaussianSpec& spec, const Grid1D& grid) {
    spec.validate();
    PseudoGaussianResult out{RealField(grid, std::vector<double>(grid.size(), 0.0)), {}};

    const double dq2 = spec.delta_q * spec.delta_q;
    const double L2 = spec.lambda_scale * spec.lambda_scale;
    std::vector<double> n(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j) - spec.center;
        const double x2 = x * x;
        double neg_log;
        if (spec.family == PseudoGaussianSpec::Case::gaussian) {
            neg_log = x2 / dq2;
        } else {
            const double f = family_f(spec.family, spec.g, std::abs(x));
            neg_log = x2 / (dq2 * (1.0 + x2 / (L2 * f)));
        }
        n[j] = std::exp(-neg_log);
    }
    out.density = normalize(RealField(grid, std::move(n)));

    if (spec.family != PseudoGaussianSpec::Case::gaussian && spec.scale_separation() < 100.0)
        out.warnings.push_back("pseudo_gaussian: Lambda^2 f(0) / delta_q^2 below 100; the "
                               "near-center region is not cleanly Gaussian");
    return out;
}

TypologyResult classify_typology(const RealField& amplitude) {
    const Grid1D& grid = amplitude.grid();
    double peak = 0.0;
    std::size_t j_peak = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double a = std::abs(amplitude[j]);
        if (a > peak) { peak = a; j_peak = j; }
    }
    if (peak <= 0.0) throw InvalidInput("classify_typology: all-zero amplitude");

    // Radial samples on the positive side of the peak, restricted to where
    // -ln(A/peak) is both meaningful (>= 3) and representable (<= 690, i.e.
    // A above the double underflow floor).
    std::vector<double> xs, ws;  // ws = -ln(A/peak)
    for (std::size_t j = j_peak + 1; j < grid.size(); ++j) {
        const double x = grid.x(j) - grid.x(j_peak);
        const double a = amplitude[j] / peak;
        if (a <= 0.0) continue;
        const double w = -std::log(a);
        if (w < 3.0 || w > 690.0) continue;
        xs.push_back(x);
        ws.push_back(w);
    }
    if (xs.size() < 16)
        throw InvalidInput("classify_typology: tail too short to fit "
                           "(grid must resolve a decaying tail)");

    const double x_hi = xs.back();
    const double x_lo = 0.5 * x_hi;

    // Strict positivity over the whole window, including points the decay
    // filter above skipped.
    for (std::size_t j = j_peak + 1; j < grid.size(); ++j) {
        const double x = grid.x(j) - grid.x(j_peak);
        if (x >= x_lo && x <= x_hi && !(amplitude[j] > 0.0))
            throw InvalidInput("classify_typology: amplitude not strictly positive "
                               "on the fit window");
    }

    std::vector<double> lx, lw;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < x_lo) continue;
        lx.push_back(std::log(xs[i]));
        lw.push_back(std::log(ws[i]));
    }
    if (lx.size() < 16)
        throw InvalidInput("classify_typology: fit window under-resolved");

    LineFit fit = fit_line(lx, lw);

    TypologyResult out;
    out.tail.poly_degree = fit.slope;
    out.tail.phi = 3.0 - 2.0 * fit.slope;
    out.tail.fit_window_lo = x_lo;
    out.tail.fit_window_hi = x_hi;
    out.tail.fit_residual = fit.rms_residual;

    const double k = fit.slope;
    if (fit.rms_residual > 0.05)
        out.typology = Typology::unclassified;
    else if (k >= 1.95 && k <= 2.05)
        out.typology = Typology::ballistic;
    else if (k > 2.05)
        out.typology = Typology::strong;
    else if (k >= 1.5)
        out.typology = Typology::middle;
    else
        out.typology = Typology::weak;
    return out;
}

LambdaQResult lambda_q(const QuantumPotentialResult& vqu, double lambda_c_value, double q_max,
                       double center) {
    if (!(lambda_c_value > 0.0) || !std::isfinite(lambda_c_value))
        throw InvalidInput("lambda_q: lambda_c must be positive and finite");
    if (q_max < 10.0 * lambda_c_value)
        throw InvalidInput("lambda_q: q_max < 10 lambda_c gives insufficient tail");
    const Grid1D& grid = vqu.force.grid();
    if (center + q_max > grid.x_max())
        throw InvalidInput("lambda_q: grid does not reach q_max from the center");
    const double dx = grid.dx();

    // Radial force samples on [0, q_max] from the center.
    const std::size_t j0 = grid.nearest_index(center);
    std::vector<double> x, absf;
    std::vector<bool> ok;
    for (std::size_t j = j0; j < grid.size(); ++j) {
        const double r = grid.x(j) - center;
        if (r > q_max + 0.5 * dx) break;
        x.push_back(r);
        absf.push_back(std::abs(vqu.force[j]));
        ok.push_back(vqu.valid[j]);
    }
    if (x.size() < 32) throw InvalidInput("lambda_q: too few radial samples");

    // Denominator |dV/dq| at q = lambda_c (linear interpolation).
    const double tf = lambda_c_value / dx;
    const auto jf = static_cast<std::size_t>(tf);
    if (jf + 1 >= x.size() || !ok[jf] || !ok[jf + 1])
        throw InvalidInput("lambda_q: force undefined at q = lambda_c");
    const double wf = tf - static_cast<double>(jf);
    const double denom = absf[jf] * (1.0 - wf) + absf[jf + 1] * wf;
    if (denom < 1e-300)
        throw InvalidInput("lambda_q: degenerate flat potential (no force at lambda_c)");

    // Integrand |F|/q from q = dx outward. The center endpoint is handled
    // by noting the force vanishes linearly at a density maximum, so the
    // integrand is approximately flat across [0, dx).
    std::vector<double> integrand(x.size(), 0.0);
    std::vector<bool> valid(x.size(), false);
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!ok[i]) continue;
        integrand[i] = absf[i] / x[i];
        valid[i] = true;
    }
    const std::vector<bool> valid_tail(valid.begin() + 1, valid.end());
    double total = trapezoid_masked(std::span<const double>(integrand).subspan(1),
                                    valid_tail, dx);
    const double center_piece = valid[1] ? integrand[1] * dx : 0.0;
    total += center_piece;

    // Richardson error estimate from a half-resolution trapezoid.
    std::vector<double> coarse_f, coarse_v;
    for (std::size_t i = 1; i < x.size(); i += 2) {
        coarse_f.push_back(integrand[i]);
        coarse_v.push_back(valid[i] ? 1.0 : 0.0);
    }
    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < coarse_f.size(); ++i)
        if (coarse_v[i] > 0.5 && coarse_v[i + 1] > 0.5)
            coarse += 0.5 * (coarse_f[i] + coarse_f[i + 1]) * (2.0 * dx);

    LambdaQResult out;
    out.cutoff_sensitivity = total > 0.0 ? center_piece / total : 0.0;
    out.quad_error = std::abs(total - center_piece - coarse) / 3.0;

    // Tail test: log-log slope of the integrand over the outermost decade.
    std::vector<double> lx, li;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!valid[i] || integrand[i] <= 0.0) continue;
        if (x[i] < 0.1 * q_max) continue;
        lx.push_back(std::log(x[i]));
        li.push_back(std::log(integrand[i]));
    }
    if (lx.size() < 8)
        throw InvalidInput("lambda_q: outermost decade has too few usable points");
    LineFit tail = fit_line(lx, li);
    out.tail_exponent = tail.slope;

    if (tail.slope >= -1.0 + 0.02) {
        out.finite = false;
        out.value = kInfiniteLength;
        return out;
    }

    out.finite = true;
    out.value = 2.0 * lambda_c_value * total / denom;
    if (out.value < lambda_c_value) {
        // Below lambda_c the range of interaction has no physical meaning of
        // its own and is retained equal to lambda_c.
        out.value = lambda_c_value;
        out.floored = true;
    }
    return out;
}

CaseDAsymptotics case_d_asymptotics(const PseudoGaussianSpec& spec,
                                    const PhysicalParams& params) {
    params.validate();
    if (spec.family != PseudoGaussianSpec::Case::d)
        throw InvalidInput("case_d_asymptotics: spec.family must be case d");
    if (!(spec.g > 0.0 && spec.g <= 2.0))
        throw InvalidInput("case_d_asymptotics: g must be in (0, 2]");
    if (!(spec.lambda_scale > 0.0) || !(spec.delta_q > 0.0))
        throw InvalidInput("case_d_asymptotics: Lambda and delta_q must be > 0");

    const double g = spec.g;
    const double beta =
        spec.lambda_scale * spec.lambda_scale / (2.0 * spec.delta_q * spec.delta_q);
    const double coef = params.hbar * params.hbar / (2.0 * params.mass);

    // Large-distance laws of the case-d family:
    //   V_qu(x) = -C [ b^2 g^2 x^{2(g-1)} - b g (g-1) x^{g-2} ]
    //   F(x)    =  C [ b^2 g^2 (2g-1) x^{2g-3} - b g (g-1)(g-2) x^{g-3} ]
    auto vqu_law = [&](double xx) {
        return -coef * (beta * beta * g * g * std::pow(xx, 2.0 * (g - 1.0)) -
                        beta * g * (g - 1.0) * std::pow(xx, g - 2.0));
    };
    auto force_law = [&](double xx) {
        return coef * (beta * beta * g * g * (2.0 * g - 1.0) * std::pow(xx, 2.0 * g - 3.0) -
                       beta * g * (g - 1.0) * (g - 2.0) * std::pow(xx, g - 3.0));
    };

    const double x_lo = 10.0 * std::max({1.0, spec.delta_q, spec.lambda_scale});
    const double x_hi = 100.0 * x_lo;
    const std::size_t n_samples = 64;

    std::vector<double> lx, lv, lf;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        const double xx = x_lo * std::pow(x_hi / x_lo, t);
        const double v = vqu_law(xx);
        const double f = force_law(xx);
        if (!std::isfinite(v) || !std::isfinite(f) || v == 0.0 || f == 0.0) continue;
        lx.push_back(std::log(xx));
        lv.push_back(std::log(std::abs(v)));
        lf.push_back(std::log(std::abs(f)));
    }
    if (lx.size() < 8) throw InvalidInput("case_d_asymptotics: tail window under-resolved");

    LineFit fv = fit_line(lx, lv);
    LineFit ff = fit_line(lx, lf);

    CaseDAsymptotics out;
    out.vqu_exponent = fv.slope;
    out.force_exponent = ff.slope;
    out.vqu_residual = fv.rms_residual;
    out.force_residual = ff.rms_residual;
    out.window_lo = x_lo;
    out.window_hi = x_hi;
    return out;
}

} // namespace sqha
