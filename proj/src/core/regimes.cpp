#include "core/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/fields.hpp"
#include "core/noise.hpp"
#include "core/numerics.hpp"

namespace sqha {

double critical_temperature(const PhysicalParams& params, double system_length) {
    params.validate();
    if (!(system_length > 0.0))
        throw InvalidInput("critical_temperature: system length must be > 0");
    return params.hbar * params.hbar /
           (2.0 * params.mass * params.boltzmann * system_length * system_length);
}

UncertaintyProducts uncertainty_products(const PhysicalParams& params) {
    params.validate();
    if (!(params.temperature > 0.0))
        throw InvalidInput("uncertainty_products: temperature must be > 0");
    const double kt = params.boltzmann * params.temperature;
    const double c = params.light_speed;
    UncertaintyProducts out;
    out.delta_e = std::sqrt(2.0 * params.mass * c * c * kt);
    out.delta_p = std::sqrt(2.0 * params.mass * kt);
    const double lc = lambda_c(params);
    out.e_t_product = out.delta_e * lc / c;
    out.l_p_product = lc * out.delta_p;
    out.relativistic_warning = kt > 0.01 * params.mass * c * c;
    return out;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::quantum: return "quantum";
        case Regime::stochastic_quantum: return "stochastic-quantum";
        case Regime::classical_stochastic: return "classical-stochastic";
    }
    return "stochastic-quantum";
}

namespace {

// sqrt of the windowed integral of F^2 over valid points.
double windowed_l2(const Grid1D& grid, const std::vector<double>& f,
                   const std::vector<bool>& valid, double lo, double hi) {
    std::vector<double> sq(grid.size(), 0.0);
    std::vector<bool> ok(grid.size(), false);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double q = grid.x(j);
        if (q < lo || q > hi || !valid[j]) continue;
        sq[j] = f[j] * f[j];
        ok[j] = true;
    }
    return std::sqrt(trapezoid_masked(sq, ok, grid.dx()));
}

std::pair<double, double> default_window(const ComplexField& psi0) {
    const RealField n = psi0.density();
    const Grid1D& g = n.grid();
    const double mass = integral(n);
    double acc = 0.0, lo = g.x_min(), hi = g.x_max();
    bool have_lo = false;
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        acc += 0.5 * (n[j] + n[j + 1]) * g.dx();
        if (!have_lo && acc >= 0.005 * mass) { lo = g.x(j); have_lo = true; }
        if (acc >= 0.995 * mass) { hi = g.x(j + 1); break; }
    }
    return {lo, hi};
}

} // namespace

ForceFluctuation force_vs_fluctuation(const EvolutionResult& reference,
                                      const std::vector<EvolutionResult>& ensemble,
                                      const PhysicalParams& params,
                                      std::optional<std::pair<double, double>> window,
                                      double eps_node) {
    if (ensemble.size() < 30)
        throw InvalidInput("force_vs_fluctuation: ensemble too small (< 30 runs)");
    if (reference.snapshots.empty())
        throw InvalidInput("force_vs_fluctuation: empty reference run");
    for (const auto& run : ensemble)
        if (run.snapshots.size() != reference.snapshots.size())
            throw InvalidInput("force_vs_fluctuation: ensemble run not matched to reference");

    const Grid1D& grid = reference.snapshots.front().grid();
    auto [lo, hi] = window ? *window : default_window(reference.snapshots.front());

    ForceFluctuation out;
    out.window_lo = lo;
    out.window_hi = hi;

    // Reference force fields per snapshot.
    std::vector<QuantumPotentialResult> ref_qp;
    ref_qp.reserve(reference.snapshots.size());
    double force_acc = 0.0;
    for (const auto& snap : reference.snapshots) {
        auto qp = compute_vqu(snap.abs(), params, eps_node);
        force_acc += windowed_l2(grid, qp.force.values(), qp.valid, lo, hi);
        ref_qp.push_back(std::move(qp));
    }
    out.force_norm = force_acc / static_cast<double>(reference.snapshots.size());

    double fluct_acc = 0.0;
    std::size_t count = 0;
    for (const auto& run : ensemble) {
        for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
            auto qp = compute_vqu(run.snapshots[k].abs(), params, eps_node);
            std::vector<double> dforce(grid.size(), 0.0);
            std::vector<bool> ok(grid.size(), false);
            for (std::size_t j = 0; j < grid.size(); ++j) {
                if (!qp.valid[j] || !ref_qp[k].valid[j]) continue;
                dforce[j] = qp.force[j] - ref_qp[k].force[j];
                ok[j] = true;
            }
            fluct_acc += windowed_l2(grid, dforce, ok, lo, hi);
            ++count;
        }
    }
    out.fluctuation_norm = count ? fluct_acc / static_cast<double>(count) : 0.0;
    out.ratio = (out.fluctuation_norm > 0.0 && out.force_norm > 0.0)
                    ? out.fluctuation_norm / out.force_norm
                    : 0.0;
    return out;
}

RegimeReport regime_report(const PhysicalParams& params, double system_length,
                           double lambda_q_input, std::optional<ForceFluctuation> diagnostics) {
    params.validate();
    if (!(system_length > 0.0)) throw InvalidInput("regime_report: system length must be > 0");
    if (!(lambda_q_input > 0.0)) throw InvalidInput("regime_report: lambda_q must be > 0");

    RegimeReport rep;
    rep.system_length = system_length;
    rep.lambda_c = lambda_c(params);
    rep.lambda_q = lambda_q_input;
    // Below lambda_c the interaction range is retained equal to lambda_c.
    rep.lambda_q_effective = std::max(lambda_q_input, rep.lambda_c);
    rep.t_c = critical_temperature(params, system_length);
    if (params.temperature > 0.0) rep.products = uncertainty_products(params);

    if (diagnostics) {
        rep.has_diagnostics = true;
        rep.force_norm = diagnostics->force_norm;
        rep.fluctuation_norm = diagnostics->fluctuation_norm;
        rep.ratio = diagnostics->ratio;
    }

    const bool lambda_q_finite = std::isfinite(rep.lambda_q_effective);
    if (rep.lambda_c >= system_length) {
        rep.regime = Regime::quantum;
    } else if (lambda_q_finite && rep.lambda_q_effective <= 0.1 * system_length &&
               rep.has_diagnostics && rep.ratio > 1.0) {
        rep.regime = Regime::classical_stochastic;
    } else {
        rep.regime = Regime::stochastic_quantum;
    }

    if (!std::isfinite(rep.lambda_q))
        rep.notes.push_back("lambda_q is infinite (linear-type interaction): the quantum "
                            "force never becomes negligible and no classical limit exists");
    if (params.temperature > 0.0) {
        const double target = std::pow(0.5 * std::numbers::pi, 1.5) * params.hbar;
        std::ostringstream n;
        n << "uncertainty products equal (pi/2)^(3/2)*hbar = " << target
          << " under this lambda_c model; the Heisenberg minimum hbar/2 would require "
             "lambda_c = hbar / (2 sqrt(2 m k T))";
        rep.notes.push_back(n.str());
        if (rep.products.relativistic_warning)
            rep.notes.push_back("kT exceeds 1% of m c^2: the non-relativistic expansion "
                                "behind delta_e is strained");
    }
    return rep;
}

std::string format_regime_report(const RegimeReport& rep) {
    std::ostringstream out;
    out << "regime report\n"
        << "  lambda_c            = " << rep.lambda_c << "\n"
        << "  lambda_q (input)    = " << rep.lambda_q << "\n"
        << "  lambda_q (effective)= " << rep.lambda_q_effective << "\n"
        << "  system length L     = " << rep.system_length << "\n"
        << "  T_c (lambda_c = L)  = " << rep.t_c << "\n";
    if (rep.has_diagnostics) {
        out << "  |grad V_qu| (ref)   = " << rep.force_norm << "\n"
            << "  |grad dV_qu| (ens)  = " << rep.fluctuation_norm << "\n"
            << "  fluctuation/force   = " << rep.ratio << "\n";
    }
    if (rep.products.delta_p > 0.0) {
        out << "  delta_E             = " << rep.products.delta_e << "\n"
            << "  delta_p             = " << rep.products.delta_p << "\n"
            << "  delta_E * lambda_c/c= " << rep.products.e_t_product << "\n"
            << "  lambda_c * delta_p  = " << rep.products.l_p_product << "\n";
    }
    out << "  regime              = " << regime_name(rep.regime) << "\n";
    for (const auto& n : rep.notes) out << "  note: " << n << "\n";
    return out.str();
}

} // namespace sqha
