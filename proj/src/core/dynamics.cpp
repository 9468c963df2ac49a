#include "core/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/fields.hpp"
#include "core/numerics.hpp"

namespace sqha {

namespace {

// ---------------------------------------------------------------------------
// Crank-Nicolson stepper: (I + i dt H / 2 hbar) psi^{n+1} = (I - i dt H / 2 hbar) psi^n
// on the interior points, psi = 0 at both edges. The forward-elimination
// coefficients are precomputed once (the potential is static).
class CrankNicolson {
public:
    CrankNicolson(const Grid1D& grid, const PhysicalParams& params, double dt)
        : n_(grid.size()), cprime_(n_), work_(n_) {
        const double dx = grid.dx();
        const double hbar = params.hbar;
        const Complex ifac(0.0, dt / (2.0 * hbar));
        const double kin = hbar * hbar / (params.mass * dx * dx);
        off_ = ifac * Complex(-0.5 * kin, 0.0);
        diag_.resize(n_);
        rdiag_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            const double h_jj = kin + params.potential_at(grid, j);
            diag_[j] = 1.0 + ifac * h_jj;
            rdiag_[j] = 1.0 - ifac * h_jj;
        }
        // Thomas forward sweep over the interior block [1, n-2].
        cprime_[1] = off_ / diag_[1];
        for (std::size_t j = 2; j + 1 < n_; ++j)
            cprime_[j] = off_ / (diag_[j] - off_ * cprime_[j - 1]);
    }

    void step(std::vector<Complex>& psi) {
        // rhs = (I - i dt H / 2 hbar) psi, interior rows only.
        for (std::size_t j = 1; j + 1 < n_; ++j)
            work_[j] = rdiag_[j] * psi[j] - off_ * (psi[j - 1] + psi[j + 1]);
        // Thomas solve with psi(edges) = 0.
        work_[1] = work_[1] / diag_[1];
        for (std::size_t j = 2; j + 1 < n_; ++j)
            work_[j] = (work_[j] - off_ * work_[j - 1]) / (diag_[j] - off_ * cprime_[j - 1]);
        psi[n_ - 1] = 0.0;
        psi[n_ - 2] = work_[n_ - 2];
        for (std::size_t j = n_ - 3; j >= 1; --j) psi[j] = work_[j] - cprime_[j] * psi[j + 1];
        psi[0] = 0.0;
    }

private:
    std::size_t n_;
    Complex off_;
    std::vector<Complex> diag_, rdiag_, cprime_, work_;
};

double norm_of(const std::vector<Complex>& psi, double dx) {
    std::vector<double> dens(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) dens[j] = std::norm(psi[j]);
    return trapezoid(dens, dx);
}

// ---------------------------------------------------------------------------
// Momentum + quantum-potential fields of one state, used by the trajectory
// integrators. Interpolation is cubic where the full 4-point stencil is
// valid, degrading to linear / nearest-valid near nodes and edges.
struct FlowField {
    const Grid1D* grid = nullptr;
    std::vector<double> p;
    std::vector<double> vqu;
    std::vector<bool> valid;

    static FlowField from_state(const ComplexField& psi, const PhysicalParams& params,
                                double eps_node) {
        FlowField f;
        f.grid = &psi.grid();
        auto polar = polar_from_wave(psi, params.hbar, eps_node);
        auto qp = compute_vqu(polar.amplitude, params, eps_node);
        f.p = polar.momentum.values();
        f.vqu = qp.vqu.values();
        f.valid.resize(psi.size());
        for (std::size_t j = 0; j < psi.size(); ++j)
            f.valid[j] = polar.valid[j] && qp.valid[j];
        return f;
    }

    double interp(const std::vector<double>& v, double q) const {
        const double t = (q - grid->x_min()) / grid->dx();
        const auto n = static_cast<double>(grid->size() - 1);
        const double tc = std::clamp(t, 0.0, n);
        auto j = static_cast<std::size_t>(tc);
        if (j + 1 >= grid->size()) j = grid->size() - 2;
        const bool cubic_ok = j >= 1 && j + 2 < grid->size() && valid[j - 1] && valid[j] &&
                              valid[j + 1] && valid[j + 2];
        if (cubic_ok) return cubic_interp_uniform(v, tc);
        if (valid[j] && valid[j + 1]) {
            double u = tc - static_cast<double>(j);
            return v[j] * (1.0 - u) + v[j + 1] * u;
        }
        // Nearest valid sample (trajectories brushing a node).
        for (std::size_t d = 0; d < grid->size(); ++d) {
            if (j >= d && valid[j - d]) return v[j - d];
            if (j + d < grid->size() && valid[j + d]) return v[j + d];
        }
        return 0.0;
    }

    double velocity(double q, double mass) const { return interp(p, q) / mass; }

    double lagrangian(double q, const PhysicalParams& params) const {
        const double pq = interp(p, q);
        return pq * pq / (2.0 * params.mass) - params.potential_value(q) - interp(vqu, q);
    }
};

// RK4 step across [t, t+h] for (q, S), fields blended linearly in time
// between f0 (at t) and f1 (at t+h).
struct FlowSample {
    double v;
    double lag;
};

FlowSample blend(const FlowField& f0, const FlowField& f1, double w, double q,
                 const PhysicalParams& params) {
    const double v0 = f0.velocity(q, params.mass);
    const double v1 = f1.velocity(q, params.mass);
    const double l0 = f0.lagrangian(q, params);
    const double l1 = f1.lagrangian(q, params);
    return {v0 * (1.0 - w) + v1 * w, l0 * (1.0 - w) + l1 * w};
}

void rk4_advance(double& q, double& s, const FlowField& f0, const FlowField& f1, double h,
                 const PhysicalParams& params) {
    const FlowSample k1 = blend(f0, f1, 0.0, q, params);
    const FlowSample k2 = blend(f0, f1, 0.5, q + 0.5 * h * k1.v, params);
    const FlowSample k3 = blend(f0, f1, 0.5, q + 0.5 * h * k2.v, params);
    const FlowSample k4 = blend(f0, f1, 1.0, q + h * k3.v, params);
    q += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    s += h / 6.0 * (k1.lag + 2.0 * k2.lag + 2.0 * k3.lag + k4.lag);
}

// Online tracker: advances trajectories one evolution step at a time.
class OnlineTrajectories {
public:
    OnlineTrajectories(const std::vector<double>& starts, const Grid1D& grid,
                       const PhysicalParams& params)
        : params_(params), grid_(grid) {
        bundle_.start_points = starts;
        for (double q : starts) {
            if (q <= grid.x_min() || q >= grid.x_max())
                throw InvalidInput("trajectories: start point outside the grid interior");
        }
        q_ = starts;
        s_.assign(starts.size(), 0.0);
        bundle_.exited.assign(starts.size(), false);
        bundle_.positions.resize(starts.size());
        bundle_.action.resize(starts.size());
    }

    void record(double t) {
        bundle_.times.push_back(t);
        for (std::size_t i = 0; i < q_.size(); ++i) {
            bundle_.positions[i].push_back(q_[i]);
            bundle_.action[i].push_back(s_[i]);
        }
    }

    void advance(const FlowField& f0, const FlowField& f1, double h) {
        const double lo = grid_.x_min() + 2.0 * grid_.dx();
        const double hi = grid_.x_max() - 2.0 * grid_.dx();
        for (std::size_t i = 0; i < q_.size(); ++i) {
            if (bundle_.exited[i]) continue;  // truncated: frozen
            rk4_advance(q_[i], s_[i], f0, f1, h, params_);
            if (q_[i] < lo || q_[i] > hi) {
                q_[i] = std::clamp(q_[i], grid_.x_min(), grid_.x_max());
                bundle_.exited[i] = true;
            }
        }
    }

    TrajectoryBundle take() { return std::move(bundle_); }

private:
    PhysicalParams params_;
    Grid1D grid_;
    std::vector<double> q_, s_;
    TrajectoryBundle bundle_;
};

EvolutionResult run_impl(const ComplexField& psi0, const PhysicalParams& params,
                         const EvolutionConfig& config) {
    params.validate();
    config.validate();
    if (config.noise) config.noise->validate();

    const Grid1D& grid = psi0.grid();
    const double dx = grid.dx();
    const bool stochastic = config.scheme == Scheme::stochastic;

    EvolutionResult out;
    const double norm0 = norm_of(psi0.values(), dx);
    if (std::abs(norm0 - 1.0) > 1e-6)
        throw InvalidInput("evolve: psi0 is not normalized");
    if (config.dt > dx * dx * params.mass / params.hbar)
        out.warnings.push_back("dt exceeds the dx^2 m / hbar accuracy guideline");
    if (boundary_density_exceeds(psi0.density()))
        out.warnings.push_back("boundary density exceeds 1e-8 of the peak; "
                               "Dirichlet edges will reflect");

    CrankNicolson cn(grid, params, config.dt);
    std::vector<Complex> psi = psi0.values();

    const bool track = !config.trajectory_starts.empty();
    std::optional<OnlineTrajectories> tracker;
    FlowField flow_prev;
    if (track) {
        tracker.emplace(config.trajectory_starts, grid, params);
        flow_prev = FlowField::from_state(psi0, params, config.eps_node);
        tracker->record(0.0);
    }

    std::optional<NormalSampler> rng;
    const bool noise_active =
        stochastic && config.noise && config.noise->temperature > 0.0;
    if (noise_active) rng.emplace(config.noise->seed);

    auto record_state = [&](double t, std::size_t clamped_in_interval) {
        ComplexField state(grid, psi);
        out.times.push_back(t);
        out.norm.push_back(norm_of(psi, dx));
        out.energy.push_back(hydrodynamic_energy(state, params, config.eps_node));
        out.clamped.push_back(clamped_in_interval);
        out.snapshots.push_back(std::move(state));
    };

    record_state(0.0, 0);

    std::size_t clamp_accum = 0;
    for (std::size_t s = 1; s <= config.n_steps; ++s) {
        cn.step(psi);

        if (noise_active) {
            RealField eta = sample_noise(grid, *config.noise, params.boltzmann, config.dt, *rng);
            double maxdens = 0.0;
            for (const Complex& v : psi) maxdens = std::max(maxdens, std::norm(v));
            const double cutoff = config.eps_node * maxdens;
            std::size_t clamped_now = 0;
            for (std::size_t j = 0; j < psi.size(); ++j) {
                const double dens = std::norm(psi[j]);
                if (dens < cutoff || dens == 0.0) continue;
                const double a = std::sqrt(dens);
                double a_new = a + config.dt * eta[j] / a;
                if (a_new < 0.0) {
                    a_new = 0.0;
                    ++clamped_now;
                }
                psi[j] *= a_new / a;
            }
            clamp_accum += clamped_now;
            if (static_cast<double>(clamped_now) >
                1e-3 * static_cast<double>(psi.size())) {
                std::ostringstream msg;
                msg << "evolve_stochastic: noise drove " << clamped_now << " of " << psi.size()
                    << " amplitudes negative in one step (limit 0.1%)";
                throw NumericalAbort(msg.str());
            }
        } else if (!stochastic) {
            const double nrm = norm_of(psi, dx);
            if (std::abs(nrm - 1.0) > 1e-4) {
                std::ostringstream msg;
                msg << "evolve_deterministic: instability detected at step " << s
                    << " (norm = " << nrm << ")";
                throw NumericalAbort(msg.str());
            }
        }

        if (track) {
            FlowField flow_now =
                FlowField::from_state(ComplexField(grid, psi), params, config.eps_node);
            tracker->advance(flow_prev, flow_now, config.dt);
            flow_prev = std::move(flow_now);
        }

        if (s % config.record_every == 0 || s == config.n_steps) {
            const double t = config.dt * static_cast<double>(s);
            record_state(t, clamp_accum);
            clamp_accum = 0;
            if (track) tracker->record(t);
        }
    }

    if (boundary_density_exceeds(out.snapshots.back().density()))
        out.warnings.push_back("final boundary density exceeds 1e-8 of the peak");
    if (track) out.trajectories = tracker->take();
    return out;
}

} // namespace

EvolutionResult evolve_deterministic(const ComplexField& psi0, const PhysicalParams& params,
                                     const EvolutionConfig& config) {
    EvolutionConfig c = config;
    c.scheme = Scheme::deterministic;
    return run_impl(psi0, params, c);
}

EvolutionResult evolve_stochastic(const ComplexField& psi0, const PhysicalParams& params,
                                  const EvolutionConfig& config) {
    EvolutionConfig c = config;
    c.scheme = Scheme::stochastic;
    c.validate();
    return run_impl(psi0, params, c);
}

EvolutionResult run_evolution(const ComplexField& psi0, const PhysicalParams& params,
                              const EvolutionConfig& config) {
    return config.scheme == Scheme::stochastic ? evolve_stochastic(psi0, params, config)
                                               : evolve_deterministic(psi0, params, config);
}

TrajectoryBundle bohmian_trajectories(const std::vector<ComplexField>& states,
                                      const std::vector<double>& times,
                                      const PhysicalParams& params,
                                      const std::vector<double>& start_points,
                                      double eps_node) {
    params.validate();
    if (states.size() != times.size())
        throw InvalidInput("bohmian_trajectories: states/times size mismatch");
    if (states.size() < 2)
        throw InvalidInput("bohmian_trajectories: need at least 2 snapshots");
    for (std::size_t k = 1; k < states.size(); ++k) {
        require_same_grid(states[k].grid(), states[0].grid(), "bohmian_trajectories");
        if (!(times[k] > times[k - 1]))
            throw InvalidInput("bohmian_trajectories: times must be increasing");
    }

    const Grid1D& grid = states[0].grid();
    std::vector<FlowField> flows(states.size());
    for (std::size_t k = 0; k < states.size(); ++k)
        flows[k] = FlowField::from_state(states[k], params, eps_node);

    // Cubic time interpolation of the flow across snapshots k-1..k+2 when
    // available; linear between the two bounding snapshots otherwise.
    auto sample = [&](double q, std::size_t k, double w) -> FlowSample {
        if (w <= 0.0 || k + 1 >= states.size())
            return {flows[k].velocity(q, params.mass), flows[k].lagrangian(q, params)};
        if (k >= 1 && k + 2 < states.size()) {
            double vs[4], ls[4];
            for (int i = 0; i < 4; ++i) {
                const FlowField& f = flows[k - 1 + i];
                vs[i] = f.velocity(q, params.mass);
                ls[i] = f.lagrangian(q, params);
            }
            return {cubic_interp_uniform(std::span<const double>(vs, 4), 1.0 + w),
                    cubic_interp_uniform(std::span<const double>(ls, 4), 1.0 + w)};
        }
        const double v0 = flows[k].velocity(q, params.mass);
        const double v1 = flows[k + 1].velocity(q, params.mass);
        const double l0 = flows[k].lagrangian(q, params);
        const double l1 = flows[k + 1].lagrangian(q, params);
        return {v0 * (1.0 - w) + v1 * w, l0 * (1.0 - w) + l1 * w};
    };

    TrajectoryBundle bundle;
    bundle.start_points = start_points;
    bundle.times = times;
    bundle.exited.assign(start_points.size(), false);
    bundle.positions.assign(start_points.size(), {});
    bundle.action.assign(start_points.size(), {});

    const double lo = grid.x_min() + 2.0 * grid.dx();
    const double hi = grid.x_max() - 2.0 * grid.dx();

    for (std::size_t i = 0; i < start_points.size(); ++i) {
        double q = start_points[i];
        if (q <= grid.x_min() || q >= grid.x_max())
            throw InvalidInput("bohmian_trajectories: start point outside the grid interior");
        double s = 0.0;
        bundle.positions[i].push_back(q);
        bundle.action[i].push_back(s);
        for (std::size_t k = 0; k + 1 < states.size(); ++k) {
            if (!bundle.exited[i]) {
                const double h = times[k + 1] - times[k];
                const FlowSample k1 = sample(q, k, 0.0);
                const FlowSample k2 = sample(q + 0.5 * h * k1.v, k, 0.5);
                const FlowSample k3 = sample(q + 0.5 * h * k2.v, k, 0.5);
                const FlowSample k4 = sample(q + h * k3.v, k, 1.0);
                q += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
                s += h / 6.0 * (k1.lag + 2.0 * k2.lag + 2.0 * k3.lag + k4.lag);
                if (q < lo || q > hi) {
                    q = std::clamp(q, grid.x_min(), grid.x_max());
                    bundle.exited[i] = true;
                }
            }
            bundle.positions[i].push_back(q);
            bundle.action[i].push_back(s);
        }
    }
    return bundle;
}

void attach_action_reference(TrajectoryBundle& bundle, const TrajectoryBundle& reference) {
    if (reference.positions.size() != bundle.positions.size() ||
        reference.times.size() != bundle.times.size())
        throw InvalidInput("attach_action_reference: reference does not match the bundle");
    bundle.action_reference = reference.action;
    bundle.action_delta = bundle.action;
    for (std::size_t i = 0; i < bundle.action.size(); ++i)
        for (std::size_t k = 0; k < bundle.action[i].size(); ++k)
            bundle.action_delta[i][k] = bundle.action[i][k] - reference.action[i][k];
}

ContinuityResidual continuity_residual(const std::vector<ComplexField>& states,
                                       const std::vector<double>& times,
                                       const PhysicalParams& params, double support_threshold,
                                       double eps_node) {
    params.validate();
    if (states.size() != times.size() || states.size() < 3)
        throw InvalidInput("continuity_residual: need at least 3 snapshots");
    const Grid1D& grid = states[0].grid();
    const double dx = grid.dx();

    ContinuityResidual out;
    for (std::size_t k = 1; k + 1 < states.size(); ++k) {
        require_same_grid(states[k].grid(), grid, "continuity_residual");
        const double dt2 = times[k + 1] - times[k - 1];
        auto polar = polar_from_wave(states[k], params.hbar, eps_node);
        const RealField n_prev = states[k - 1].density();
        const RealField n_mid = states[k].density();
        const RealField n_next = states[k + 1].density();

        double peak = 0.0;
        for (double v : n_mid.values()) peak = std::max(peak, v);
        const double floor = support_threshold * peak;

        std::vector<double> flux(grid.size(), 0.0);
        for (std::size_t j = 0; j < grid.size(); ++j)
            flux[j] = n_mid[j] * polar.momentum[j] / params.mass;
        auto dflux = deriv1(flux, dx);

        std::vector<double> res(grid.size(), 0.0);
        double mx = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            res[j] = (n_next[j] - n_prev[j]) / dt2 + dflux[j];
            if (n_mid[j] >= floor && polar.valid[j] && j > 0 && j + 1 < grid.size())
                mx = std::max(mx, std::abs(res[j]));
        }
        out.times.push_back(times[k]);
        out.residual.emplace_back(grid, std::move(res));
        out.max_abs.push_back(mx);
        out.overall_max = std::max(out.overall_max, mx);
    }
    return out;
}

double hydrodynamic_energy(const ComplexField& psi, const PhysicalParams& params,
                           double eps_node) {
    auto polar = polar_from_wave(psi, params.hbar, eps_node);
    auto qp = compute_vqu(polar.amplitude, params, eps_node);
    const Grid1D& grid = psi.grid();
    std::vector<double> integrand(grid.size(), 0.0);
    std::vector<bool> valid(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        valid[j] = polar.valid[j] && qp.valid[j];
        if (!valid[j]) continue;
        const double dens = polar.amplitude[j] * polar.amplitude[j];
        const double kin = polar.momentum[j] * polar.momentum[j] / (2.0 * params.mass);
        integrand[j] = dens * (params.potential_at(grid, j) + qp.vqu[j] + kin);
    }
    return trapezoid_masked(integrand, valid, grid.dx());
}

PolarState evolve_polar_pair(const RealField& amplitude0, const RealField& action0,
                             const PhysicalParams& params, double dt, std::size_t n_steps) {
    params.validate();
    require_same_grid(amplitude0.grid(), action0.grid(), "evolve_polar_pair");
    if (!(dt > 0.0)) throw InvalidInput("evolve_polar_pair: dt must be > 0");
    for (double v : amplitude0.values())
        if (v <= 0.0)
            throw InvalidInput("evolve_polar_pair: amplitude must be strictly positive "
                               "(node-free states only)");

    const Grid1D& grid = amplitude0.grid();
    const double dx = grid.dx();
    const std::size_t n = grid.size();
    const double hh2m = params.hbar * params.hbar / (2.0 * params.mass);

    std::vector<double> vpot(n);
    for (std::size_t j = 0; j < n; ++j) vpot[j] = params.potential_at(grid, j);

    struct State { std::vector<double> a, s; };
    auto rhs = [&](const State& st) {
        auto da = deriv1(st.a, dx);
        auto d2a = deriv2(st.a, dx);
        auto ds = deriv1(st.s, dx);
        auto d2s = deriv2(st.s, dx);
        State r{std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t j = 0; j < n; ++j) {
            r.s[j] = -vpot[j] + hh2m * d2a[j] / st.a[j] -
                     ds[j] * ds[j] / (2.0 * params.mass);
            r.a[j] = -(da[j] * ds[j] + 0.5 * st.a[j] * d2s[j]) / params.mass;
        }
        return r;
    };

    State st{amplitude0.values(), action0.values()};
    auto axpy = [&](const State& base, const State& k, double c) {
        State r{std::vector<double>(n), std::vector<double>(n)};
        for (std::size_t j = 0; j < n; ++j) {
            r.a[j] = base.a[j] + c * k.a[j];
            r.s[j] = base.s[j] + c * k.s[j];
        }
        return r;
    };

    for (std::size_t step = 0; step < n_steps; ++step) {
        State k1 = rhs(st);
        State k2 = rhs(axpy(st, k1, 0.5 * dt));
        State k3 = rhs(axpy(st, k2, 0.5 * dt));
        State k4 = rhs(axpy(st, k3, dt));
        for (std::size_t j = 0; j < n; ++j) {
            st.a[j] += dt / 6.0 * (k1.a[j] + 2.0 * k2.a[j] + 2.0 * k3.a[j] + k4.a[j]);
            st.s[j] += dt / 6.0 * (k1.s[j] + 2.0 * k2.s[j] + 2.0 * k3.s[j] + k4.s[j]);
            if (!(st.a[j] > 0.0))
                throw NumericalAbort("evolve_polar_pair: amplitude left the node-free regime");
        }
    }
    return PolarState{RealField(grid, std::move(st.a)), RealField(grid, std::move(st.s))};
}

} // namespace sqha
