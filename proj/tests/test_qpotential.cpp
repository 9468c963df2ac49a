#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/fields.hpp"
#include "core/numerics.hpp"
#include "core/qpotential.hpp"

using namespace sqha;

namespace {
constexpr double kPi = std::numbers::pi;

PhysicalParams unit_params() {
    PhysicalParams p;
    p.mass = 1.0;
    p.hbar = 1.0;
    return p;
}
} // namespace

TEST_CASE("cosine amplitude gives the constant 2 pi^2 potential") {
    Grid1D g(0.0, 1.0, 4001);
    auto amp = RealField::sampled(g, [](double q) { return std::cos(2.0 * kPi * q); });
    auto res = compute_vqu(amp, unit_params());
    const double expected = 2.0 * kPi * kPi;
    double peak = 1.0;
    for (std::size_t j = 1; j + 1 < g.size(); ++j) {
        if (!res.valid[j]) continue;
        if (amp[j] * amp[j] < 1e-4 * peak) continue;  // node-adjacent points
        CHECK(res.vqu[j] == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("unit Gaussian amplitude: V_qu = -(q^2 - 1)/2") {
    Grid1D g(-8.0, 8.0, 16001);
    auto amp = RealField::sampled(g, [](double q) { return std::exp(-q * q / 2.0); });
    auto res = compute_vqu(amp, unit_params());
    const auto j0 = g.nearest_index(0.0);
    const auto j1 = g.nearest_index(1.0);
    CHECK(res.vqu[j0] == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(res.vqu[j1] == doctest::Approx(0.0).epsilon(1e-7).scale(1.0));
    for (double q : {-2.0, -0.7, 0.3, 1.9}) {
        const auto j = g.nearest_index(q);
        const double x = g.x(j);
        CHECK(res.vqu[j] == doctest::Approx(-0.5 * (x * x - 1.0)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("constant amplitude gives zero potential and force") {
    Grid1D g(0.0, 1.0, 64);
    auto res = compute_vqu(RealField(g, std::vector<double>(64, 3.0)), unit_params());
    for (std::size_t j = 0; j < g.size(); ++j) {
        REQUIRE(res.valid[j]);
        CHECK(res.vqu[j] == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
        CHECK(res.force[j] == doctest::Approx(0.0).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("V_qu is invariant under amplitude rescaling") {
    Grid1D g(-6.0, 6.0, 1201);
    auto amp = RealField::sampled(g, [](double q) { return std::exp(-q * q / 3.0); });
    auto scaled = RealField::sampled(
        g, [](double q) { return 1.7e5 * std::exp(-q * q / 3.0); });
    auto r1 = compute_vqu(amp, unit_params());
    auto r2 = compute_vqu(scaled, unit_params());
    for (std::size_t j = 0; j < g.size(); ++j) {
        REQUIRE(r1.valid[j] == r2.valid[j]);
        if (r1.valid[j])
            CHECK(r2.vqu[j] == doctest::Approx(r1.vqu[j]).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("O(dx^2) convergence on Gaussian, cosine and exp(-q^4/4) inputs") {
    auto max_err = [](const Grid1D& g, auto amp_fn, auto vqu_fn) {
        auto amp = RealField::sampled(g, amp_fn);
        auto res = compute_vqu(amp, unit_params());
        double peak = 0.0;
        for (double v : amp.values()) peak = std::max(peak, std::abs(v));
        double err = 0.0;
        for (std::size_t j = 1; j + 1 < g.size(); ++j) {
            if (!res.valid[j]) continue;
            if (std::abs(amp[j]) < 0.05 * peak) continue;
            err = std::max(err, std::abs(res.vqu[j] - vqu_fn(g.x(j))));
        }
        return err;
    };

    auto gauss = [](double q) { return std::exp(-q * q / 2.0); };
    auto gauss_v = [](double q) { return -0.5 * (q * q - 1.0); };
    double e1 = max_err(Grid1D(-6.0, 6.0, 1201), gauss, gauss_v);
    double e2 = max_err(Grid1D(-6.0, 6.0, 2401), gauss, gauss_v);
    CHECK(e1 / e2 >= 3.5);

    auto cosine = [](double q) { return std::cos(2.0 * kPi * q); };
    auto cosine_v = [](double) { return 2.0 * kPi * kPi; };
    double c1 = max_err(Grid1D(0.0, 1.0, 501), cosine, cosine_v);
    double c2 = max_err(Grid1D(0.0, 1.0, 1001), cosine, cosine_v);
    CHECK(c1 / c2 >= 3.5);

    // A = exp(-q^4/4): A''/A = q^6 - 3 q^2.
    auto quartic = [](double q) { return std::exp(-q * q * q * q / 4.0); };
    auto quartic_v = [](double q) {
        return -0.5 * (std::pow(q, 6.0) - 3.0 * q * q);
    };
    double q1 = max_err(Grid1D(-3.0, 3.0, 1501), quartic, quartic_v);
    double q2 = max_err(Grid1D(-3.0, 3.0, 3001), quartic, quartic_v);
    CHECK(q1 / q2 >= 3.5);
}

TEST_CASE("force integrates back to the potential") {
    Grid1D g(-5.0, 5.0, 2001);
    auto amp = RealField::sampled(g, [](double q) { return std::exp(-q * q / 2.5); });
    auto res = compute_vqu(amp, unit_params());
    // Cumulative trapezoid of -force from the center outward.
    const auto j0 = g.nearest_index(0.0);
    double acc = res.vqu[j0];
    for (std::size_t j = j0; j < g.nearest_index(3.0); ++j) {
        REQUIRE(res.valid[j]);
        acc += 0.5 * (-res.force[j] - res.force[j + 1]) * g.dx() * (-1.0);
        CHECK(acc == doctest::Approx(res.vqu[j + 1]).epsilon(2e-4).scale(1.0));
    }
}

TEST_CASE("quantum energy examples") {
    PhysicalParams p = unit_params();

    // Flat density: zero quantum potential energy.
    Grid1D g(0.0, 1.0, 201);
    auto flat_amp = RealField(g, std::vector<double>(201, 1.0));
    auto flat_res = compute_vqu(flat_amp, p);
    auto flat_n = normalize(RealField(g, std::vector<double>(201, 1.0)));
    CHECK(quantum_energy(flat_n, flat_res) == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));

    // Oscillator ground state: integral n (1 - q^2)/2 = 1/2 - <q^2>/2 = 1/4.
    Grid1D wg(-9.0, 9.0, 18001);
    auto amp = RealField::sampled(wg, [](double q) { return std::exp(-q * q / 2.0); });
    std::vector<double> dens(wg.size());
    for (std::size_t j = 0; j < wg.size(); ++j) dens[j] = amp[j] * amp[j];
    auto n = normalize(RealField(wg, std::move(dens)));
    CHECK(quantum_energy(n, compute_vqu(amp, p)) == doctest::Approx(0.25).epsilon(1e-6));

    // cos^2 density over whole periods: the constant 2 pi^2 integrates to itself.
    Grid1D cg(0.0, 3.0, 6001);
    auto camp = RealField::sampled(cg, [](double q) { return std::cos(2.0 * kPi * q); });
    std::vector<double> cdens(cg.size());
    for (std::size_t j = 0; j < cg.size(); ++j) cdens[j] = camp[j] * camp[j];
    auto cn = normalize(RealField(cg, std::move(cdens)));
    CHECK(quantum_energy(cn, compute_vqu(camp, p)) ==
          doctest::Approx(2.0 * kPi * kPi).epsilon(1e-5));

    Grid1D other(0.0, 3.0, 121);
    CHECK_THROWS_AS(
        quantum_energy(normalize(RealField(other, std::vector<double>(121, 1.0))),
                       compute_vqu(camp, p)),
        InvalidInput);
}

TEST_CASE("Gaussian quantum force is linear with slope hbar^2/(m delta_q^4)") {
    PhysicalParams p = unit_params();
    Grid1D g(-8.0, 8.0, 16001);

    CHECK(quantum_force_linear_check({0.0, 1.0}, g, p) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(quantum_force_linear_check({0.0, 2.0}, g, p) == doctest::Approx(0.25).epsilon(1e-4));

    // Near-flat limit: slope goes to zero.
    Grid1D wide(-8.0, 8.0, 4001);
    CHECK(std::abs(quantum_force_linear_check({0.0, 900.0}, wide, p)) < 1e-5);
}

TEST_CASE("stencil needs five contiguous unmasked points") {
    Grid1D g(0.0, 1.0, 16);
    std::vector<double> v(16, 0.0);
    v[3] = 1.0;
    v[4] = 1.0;
    v[5] = 1.0;
    CHECK_THROWS_AS(compute_vqu(RealField(g, std::move(v)), unit_params()), InvalidInput);
}
