#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "core/csv.hpp"
#include "core/fields.hpp"
#include "core/numerics.hpp"

using namespace sqha;

namespace {
constexpr double kPi = std::numbers::pi;

RealField constant(const Grid1D& g, double v) {
    return RealField(g, std::vector<double>(g.size(), v));
}
} // namespace

TEST_CASE("grid invariants") {
    Grid1D g(-5.0, 5.0, 101);
    CHECK(g.dx() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g.x(0) == -5.0);
    CHECK(g.x(100) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(g.nearest_index(0.04) == 50);
    CHECK_THROWS_AS(Grid1D(1.0, -1.0, 32), InvalidInput);
    CHECK_THROWS_AS(Grid1D(0.0, 1.0, 4), InvalidInput);
}

TEST_CASE("wave_from_polar identity and half-turn phases") {
    Grid1D g(-1.0, 1.0, 33);
    const double hbar = 0.7;

    auto psi1 = wave_from_polar(constant(g, 1.0), constant(g, 0.0), hbar);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(psi1[j].real() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(psi1[j].imag() == doctest::Approx(0.0).epsilon(1e-15));
    }

    auto psi2 = wave_from_polar(constant(g, 1.0), constant(g, kPi * hbar), hbar);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(psi2[j].real() == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(std::abs(psi2[j].imag()) < 1e-14);
    }

    Grid1D wide(-5.0, 5.0, 257);
    auto gauss = RealField::sampled(wide, [](double q) { return std::exp(-q * q / 2.0); });
    auto psi3 = wave_from_polar(gauss, constant(wide, 0.0), 1.0);
    for (std::size_t j = 0; j < wide.size(); ++j) {
        CHECK(psi3[j].real() == doctest::Approx(gauss[j]).epsilon(1e-15));
        CHECK(psi3[j].imag() == 0.0);
    }
}

TEST_CASE("wave_from_polar error paths") {
    Grid1D g(-1.0, 1.0, 33);
    Grid1D other(-1.0, 1.0, 65);
    CHECK_THROWS_AS(wave_from_polar(constant(g, 1.0), constant(other, 0.0), 1.0), InvalidInput);
    CHECK_THROWS_AS(wave_from_polar(constant(g, -0.5), constant(g, 0.0), 1.0), InvalidInput);
}

TEST_CASE("polar_from_wave plane wave recovers constant momentum") {
    const double hbar = 1.0, p0 = 1.7;
    Grid1D g(-10.0, 10.0, 2001);
    auto amp = constant(g, 1.0);
    auto action = RealField::sampled(g, [&](double q) { return p0 * q; });
    auto psi = wave_from_polar(amp, action, hbar);
    auto polar = polar_from_wave(psi, hbar);
    for (std::size_t j = 0; j < g.size(); ++j) {
        REQUIRE(polar.valid[j]);
        CHECK(polar.momentum[j] == doctest::Approx(p0).epsilon(1e-4));
        CHECK(polar.amplitude[j] == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("momentum of purely real fields vanishes") {
    Grid1D g(-6.0, 6.0, 501);
    auto gauss = RealField::sampled(g, [](double q) { return std::exp(-q * q / 2.0); });
    auto polar = polar_from_wave(ComplexField::from_real(gauss), 1.0);
    for (std::size_t j = 0; j < g.size(); ++j)
        if (polar.valid[j]) CHECK(polar.momentum[j] == 0.0);

    // Signed eigenstate-like field: still exactly zero where valid.
    auto excited = RealField::sampled(g, [](double q) { return q * std::exp(-q * q / 2.0); });
    auto polar2 = polar_from_wave(ComplexField::from_real(excited), 0.5);
    for (std::size_t j = 0; j < g.size(); ++j)
        if (polar2.valid[j]) CHECK(polar2.momentum[j] == 0.0);

    CHECK_THROWS_AS(polar_from_wave(ComplexField::from_real(constant(g, 0.0)), 1.0),
                    InvalidInput);
}

TEST_CASE("polar/wave round trip: amplitude exact, momentum tracks grad S") {
    const double hbar = 0.9;
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        Grid1D g(-4.0, 4.0, 801);
        double a1 = coef(gen), a2 = coef(gen), s1 = coef(gen), s2 = coef(gen);
        auto amp = RealField::sampled(g, [&](double q) {
            return std::exp(-q * q / 6.0) * (2.0 + a1 * std::sin(q) + a2 * std::cos(2.0 * q));
        });
        auto action =
            RealField::sampled(g, [&](double q) { return s1 * std::sin(1.3 * q) + s2 * q; });
        auto psi = wave_from_polar(amp, action, hbar);
        auto polar = polar_from_wave(psi, hbar);

        auto ds = deriv1(action.values(), g.dx());
        for (std::size_t j = 1; j + 1 < g.size(); ++j) {
            if (!polar.valid[j]) continue;
            CHECK(polar.amplitude[j] == doctest::Approx(amp[j]).epsilon(1e-13));
            CHECK(polar.momentum[j] == doctest::Approx(ds[j]).epsilon(5e-4).scale(1.0));
        }
    }
}

TEST_CASE("normalize examples") {
    Grid1D unit(0.0, 1.0, 101);
    auto flat = normalize(constant(unit, 7.5));
    for (std::size_t j = 0; j < unit.size(); ++j)
        CHECK(flat[j] == doctest::Approx(1.0).epsilon(1e-13));

    Grid1D wide(-8.0, 8.0, 3201);
    auto n = normalize(
        RealField::sampled(wide, [](double q) { return 2.0 * std::exp(-q * q); }));
    for (std::size_t j = 0; j < wide.size(); ++j) {
        double expected = std::exp(-wide.x(j) * wide.x(j)) / std::sqrt(kPi);
        CHECK(n[j] == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
    }

    CHECK(integral(n) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(normalize(constant(unit, 0.0)), InvalidInput);
}

TEST_CASE("normalize is idempotent and scale invariant") {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> coef(0.1, 3.0);
    Grid1D g(-5.0, 5.0, 401);
    for (int rep = 0; rep < 25; ++rep) {
        double w = coef(gen), c = coef(gen);
        auto base = RealField::sampled(
            g, [&](double q) { return std::exp(-q * q / (2.0 * w)) + 0.01; });
        auto n1 = normalize(base);
        auto n2 = normalize(n1);
        auto n3 = normalize(RealField::sampled(
            g, [&](double q) { return c * (std::exp(-q * q / (2.0 * w)) + 0.01); }));
        for (std::size_t j = 0; j < g.size(); j += 37) {
            CHECK(n2[j] == doctest::Approx(n1[j]).epsilon(1e-12));
            CHECK(n3[j] == doctest::Approx(n1[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("density moments of a known Gaussian") {
    Grid1D g(-12.0, 12.0, 4801);
    auto n = normalize(RealField::sampled(
        g, [](double q) { return std::exp(-(q - 0.5) * (q - 0.5) / 3.0); }));
    auto m = density_moments(n);
    CHECK(m.mean == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(m.variance == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("field CSV round trip is bit exact") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "sqha_test_fields";
    fs::create_directories(dir);

    Grid1D g(-3.0, 3.0, 97);
    auto f = RealField::sampled(g, [](double q) { return std::sin(q) * std::exp(-q * q / 7.0); });
    write_real_field_csv(dir / "f.csv", f);
    auto f2 = read_real_field_csv(dir / "f.csv");
    REQUIRE(f2.size() == f.size());
    for (std::size_t j = 0; j < f.size(); ++j) CHECK(f2[j] == f[j]);

    auto psi = wave_from_polar(
        RealField::sampled(g, [](double q) { return std::exp(-q * q / 5.0); }),
        RealField::sampled(g, [](double q) { return 0.3 * q * q; }), 1.0);
    write_complex_field_csv(dir / "psi.csv", psi);
    auto psi2 = read_complex_field_csv(dir / "psi.csv");
    REQUIRE(psi2.size() == psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        CHECK(psi2[j].real() == psi[j].real());
        CHECK(psi2[j].imag() == psi[j].imag());
    }
}

TEST_CASE("boundary density check") {
    Grid1D g(-5.0, 5.0, 101);
    auto decaying = RealField::sampled(g, [](double q) { return std::exp(-q * q); });
    CHECK(!boundary_density_exceeds(decaying));
    CHECK(boundary_density_exceeds(constant(g, 1.0)));
}

TEST_CASE("node mask threshold tracks the relative density") {
    Grid1D g(-1.0, 1.0, 201);
    auto f = RealField::sampled(g, [](double q) { return q; });
    auto polar = polar_from_wave(ComplexField::from_real(f), 1.0);
    CHECK(!polar.valid[g.nearest_index(0.0)]);
    CHECK(polar.valid[g.nearest_index(0.5)]);
}
