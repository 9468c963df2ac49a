#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace sqha {

using Complex = std::complex<double>;

constexpr double kInfiniteLength = std::numeric_limits<double>::infinity();

/// Relative density threshold below which a point counts as a node:
/// density < eps * max(density). The quantum potential and the momentum
/// field are undefined there; masked points are excluded from norms and
/// reports rather than clamped.
constexpr double kNodeEpsilonDefault = 1e-12;

/// Uniform 1D grid over [x_min, x_max] with n_points samples.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_points)
        : x_min_(x_min), x_max_(x_max), n_(n_points) {
        if (!(x_max > x_min))
            throw InvalidInput("Grid1D: x_max must exceed x_min");
        if (n_points < 8)
            throw InvalidInput("Grid1D: need at least 8 points");
        if (!std::isfinite(x_min) || !std::isfinite(x_max))
            throw InvalidInput("Grid1D: bounds must be finite");
        dx_ = (x_max - x_min) / static_cast<double>(n_points - 1);
    }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double dx() const { return dx_; }
    std::size_t size() const { return n_; }

    double x(std::size_t j) const { return x_min_ + dx_ * static_cast<double>(j); }

    std::vector<double> points() const {
        std::vector<double> p(n_);
        for (std::size_t j = 0; j < n_; ++j) p[j] = x(j);
        return p;
    }

    /// Index of the grid point closest to q.
    std::size_t nearest_index(double q) const {
        double t = (q - x_min_) / dx_;
        if (t <= 0.0) return 0;
        auto j = static_cast<std::size_t>(t + 0.5);
        return j >= n_ ? n_ - 1 : j;
    }

    bool contains(double q) const { return q >= x_min_ && q <= x_max_; }

    bool operator==(const Grid1D& o) const {
        return x_min_ == o.x_min_ && x_max_ == o.x_max_ && n_ == o.n_;
    }
    bool operator!=(const Grid1D& o) const { return !(*this == o); }

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double dx_;
};

/// Real samples on a grid. Values are immutable after construction.
class RealField {
public:
    RealField(Grid1D grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw InvalidInput("RealField: values.size() != grid.n_points");
        for (double v : values_)
            if (!std::isfinite(v)) throw InvalidInput("RealField: non-finite sample");
    }

    template <typename F>
    static RealField sampled(const Grid1D& grid, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) v[j] = f(grid.x(j));
        return RealField(grid, std::move(v));
    }

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    std::size_t size() const { return values_.size(); }

private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Complex samples on a grid.
class ComplexField {
public:
    ComplexField(Grid1D grid, std::vector<Complex> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw InvalidInput("ComplexField: values.size() != grid.n_points");
        for (const Complex& v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InvalidInput("ComplexField: non-finite sample");
    }

    /// Embed a real field (possibly signed, e.g. an excited-state amplitude)
    /// as a complex wave with zero phase.
    static ComplexField from_real(const RealField& f) {
        std::vector<Complex> v(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) v[j] = Complex(f[j], 0.0);
        return ComplexField(f.grid(), std::move(v));
    }

    const Grid1D& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }
    const Complex& operator[](std::size_t j) const { return values_[j]; }
    std::size_t size() const { return values_.size(); }

    RealField abs() const {
        std::vector<double> v(values_.size());
        for (std::size_t j = 0; j < values_.size(); ++j) v[j] = std::abs(values_[j]);
        return RealField(grid_, std::move(v));
    }

    RealField density() const {
        std::vector<double> v(values_.size());
        for (std::size_t j = 0; j < values_.size(); ++j) v[j] = std::norm(values_[j]);
        return RealField(grid_, std::move(v));
    }

private:
    Grid1D grid_;
    std::vector<Complex> values_;
};

/// External potential: either a named analytic form or a tabulated field.
struct Potential {
    enum class Kind { free, harmonic, tabulated };

    Kind kind = Kind::free;
    double omega = 1.0;   // harmonic
    double center = 0.0;  // harmonic
    std::optional<RealField> table;

    static Potential free_particle() { return Potential{}; }
    static Potential harmonic(double omega, double center = 0.0) {
        Potential p;
        p.kind = Kind::harmonic;
        p.omega = omega;
        p.center = center;
        return p;
    }
    static Potential tabulated(RealField f) {
        Potential p;
        p.kind = Kind::tabulated;
        p.table = std::move(f);
        return p;
    }
};

/// Physical constants and the external potential.
struct PhysicalParams {
    double mass = 1.0;
    double hbar = 1.0;
    double boltzmann = 1.0;
    double temperature = 0.0;
    double light_speed = 299792458.0;
    Potential potential;

    void validate() const {
        if (!(mass > 0.0)) throw InvalidInput("PhysicalParams: mass must be > 0");
        if (!(hbar > 0.0)) throw InvalidInput("PhysicalParams: hbar must be > 0");
        if (!(boltzmann > 0.0)) throw InvalidInput("PhysicalParams: boltzmann must be > 0");
        if (temperature < 0.0) throw InvalidInput("PhysicalParams: temperature must be >= 0");
        if (!(light_speed > 0.0)) throw InvalidInput("PhysicalParams: light_speed must be > 0");
    }

    /// Potential energy evaluated at a grid point index (for tabulated
    /// potentials the table grid must match the evaluation grid).
    double potential_at(const Grid1D& grid, std::size_t j) const {
        switch (potential.kind) {
            case Potential::Kind::free:
                return 0.0;
            case Potential::Kind::harmonic: {
                double d = grid.x(j) - potential.center;
                return 0.5 * mass * potential.omega * potential.omega * d * d;
            }
            case Potential::Kind::tabulated:
                if (!potential.table || potential.table->grid() != grid)
                    throw InvalidInput("Potential: tabulated grid mismatch");
                return (*potential.table)[j];
        }
        return 0.0;
    }

    double potential_value(double q) const {
        switch (potential.kind) {
            case Potential::Kind::free:
                return 0.0;
            case Potential::Kind::harmonic: {
                double d = q - potential.center;
                return 0.5 * mass * potential.omega * potential.omega * d * d;
            }
            case Potential::Kind::tabulated: {
                const RealField& t = *potential.table;
                const Grid1D& g = t.grid();
                if (!g.contains(q)) return 0.0;
                std::size_t j = g.nearest_index(q);
                if (j + 1 >= g.size()) return t[g.size() - 1];
                double x0 = g.x(j);
                if (q < x0 && j > 0) { --j; x0 = g.x(j); }
                double w = (q - x0) / g.dx();
                return t[j] * (1.0 - w) + t[j + 1] * w;
            }
        }
        return 0.0;
    }
};

inline void require_same_grid(const Grid1D& a, const Grid1D& b, const char* who) {
    if (a != b) throw InvalidInput(std::string(who) + ": grid mismatch");
}

} // namespace sqha
