#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace wavecascade {

/// Uniform doubly periodic grid on [0, lx) x [0, ly).
///
/// Node (i, j) sits at (i*lx/nx, j*ly/ny) and is stored at index i*ny + j.
/// The half spectrum produced by real transforms has nx x (ny/2+1) modes.
class PeriodicGrid {
public:
    PeriodicGrid() = default;
    /// Throws InvalidInput unless nx, ny are powers of two >= 8 and lx, ly > 0.
    PeriodicGrid(int nx, int ny, double lx, double ly);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double lx() const { return lx_; }
    double ly() const { return ly_; }
    std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
    int nyh() const { return ny_ / 2 + 1; }
    std::size_t spectral_size() const { return static_cast<std::size_t>(nx_) * nyh(); }
    double dx() const { return lx_ / nx_; }
    double dy() const { return ly_ / ny_; }
    /// Quadrature weight of one node.
    double cell_area() const { return lx_ * ly_ / static_cast<double>(size()); }

    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }

    /// Signed integer mode index along x for row i of the spectrum.
    int mode_x(int i) const { return i <= nx_ / 2 ? i : i - nx_; }
    /// Physical wavenumbers (2 pi / L times the mode index).
    double kx(int i) const { return 2.0 * std::numbers::pi / lx_ * mode_x(i); }
    double ky(int j) const { return 2.0 * std::numbers::pi / ly_ * j; }
    bool nyquist_x(int i) const { return i == nx_ / 2; }
    bool nyquist_y(int j) const { return j == ny_ / 2; }
    /// Wavenumbers used by first-order derivatives: Nyquist set to zero.
    double kx_derivative(int i) const { return nyquist_x(i) ? 0.0 : kx(i); }
    double ky_derivative(int j) const { return nyquist_y(j) ? 0.0 : ky(j); }
    /// Multiplicity of half-spectrum column j in the full spectrum (1 or 2).
    double column_weight(int j) const { return (j == 0 || nyquist_y(j)) ? 1.0 : 2.0; }

    bool operator==(const PeriodicGrid&) const = default;

private:
    int nx_ = 8;
    int ny_ = 8;
    double lx_ = 2.0 * std::numbers::pi;
    double ly_ = 2.0 * std::numbers::pi;
};

/// Real nodal values on a PeriodicGrid.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const PeriodicGrid& grid, double value = 0.0)
        : grid_(grid), values_(grid.size(), value) {}
    ScalarField(const PeriodicGrid& grid, std::vector<double> values);

    /// Samples f(x, y) at the nodes.
    static ScalarField from_function(const PeriodicGrid& grid,
                                     const std::function<double(double, double)>& f);

    const PeriodicGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.ny() + j]; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.ny() + j]; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(const ScalarField& o);
    ScalarField& operator*=(double a);
    ScalarField& operator+=(double a);
    /// this += a * o
    ScalarField& axpy(double a, const ScalarField& o);

    double min() const;
    double max() const;
    double max_abs() const;
    double mean() const;
    bool all_finite() const;

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);
ScalarField operator-(ScalarField a);
ScalarField operator/(ScalarField a, const ScalarField& b);

/// Pointwise map.
ScalarField map(const ScalarField& u, const std::function<double(double)>& f);

/// Grid inner product sum(u v) * cell_area.
double inner(const ScalarField& u, const ScalarField& v);
double l2_norm(const ScalarField& u);
double linf_norm(const ScalarField& u);
/// Integral of u over the periodic cell.
double integral(const ScalarField& u);

/// Two-component field sharing one grid.
struct VectorField {
    ScalarField x;
    ScalarField y;

    VectorField() = default;
    explicit VectorField(const PeriodicGrid& grid) : x(grid), y(grid) {}
    VectorField(ScalarField ax, ScalarField ay);

    const PeriodicGrid& grid() const { return x.grid(); }
    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double a);
    VectorField& axpy(double a, const VectorField& o);
    bool all_finite() const { return x.all_finite() && y.all_finite(); }
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);
/// Scalar times vector, pointwise.
VectorField operator*(const ScalarField& s, VectorField a);
ScalarField dot(const VectorField& a, const VectorField& b);
double inner(const VectorField& a, const VectorField& b);
/// max over nodes of the Euclidean length.
double linf_norm(const VectorField& a);

}  // namespace wavecascade
