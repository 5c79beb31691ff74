#include "wavecascade/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wavecascade/errors.hpp"

namespace wavecascade {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw InvalidInput("fields live on different grids");
}

}  // namespace

PeriodicGrid::PeriodicGrid(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
    if (!is_pow2(nx) || !is_pow2(ny) || nx < 8 || ny < 8) {
        throw InvalidInput("grid node counts must be powers of two >= 8");
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw InvalidInput("grid periods must be positive");
    }
}

ScalarField::ScalarField(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw InvalidInput("value count does not match the grid");
}

ScalarField ScalarField::from_function(const PeriodicGrid& grid,
                                       const std::function<double(double, double)>& f) {
    ScalarField u(grid);
    for (int i = 0; i < grid.nx(); ++i) {
        for (int j = 0; j < grid.ny(); ++j) u.at(i, j) = f(grid.x(i), grid.y(j));
    }
    return u;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    check_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    check_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& o) {
    check_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

ScalarField& ScalarField::operator+=(double a) {
    for (double& v : values_) v += a;
    return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& o) {
    check_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * o.values_[k];
    return *this;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

ScalarField operator/(ScalarField a, const ScalarField& b) {
    check_same_grid(a, b);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] /= b[k];
    return a;
}

ScalarField map(const ScalarField& u, const std::function<double(double)>& f) {
    ScalarField out(u.grid());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = f(u[k]);
    return out;
}

double inner(const ScalarField& u, const ScalarField& v) {
    check_same_grid(u, v);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
    return s * u.grid().cell_area();
}

double l2_norm(const ScalarField& u) { return std::sqrt(inner(u, u)); }
double linf_norm(const ScalarField& u) { return u.max_abs(); }

double integral(const ScalarField& u) {
    double s = 0.0;
    for (double v : u.values()) s += v;
    return s * u.grid().cell_area();
}

VectorField::VectorField(ScalarField ax, ScalarField ay) : x(std::move(ax)), y(std::move(ay)) {
    check_same_grid(x, y);
}

VectorField& VectorField::operator+=(const VectorField& o) {
    x += o.x;
    y += o.y;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    x -= o.x;
    y -= o.y;
    return *this;
}

VectorField& VectorField::operator*=(double a) {
    x *= a;
    y *= a;
    return *this;
}

VectorField& VectorField::axpy(double a, const VectorField& o) {
    x.axpy(a, o.x);
    y.axpy(a, o.y);
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

VectorField operator*(const ScalarField& s, VectorField a) {
    a.x *= s;
    a.y *= s;
    return a;
}

ScalarField dot(const VectorField& a, const VectorField& b) { return a.x * b.x + a.y * b.y; }

double inner(const VectorField& a, const VectorField& b) { return inner(a.x, b.x) + inner(a.y, b.y); }

double linf_norm(const VectorField& a) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.x.size(); ++k) m = std::max(m, std::hypot(a.x[k], a.y[k]));
    return m;
}

}  // namespace wavecascade
