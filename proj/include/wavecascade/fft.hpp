#pragma once

#include <complex>
#include <vector>

#include "wavecascade/grid.hpp"

namespace wavecascade {

using Complex = std::complex<double>;

/// Half spectrum (nx x (ny/2+1)) of a real field, unnormalized forward transform.
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(const PeriodicGrid& grid) : grid_(grid), coeffs_(grid.spectral_size()) {}

    const PeriodicGrid& grid() const { return grid_; }
    Complex& at(int i, int j) { return coeffs_[static_cast<std::size_t>(i) * grid_.nyh() + j]; }
    Complex at(int i, int j) const { return coeffs_[static_cast<std::size_t>(i) * grid_.nyh() + j]; }
    Complex* data() { return coeffs_.data(); }
    const Complex* data() const { return coeffs_.data(); }
    std::size_t size() const { return coeffs_.size(); }

private:
    PeriodicGrid grid_;
    std::vector<Complex> coeffs_;
};

namespace fft {

/// Real-to-complex transform of nodal data.  Thread-safe.
void forward(const PeriodicGrid& grid, const double* in, Complex* out);
/// Complex-to-real transform including the 1/(nx ny) normalization.
/// `in` is left untouched.  Thread-safe.
void inverse(const PeriodicGrid& grid, const Complex* in, double* out);

}  // namespace fft

Spectrum forward(const ScalarField& u);
ScalarField inverse(const Spectrum& s);

}  // namespace wavecascade
