#include "wavecascade/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace wavecascade {

namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, p] : plans_) {
            fftw_destroy_plan(p.r2c);
            fftw_destroy_plan(p.c2r);
        }
    }

    PlanPair get(int nx, int ny) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find({nx, ny});
        if (it != plans_.end()) return it->second;
        const std::size_t n_real = static_cast<std::size_t>(nx) * ny;
        const std::size_t n_cplx = static_cast<std::size_t>(nx) * (ny / 2 + 1);
        double* r = fftw_alloc_real(n_real);
        fftw_complex* c = fftw_alloc_complex(n_cplx);
        // FFTW_ESTIMATE keeps plan selection (and therefore results) reproducible.
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        PlanPair p;
        p.r2c = fftw_plan_dft_r2c_2d(nx, ny, r, c, flags);
        p.c2r = fftw_plan_dft_c2r_2d(nx, ny, c, r, flags);
        fftw_free(r);
        fftw_free(c);
        plans_.emplace(std::make_pair(nx, ny), p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

namespace fft {

void forward(const PeriodicGrid& grid, const double* in, Complex* out) {
    const PlanPair p = cache().get(grid.nx(), grid.ny());
    fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void inverse(const PeriodicGrid& grid, const Complex* in, double* out) {
    const PlanPair p = cache().get(grid.nx(), grid.ny());
    thread_local std::vector<Complex> scratch;
    scratch.assign(in, in + grid.spectral_size());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] *= scale;
}

}  // namespace fft

Spectrum forward(const ScalarField& u) {
    Spectrum s(u.grid());
    fft::forward(u.grid(), u.data(), s.data());
    return s;
}

ScalarField inverse(const Spectrum& s) {
    ScalarField u(s.grid());
    fft::inverse(s.grid(), s.data(), u.data());
    return u;
}

}  // namespace wavecascade
