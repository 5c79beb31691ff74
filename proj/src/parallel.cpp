#include "wavecascade/parallel.hpp"

#include <omp.h>

#include <vector>

namespace wavecascade {

namespace {
constexpr std::size_t kChunk = 4096;
}

void set_kernel_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

int kernel_threads() { return omp_get_max_threads(); }

double chunked_dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += a[k] * b[k];
        partial[c] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

}  // namespace wavecascade
