#pragma once

#include <vector>

namespace wavecascade {

/// Legendre-Gauss-Lobatto collocation on [-1, 0].
///
/// Nodes are ordered from the surface down: z[0] = 0, z[n-1] = -1.
/// d is the dense differentiation matrix (row-major, d[i*n+j] = dl_j/dz(z_i)).
struct LglRule {
    int n = 0;
    std::vector<double> z;
    std::vector<double> w;
    std::vector<double> d;

    double diff(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
};

/// Throws InvalidInput for n < 3.
LglRule make_lgl_rule(int n);

}  // namespace wavecascade
