#pragma once

#include <cstddef>
#include <span>

namespace wavecascade {

/// Threads used by the OpenMP kernels.  0 keeps the runtime default.
void set_kernel_threads(int n);
int kernel_threads();

/// Dot product summed over fixed 4096-element chunks, then over chunks in
/// order.  The result does not depend on the thread count.
double chunked_dot(std::span<const double> a, std::span<const double> b);

}  // namespace wavecascade
