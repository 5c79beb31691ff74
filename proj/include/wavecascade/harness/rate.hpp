#pragma once

#include <span>
#include <vector>

namespace wavecascade {

struct RateFit {
    double slope = 0.0;
    /// RMS of the log misfit.
    double residual = 0.0;
    /// Indices of entries dropped because the error was not positive.
    std::vector<std::size_t> excluded;
};

/// Least squares of log(error) against log(param).  Throws NoFit with fewer
/// than 3 usable points.
RateFit fit_rate(std::span<const double> params, std::span<const double> errors);

}  // namespace wavecascade
