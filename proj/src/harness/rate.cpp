#include "wavecascade/harness/rate.hpp"

#include <cmath>

#include "wavecascade/errors.hpp"

namespace wavecascade {

RateFit fit_rate(std::span<const double> params, std::span<const double> errors) {
    if (params.size() != errors.size()) throw InvalidInput("fit_rate: size mismatch");
    RateFit fit;
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < params.size(); ++k) {
        if (!(errors[k] > 0.0) || !std::isfinite(errors[k]) || !(params[k] > 0.0)) {
            fit.excluded.push_back(k);
            continue;
        }
        lx.push_back(std::log(params[k]));
        ly.push_back(std::log(errors[k]));
    }
    const std::size_t n = lx.size();
    if (n < 3) throw NoFit("fit_rate needs at least 3 positive points");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
    }
    if (sxx == 0.0) throw NoFit("fit_rate: all parameters coincide");
    fit.slope = sxy / sxx;
    const double icpt = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = ly[k] - (icpt + fit.slope * lx[k]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace wavecascade
