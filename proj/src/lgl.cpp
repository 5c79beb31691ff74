#include "wavecascade/lgl.hpp"

#include <cmath>
#include <numbers>

#include "wavecascade/errors.hpp"

namespace wavecascade {

namespace {

// P_N and P_{N-1} at x by the three-term recurrence.
void legendre(int deg, double x, double& pn, double& pn1) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= deg; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    pn = p1;
    pn1 = p0;
}

}  // namespace

LglRule make_lgl_rule(int n) {
    if (n < 3) throw InvalidInput("LGL rule needs at least 3 nodes");
    const int deg = n - 1;
    std::vector<double> t(n), pn(n);
    for (int k = 0; k < n; ++k) {
        double x = std::cos(std::numbers::pi * k / deg);
        if (k > 0 && k < deg) {
            for (int it = 0; it < 100; ++it) {
                double p, q;
                legendre(deg, x, p, q);
                const double dx = (x * p - q) / (deg * p);
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
        }
        t[k] = x;
        double q;
        legendre(deg, x, pn[k], q);
    }

    LglRule r;
    r.n = n;
    r.z.resize(n);
    r.w.resize(n);
    r.d.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        r.z[k] = 0.5 * (t[k] - 1.0);
        r.w[k] = 0.5 * 2.0 / (deg * (deg + 1.0) * pn[k] * pn[k]);
    }
    // Off-diagonal from the Lobatto closed form, diagonal by negative row sum;
    // the factor 2 maps d/dt onto d/dz.
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double v = 2.0 * pn[i] / (pn[j] * (t[i] - t[j]));
            r.d[static_cast<std::size_t>(i) * n + j] = v;
            row += v;
        }
        r.d[static_cast<std::size_t>(i) * n + i] = -row;
    }
    return r;
}

}  // namespace wavecascade
