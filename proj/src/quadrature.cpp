#include "uqd/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace uqd {

Quad1D gauss_legendre(Index n, double a, double b) {
    if (n < 1) throw Error("gauss_legendre: n must be >= 1");
    Quad1D q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on P_n from the Chebyshev-based initial guess.
    for (Index i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (Index k = 2; k <= n; ++k) {
                const double pk = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 -
                                   (static_cast<double>(k) - 1.0) * p0) /
                                  static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            const double pn = (n == 1) ? x : p1;
            const double pn1 = (n == 1) ? 1.0 : p0;
            dp = static_cast<double>(n) * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.nodes[static_cast<std::size_t>(i)] = 0.5 * (b - a) * x + 0.5 * (a + b);
        q.weights[static_cast<std::size_t>(i)] = 0.5 * (b - a) * w;
    }
    return q;
}

Quad1D midpoint(Index n, double a, double b) {
    if (n < 1) throw Error("midpoint: n must be >= 1");
    Quad1D q;
    const double h = (b - a) / static_cast<double>(n);
    for (Index i = 0; i < n; ++i) {
        q.nodes.push_back(a + (static_cast<double>(i) + 0.5) * h);
        q.weights.push_back(h);
    }
    return q;
}

}  // namespace uqd
