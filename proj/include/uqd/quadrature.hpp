#pragma once

// 1-D quadrature rules used to build product grids over group parameters.

#include <vector>

#include "uqd/types.hpp"

namespace uqd {

struct Quad1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre on [a, b]; exact for polynomials up to degree 2n - 1.
Quad1D gauss_legendre(Index n, double a = -1.0, double b = 1.0);

// Midpoint rule on [a, b]; spectrally accurate for periodic integrands with
// period b - a.
Quad1D midpoint(Index n, double a, double b);

}  // namespace uqd
