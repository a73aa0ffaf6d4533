#pragma once

#include <doctest.h>

#include "uqd/operator_core.hpp"

namespace uqd::test {

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    auto rng = seeded_rng(seed);
    return random_ginibre(rows, cols, rng);
}

inline Matrix random_hermitian(Index dim, std::uint64_t seed) {
    const Matrix g = random_matrix(dim, dim, seed);
    return ((g + g.adjoint()) / 2.0).eval();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix pauli(char which) {
    Matrix m(2, 2);
    switch (which) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

}  // namespace uqd::test
