#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace uqd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default tolerance for validity checks (Hermiticity, positivity, POVM
// completeness). Overridable per call; chosen for dims up to a few dozen
// in double precision.
inline constexpr double kDefaultTol = 1e-9;

// Relative singular-value threshold for rank decisions: sigma_max * dim * 1e-12.
inline constexpr double kRankRelTol = 1e-12;

// Eigenvalues below this cutoff are dropped when diagonalizing POVM elements.
inline constexpr double kEigenvalueCutoff = 1e-12;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// Malformed user input (config documents, id strings, spec strings), as
// opposed to a failed numerical check.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace uqd
