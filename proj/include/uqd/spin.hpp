#pragma once

// SU(2) machinery: angular momentum operators for any spin j, spin coherent
// states, the continuous Bell POVM over the group, its exact product-grid
// discretization, and the grid-based numeric data processing.

#include <array>
#include <optional>

#include "uqd/povm.hpp"
#include "uqd/quadrature.hpp"

namespace uqd {

// Angular momentum algebra on dimension 2j + 1, basis |m> with m = j .. -j
// (descending). Satisfies [J_x, J_y] = i J_z and J_pm = J_x +- i J_y.
struct SpinSystem {
    double j;
    Index dim;
    Matrix jx, jy, jz, jplus, jminus;

    explicit SpinSystem(double j);

    // Basis index of the J_z eigenstate |m>.
    Index index_of(double m) const;
};

// D(psi, phi) = exp(i (psi/2) (J_+ e^{-i phi} + J_- e^{i phi})); psi is the
// tilt angle away from the z-axis, phi selects the equatorial rotation axis.
Matrix spin_rotation(const SpinSystem& sys, double psi, double phi);

// D(psi, phi)|m>, unit norm.
Vector spin_coherent(const SpinSystem& sys, double psi, double phi, double m);

// U(psi, n) = exp(i psi n . J) for a unit axis n.
Matrix su2_unitary(const SpinSystem& sys, double psi, const std::array<double, 3>& axis);

// Bell projector |U(psi,n)>><<U(psi,n)|; rank 1, trace 2j + 1.
Matrix su2_bell_element(const SpinSystem& sys, double psi, const std::array<double, 3>& axis);

// U(psi, n) = D(psi', phi') exp(2 i theta' J_z), parameters computed in the
// fundamental representation and valid in every UIR. Branches: psi' in
// [0, pi], phi', theta' in [0, 2 pi), with phi' = 0 when psi' = 0.
struct Su2Factorization {
    double psi_p;
    double phi_p;
    double theta_p;
};

Su2Factorization su2_factorize(double psi, const std::array<double, 3>& axis);

// Product grid over the group: midpoint in psi and phi (periodic), Gauss-
// Legendre in cos(theta). The weights include the full Bell measure
// (2j+1)/(4 pi^2) sin^2(psi/2) d psi d n, so the weighted projectors resolve
// the identity to quadrature accuracy (exact at these sizes for j <= 3/2).
struct GridSpec {
    Index n_psi = 40;
    Index n_theta = 20;
    Index n_phi = 20;

    Index nodes() const { return n_psi * n_theta * n_phi; }
};

struct Su2GridNode {
    double psi;
    std::array<double, 3> axis;
    double weight;
};

std::vector<Su2GridNode> su2_grid(GridSpec spec, double j);

std::vector<Matrix> su2_grid_unitaries(const SpinSystem& sys,
                                       const std::vector<Su2GridNode>& grid,
                                       kernels::Exec exec = kernels::Exec::Parallel);

// Discrete POVM with elements weight * |U>><<U| per grid node.
Povm su2_grid_povm(const SpinSystem& sys, GridSpec spec,
                   kernels::Exec exec = kernels::Exec::Parallel);

// Grid-node processing coefficients for a diagonal positive ancilla: the
// family {w(x) U(x) nu^T U(x)^dag} is fed through the canonical dual and
// f(x) = Tr[Theta(x)^dag O], so that
// sum_x f(x) w(x) Tr[rho U(x) nu^T U(x)^dag] = Tr[rho O].
Vector su2_numeric_processing(const SpinSystem& sys, const State& ancilla, GridSpec spec,
                              const Matrix& observable,
                              kernels::Exec exec = kernels::Exec::Parallel);

// Strictly positive, non-degenerate diagonal ancilla (linear ramp).
State su2_default_ancilla(Index dim);

UniversalDetector make_su2_detector(double j, GridSpec spec = {},
                                    std::optional<State> ancilla = std::nullopt,
                                    kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace uqd
