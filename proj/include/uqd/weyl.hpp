#pragma once

// Weyl-Heisenberg group on a d-level system, the d^2-outcome Bell POVM it
// generates, a validated ancilla choice, and the closed-form data processing.

#include <optional>

#include "uqd/povm.hpp"

namespace uqd {

// U_{m,n} = sum_k exp(2 pi i k m / d) |k><k (+) n|, 0 <= m, n < d.
Matrix weyl_unitary(Index d, Index m, Index n);

// Cocycle phase c((m,n), (m',n')) in U_a U_b U_a^dag = exp(i c) U_b.
double weyl_cocycle(Index d, Index m, Index n, Index mp, Index np);

// Orthogonal Bell POVM with d^2 elements (1/d)|U_{m,n}>><<U_{m,n}|,
// linearized as m*d + n with labels "m,n".
Povm weyl_bell_povm(Index d);

// Ancilla with Tr[U_{m,n}^dag nu^T] bounded away from zero for every (m,n).
// Tries nu = I/d + sum_{a>0} U_a / (d (d^2-1)) first; that sum is not
// Hermitian for small d, in which case a fixed generic state
// (1-eps)|chi><chi| + eps I/d is substituted and re-validated.
State weyl_ancilla(Index d, double min_overlap = 1e-6);

// f_{m,n}(nu, O) = (1/d) sum_{p,q} Tr[U_{p,q}^dag O]
//                  * exp(2 pi i (m q - n p) / d) / Tr[U_{p,q}^dag nu^T].
// Throws, naming (p, q), if a denominator falls below the guard.
Vector weyl_processing(Index d, const State& ancilla, const Matrix& observable,
                       double denominator_guard = 1e-6);

UniversalDetector make_weyl_detector(Index d, std::optional<State> ancilla = std::nullopt);

}  // namespace uqd
