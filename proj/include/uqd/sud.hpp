#pragma once

// Continuous Bell detector over SU(d) with Haar measure, for a pure ancilla
// nu^T = |phi><phi|. The dual of Xi_U = U nu^T U^dag is Theta_U = U xi U^dag
// with xi fixed by the trace constraints Tr[xi] = d, Tr[nu^T xi^dag] = d^2.

#include <optional>

#include "uqd/povm.hpp"

namespace uqd {

// xi = d/(1-F) [ (d-F)|phi><phi| - (d-1)|psi><psi| ], F = |<psi|phi>|^2 < 1.
Matrix sud_xi(const Vector& phi, const Vector& psi);

// f = d/(1-F) [ (d-F) <phi|U^dag O U|phi> - (d-1) <psi|U^dag O U|psi> ]
//   = Tr[(U xi U^dag)^dag O].
Complex sud_processing(const Vector& phi, const Vector& psi, const Matrix& unitary,
                       const Matrix& observable);

// Detector with ancilla nu = (|phi><phi|)^T. coefficient_at returns the
// measure-normalized weight sud_processing / d, so that the mean over
// Born-sampled unitaries estimates Tr[rho O]. Defaults: phi = |0>, psi = |1>.
UniversalDetector make_sud_detector(Index d, std::optional<Vector> phi = std::nullopt,
                                    std::optional<Vector> psi = std::nullopt);

}  // namespace uqd
