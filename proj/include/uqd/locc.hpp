#pragma once

// Separable universal POVM realized by local measurements and classical
// communication: an ancilla basis {|l>} selects which normal spanning-set
// member C(l) is measured on the system.

#include <optional>

#include "uqd/povm.hpp"

namespace uqd {

struct LoccPovm {
    std::vector<Matrix> base;          // C(l), all normal, spanning
    std::vector<Vector> eigenvalues;   // c_k(l)
    std::vector<Matrix> eigenvectors;  // columns |c_k(l)>
    DualFamily base_dual;              // Theta(l), canonical dual of {C(l)}
    Index dim_h = 0;
    Index ancilla_dim = 0;             // L >= dim_h^2

    // Joint POVM Pi_{k,l} = |c_k(l)><c_k(l)| (x) |l><l| on H (x) K,
    // linearized as l * dim_h + k with labels "k,l".
    Povm to_povm() const;
};

// Base family C(l) = U_{m,n} (Weyl unitaries are normal), L = d^2.
LoccPovm locc_povm(Index d);

// f_{k,l} = Tr[Theta(l)^dag O] c_k(l) / <l|nu|l>, ordered as to_povm().
// Requires <l|nu|l> > guard for every l; throws naming the offending l.
Vector locc_processing(const LoccPovm& povm, const State& ancilla, const Matrix& observable,
                       double diagonal_guard = 1e-9);

// Default ancilla is the maximally mixed state I/L on K.
UniversalDetector make_locc_detector(Index d, std::optional<State> ancilla = std::nullopt);

}  // namespace uqd
