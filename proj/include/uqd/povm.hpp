#pragma once

// POVMs on a system-ancilla space and the universal-detector machinery:
// element diagonalization into operators Psi_j with Pi = sum_j |Psi_j>><<Psi_j|,
// the induced family Xi_i[nu] = sum_j Psi_j nu^T Psi_j^dag, the spanning-rank
// universality test, and the linear data-processing functional
// f_i(nu, O) = Tr[Theta_i^dag O].

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uqd/frames.hpp"
#include "uqd/operator_core.hpp"
#include "uqd/types.hpp"

namespace uqd {

struct Povm {
    std::vector<Matrix> elements;     // operators on H (x) K
    std::vector<std::string> labels;  // empty or aligned with elements
    BipartiteDims dims;
    double tol = kDefaultTol;

    Index size() const { return static_cast<Index>(elements.size()); }
};

struct PovmReport {
    double max_negative_eigenvalue = 0.0;  // most negative eigenvalue seen (0 if none)
    double completeness_defect = 0.0;      // ||sum Pi - I|| (Frobenius)
    double tol = kDefaultTol;
    bool psd_ok = false;
    bool complete_ok = false;

    bool pass() const { return psd_ok && complete_ok; }
};

PovmReport validate_povm(const Povm& povm, kernels::Exec exec = kernels::Exec::Parallel);

struct DiagonalizedElement {
    std::vector<Matrix> vectors;  // Psi_j with Tr[Psi_j^dag Psi_j] = lambda_j
    Index rank = 0;
};

DiagonalizedElement diagonalize_element(const Matrix& element, BipartiteDims dims,
                                        double cutoff = kEigenvalueCutoff);

OperatorFamily induced_family(const Povm& povm, const State& ancilla,
                              kernels::Exec exec = kernels::Exec::Parallel);

struct UniversalityReport {
    bool universal = false;
    Index rank = 0;
    double min_singular = 0.0;
};

UniversalityReport is_universal(const Povm& povm, const State& ancilla,
                                kernels::Exec exec = kernels::Exec::Parallel);

// Continuous Bell POVM descriptor: rank-1 projector densities
// (d / normalization) |U>><<U| over a compact group.
enum class BellGroup { SudHaar, Su2Uir };

struct ContinuousBellPovm {
    BellGroup group = BellGroup::SudHaar;
    Index dim_h = 2;
    double spin_j = 0.5;  // Su2Uir only; dim_h = 2j + 1
};

// Born density of outcome U with respect to the normalized group measure:
// p(U) = d * Tr[U^dag rho U nu^T], bounded by d.
double continuous_born_density(const Matrix& unitary, const State& rho, const State& ancilla);

enum class ProcessingKind { GenericDual, WeylClosedForm, SudXi, Locc };

std::string to_string(ProcessingKind kind);
ProcessingKind processing_kind_from_string(const std::string& name);

// A POVM (discrete or continuous), a fixed ancilla preparation, and the
// data-processing rule that turns outcome statistics into Tr[rho O] for any O.
struct UniversalDetector {
    std::string id;  // e.g. "weyl:d=3"; empty for ad-hoc detectors
    std::variant<Povm, ContinuousBellPovm> povm;
    State ancilla;
    ProcessingKind kind = ProcessingKind::GenericDual;
    // (n_psi, n_theta, n_phi) when the POVM is a group-grid discretization;
    // all zero otherwise. Lets serialization rebuild the grid instead of
    // dumping thousands of elements.
    std::array<Index, 3> grid{0, 0, 0};
    // Pure states the closed-form processing is built from (|phi>, |psi> for
    // the SU(d) xi duals); empty otherwise.
    std::vector<Vector> processing_vectors;

    // Discrete detectors: full coefficient vector f_i(nu, O).
    std::function<Vector(const Matrix& observable)> coefficients;
    // Continuous detectors: f(U, O) such that E_{U ~ p}[f] = Tr[rho O].
    std::function<Complex(const Matrix& unitary, const Matrix& observable)> coefficient_at;

    bool discrete() const { return std::holds_alternative<Povm>(povm); }
    const Povm& discrete_povm() const { return std::get<Povm>(povm); }
    const ContinuousBellPovm& continuous_povm() const {
        return std::get<ContinuousBellPovm>(povm);
    }
    Index dim_h() const {
        return discrete() ? discrete_povm().dims.dim_h : continuous_povm().dim_h;
    }
};

// Generic processing route: canonical dual of the induced family. Works for
// any universal discrete POVM; closed-form detector rules must agree with it.
Vector generic_dual_coefficients(const Povm& povm, const State& ancilla, const Matrix& observable,
                                 kernels::Exec exec = kernels::Exec::Parallel);

// Detector built from an arbitrary discrete POVM via the generic dual.
// Throws (reporting rank and least singular value) unless universal.
UniversalDetector make_generic_detector(Povm povm, State ancilla,
                                        kernels::Exec exec = kernels::Exec::Parallel);

Vector processing_coefficients(const UniversalDetector& detector, const Matrix& observable);

// sum_i f_i(nu, O) Tr[(rho (x) nu) Pi_i]; equals Tr[rho O] for a universal
// detector. Discrete detectors only.
Complex exact_expectation(const UniversalDetector& detector, const State& rho,
                          const Matrix& observable,
                          kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace uqd
