#include "uqd/povm.hpp"

#include <cmath>

namespace uqd {

PovmReport validate_povm(const Povm& povm, kernels::Exec exec) {
    PovmReport report;
    report.tol = povm.tol;
    Matrix sum = Matrix::Zero(povm.dims.joint(), povm.dims.joint());
    for (const auto& el : povm.elements) {
        if (el.rows() != povm.dims.joint() || el.cols() != povm.dims.joint())
            throw DimensionError("validate_povm: element dims mismatch");
        sum += el;
    }
    const auto count = static_cast<Index>(povm.elements.size());
    std::vector<double> min_eigs(povm.elements.size(), 0.0);
    const bool par = exec == kernels::Exec::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
    for (Index i = 0; i < count; ++i) {
        const Matrix& el = povm.elements[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Matrix> solver((el + el.adjoint()) / 2.0);
        min_eigs[static_cast<std::size_t>(i)] = solver.eigenvalues().minCoeff();
    }
    double min_eig = 0.0;
    for (double v : min_eigs) min_eig = std::min(min_eig, v);
    report.max_negative_eigenvalue = min_eig;
    report.completeness_defect =
        (sum - Matrix::Identity(povm.dims.joint(), povm.dims.joint())).norm();
    report.psd_ok = min_eig >= -povm.tol;
    report.complete_ok = report.completeness_defect <= povm.tol;
    return report;
}

DiagonalizedElement diagonalize_element(const Matrix& element, BipartiteDims dims,
                                        double cutoff) {
    if (element.rows() != dims.joint())
        throw DimensionError("diagonalize_element: element does not match dims");
    const auto eig = hermitian_eig(element);
    if (eig.values.size() && eig.values[eig.values.size() - 1] < -kDefaultTol)
        throw Error("diagonalize_element: element not PSD, eigenvalue " +
                    std::to_string(eig.values[eig.values.size() - 1]));
    DiagonalizedElement out;
    for (Index j = 0; j < eig.values.size(); ++j) {
        if (eig.values[j] <= cutoff) continue;
        const Vector scaled = std::sqrt(eig.values[j]) * eig.vectors.col(j);
        out.vectors.push_back(devectorize(scaled, dims));
    }
    out.rank = static_cast<Index>(out.vectors.size());
    return out;
}

OperatorFamily induced_family(const Povm& povm, const State& ancilla, kernels::Exec exec) {
    if (ancilla.dim() != povm.dims.dim_k)
        throw DimensionError("induced_family: ancilla dim " + std::to_string(ancilla.dim()) +
                             " != dimK " + std::to_string(povm.dims.dim_k));
    const Matrix nu_t = ancilla.rho().transpose();
    std::vector<Matrix> members(povm.elements.size());
    const auto count = static_cast<Index>(povm.elements.size());
    const bool par = exec == kernels::Exec::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
    for (Index i = 0; i < count; ++i) {
        const auto diag = diagonalize_element(povm.elements[static_cast<std::size_t>(i)],
                                              povm.dims);
        Matrix xi = Matrix::Zero(povm.dims.dim_h, povm.dims.dim_h);
        for (const auto& psi : diag.vectors) xi += psi * nu_t * psi.adjoint();
        members[static_cast<std::size_t>(i)] = xi;
    }
    auto family = OperatorFamily::from(std::move(members), povm.labels);
    return family;
}

UniversalityReport is_universal(const Povm& povm, const State& ancilla, kernels::Exec exec) {
    const auto family = induced_family(povm, ancilla, exec);
    const auto span = is_spanning(family, exec);
    UniversalityReport report;
    report.universal = span.spans;
    report.rank = span.rank;
    report.min_singular = span.min_singular;
    return report;
}

double continuous_born_density(const Matrix& unitary, const State& rho, const State& ancilla) {
    const Matrix nu_t = ancilla.rho().transpose();
    const Complex tr = (unitary.adjoint() * rho.rho() * unitary * nu_t).trace();
    return static_cast<double>(rho.dim()) * tr.real();
}

std::string to_string(ProcessingKind kind) {
    switch (kind) {
        case ProcessingKind::GenericDual: return "generic-dual";
        case ProcessingKind::WeylClosedForm: return "weyl-closed-form";
        case ProcessingKind::SudXi: return "sud-xi";
        case ProcessingKind::Locc: return "locc";
    }
    return "generic-dual";
}

ProcessingKind processing_kind_from_string(const std::string& name) {
    if (name == "generic-dual") return ProcessingKind::GenericDual;
    if (name == "weyl-closed-form") return ProcessingKind::WeylClosedForm;
    if (name == "sud-xi") return ProcessingKind::SudXi;
    if (name == "locc") return ProcessingKind::Locc;
    throw Error("unknown processing kind: " + name);
}

Vector generic_dual_coefficients(const Povm& povm, const State& ancilla,
                                 const Matrix& observable, kernels::Exec exec) {
    const auto family = induced_family(povm, ancilla, exec);
    const auto dual = canonical_dual(family, exec);
    return expand(observable, family, dual);
}

UniversalDetector make_generic_detector(Povm povm, State ancilla, kernels::Exec exec) {
    const auto universality = is_universal(povm, ancilla, exec);
    if (!universality.universal)
        throw Error("make_generic_detector: POVM not universal for this ancilla, rank " +
                    std::to_string(universality.rank) + " of " +
                    std::to_string(povm.dims.dim_h * povm.dims.dim_h) + ", least singular value " +
                    std::to_string(universality.min_singular));
    const auto family = induced_family(povm, ancilla, exec);
    const auto dual = canonical_dual(family, exec);

    UniversalDetector det{.id = "",
                          .povm = std::move(povm),
                          .ancilla = std::move(ancilla),
                          .kind = ProcessingKind::GenericDual,
                          .coefficients = nullptr,
                          .coefficient_at = nullptr};
    det.coefficients = [family, dual](const Matrix& observable) {
        return expand(observable, family, dual);
    };
    return det;
}

Vector processing_coefficients(const UniversalDetector& detector, const Matrix& observable) {
    if (!detector.discrete())
        throw Error("processing_coefficients: continuous detector has no coefficient vector");
    if (detector.coefficients) return detector.coefficients(observable);
    return generic_dual_coefficients(detector.discrete_povm(), detector.ancilla, observable);
}

Complex exact_expectation(const UniversalDetector& detector, const State& rho,
                          const Matrix& observable, kernels::Exec exec) {
    if (!detector.discrete())
        throw Error("exact_expectation: only defined for discrete detectors");
    const auto& povm = detector.discrete_povm();
    if (rho.dim() != povm.dims.dim_h)
        throw DimensionError("exact_expectation: state dim mismatch");
    if (observable.rows() != povm.dims.dim_h || observable.cols() != povm.dims.dim_h)
        throw DimensionError("exact_expectation: observable dim mismatch");
    const Matrix joint = tensor_product(rho.rho(), detector.ancilla.rho());
    const auto probs = kernels::born_probabilities(povm.elements, joint, exec);
    const Vector f = processing_coefficients(detector, observable);
    Complex acc(0.0, 0.0);
    for (Index i = 0; i < f.size(); ++i) acc += f[i] * probs[static_cast<std::size_t>(i)];
    return acc;
}

}  // namespace uqd
