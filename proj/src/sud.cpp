#include "uqd/sud.hpp"

namespace uqd {

namespace {

void check_pair(const Vector& phi, const Vector& psi, double& f_out) {
    if (phi.size() != psi.size()) throw DimensionError("sud: |phi> and |psi> dims differ");
    if (std::abs(phi.norm() - 1.0) > kDefaultTol || std::abs(psi.norm() - 1.0) > kDefaultTol)
        throw Error("sud: |phi> and |psi> must be unit vectors");
    const double fidelity = std::norm(psi.dot(phi));
    if (fidelity >= 1.0 - 1e-9)
        throw Error("sud: |<psi|phi>|^2 = " + std::to_string(fidelity) +
                    " too close to 1; states nearly parallel");
    f_out = fidelity;
}

}  // namespace

Matrix sud_xi(const Vector& phi, const Vector& psi) {
    double fidelity = 0.0;
    check_pair(phi, psi, fidelity);
    const auto d = static_cast<double>(phi.size());
    const Matrix proj_phi = phi * phi.adjoint();
    const Matrix proj_psi = psi * psi.adjoint();
    return d / (1.0 - fidelity) * ((d - fidelity) * proj_phi - (d - 1.0) * proj_psi);
}

Complex sud_processing(const Vector& phi, const Vector& psi, const Matrix& unitary,
                       const Matrix& observable) {
    double fidelity = 0.0;
    check_pair(phi, psi, fidelity);
    const auto d = static_cast<double>(phi.size());
    const Matrix rotated = unitary.adjoint() * observable * unitary;
    const Complex phi_term = phi.dot(rotated * phi);  // <phi|U^dag O U|phi>
    const Complex psi_term = psi.dot(rotated * psi);
    return d / (1.0 - fidelity) * ((d - fidelity) * phi_term - (d - 1.0) * psi_term);
}

UniversalDetector make_sud_detector(Index d, std::optional<Vector> phi_in,
                                    std::optional<Vector> psi_in) {
    if (d < 2) throw DimensionError("make_sud_detector: d must be >= 2");
    Vector phi = phi_in ? *phi_in : Vector(Vector::Unit(d, 0));
    Vector psi = psi_in ? *psi_in : Vector(Vector::Unit(d, 1));
    double fidelity = 0.0;
    check_pair(phi, psi, fidelity);

    const Matrix nu = (phi * phi.adjoint()).transpose();
    UniversalDetector det{.id = "sud:d=" + std::to_string(d),
                          .povm = ContinuousBellPovm{BellGroup::SudHaar, d, 0.0},
                          .ancilla = State(nu),
                          .kind = ProcessingKind::SudXi,
                          .processing_vectors = {phi, psi},
                          .coefficients = nullptr,
                          .coefficient_at = nullptr};
    det.coefficient_at = [phi, psi, d](const Matrix& unitary, const Matrix& observable) {
        return sud_processing(phi, psi, unitary, observable) / static_cast<double>(d);
    };
    return det;
}

}  // namespace uqd
