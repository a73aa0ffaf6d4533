#include "uqd/locc.hpp"

#include <memory>

#include "uqd/weyl.hpp"

namespace uqd {

Povm LoccPovm::to_povm() const {
    Povm povm;
    povm.dims = {dim_h, ancilla_dim};
    for (Index l = 0; l < ancilla_dim; ++l) {
        Matrix marker = Matrix::Zero(ancilla_dim, ancilla_dim);
        marker(l, l) = Complex(1.0, 0.0);
        for (Index k = 0; k < dim_h; ++k) {
            const Vector ev = eigenvectors[static_cast<std::size_t>(l)].col(k);
            povm.elements.push_back(tensor_product(ev * ev.adjoint(), marker));
            povm.labels.push_back(std::to_string(k) + "," + std::to_string(l));
        }
    }
    return povm;
}

LoccPovm locc_povm(Index d) {
    if (d < 2) throw DimensionError("locc_povm: d must be >= 2");
    LoccPovm out;
    out.dim_h = d;
    out.ancilla_dim = d * d;
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n) out.base.push_back(weyl_unitary(d, m, n));
    for (const auto& c : out.base) {
        const auto eig = normal_eig(c);
        out.eigenvalues.push_back(eig.values);
        out.eigenvectors.push_back(eig.vectors);
    }
    out.base_dual = canonical_dual(OperatorFamily::from(out.base));
    return out;
}

Vector locc_processing(const LoccPovm& povm, const State& ancilla, const Matrix& observable,
                       double diagonal_guard) {
    if (ancilla.dim() != povm.ancilla_dim)
        throw DimensionError("locc_processing: ancilla dim != L");
    if (observable.rows() != povm.dim_h || observable.cols() != povm.dim_h)
        throw DimensionError("locc_processing: observable dim mismatch");
    Vector f(povm.ancilla_dim * povm.dim_h);
    for (Index l = 0; l < povm.ancilla_dim; ++l) {
        const double diag = ancilla.rho()(l, l).real();
        if (diag <= diagonal_guard)
            throw Error("locc_processing: <l|nu|l> vanishes at l=" + std::to_string(l));
        const Complex theta_overlap =
            (povm.base_dual.members[static_cast<std::size_t>(l)].adjoint() * observable).trace();
        for (Index k = 0; k < povm.dim_h; ++k)
            f[l * povm.dim_h + k] =
                theta_overlap * povm.eigenvalues[static_cast<std::size_t>(l)][k] / diag;
    }
    return f;
}

UniversalDetector make_locc_detector(Index d, std::optional<State> ancilla) {
    auto locc = locc_povm(d);
    const Index big_l = locc.ancilla_dim;
    State nu = ancilla ? *ancilla
                       : State(Matrix::Identity(big_l, big_l) / static_cast<double>(big_l));
    UniversalDetector det{.id = "locc:d=" + std::to_string(d),
                          .povm = locc.to_povm(),
                          .ancilla = nu,
                          .kind = ProcessingKind::Locc,
                          .coefficients = nullptr,
                          .coefficient_at = nullptr};
    auto shared = std::make_shared<LoccPovm>(std::move(locc));
    det.coefficients = [shared, nu](const Matrix& observable) {
        return locc_processing(*shared, nu, observable);
    };
    return det;
}

}  // namespace uqd
