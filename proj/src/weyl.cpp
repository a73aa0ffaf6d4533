#include "uqd/weyl.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace uqd {

namespace {

Complex phase(double angle) { return Complex(std::cos(angle), std::sin(angle)); }

constexpr double tau = 2.0 * std::numbers::pi;

}  // namespace

Matrix weyl_unitary(Index d, Index m, Index n) {
    if (d < 1) throw DimensionError("weyl_unitary: d must be >= 1");
    if (m < 0 || m >= d || n < 0 || n >= d)
        throw Error("weyl_unitary: indices (" + std::to_string(m) + "," + std::to_string(n) +
                    ") out of range for d=" + std::to_string(d));
    Matrix u = Matrix::Zero(d, d);
    for (Index k = 0; k < d; ++k)
        u(k, (k + n) % d) = phase(tau * static_cast<double>(k * m) / static_cast<double>(d));
    return u;
}

double weyl_cocycle(Index d, Index m, Index n, Index mp, Index np) {
    return tau * static_cast<double>(n * mp - m * np) / static_cast<double>(d);
}

Povm weyl_bell_povm(Index d) {
    if (d < 2) throw DimensionError("weyl_bell_povm: d must be >= 2");
    Povm povm;
    povm.dims = {d, d};
    povm.elements.reserve(static_cast<std::size_t>(d * d));
    povm.labels.reserve(static_cast<std::size_t>(d * d));
    for (Index m = 0; m < d; ++m) {
        for (Index n = 0; n < d; ++n) {
            const Vector u = vectorize(weyl_unitary(d, m, n)).amps;
            povm.elements.push_back((u * u.adjoint()) / static_cast<double>(d));
            povm.labels.push_back(std::to_string(m) + "," + std::to_string(n));
        }
    }
    return povm;
}

namespace {

double min_weyl_overlap(Index d, const Matrix& nu) {
    const Matrix nu_t = nu.transpose();
    double min_abs = std::numeric_limits<double>::infinity();
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n)
            min_abs = std::min(min_abs,
                               std::abs((weyl_unitary(d, m, n).adjoint() * nu_t).trace()));
    return min_abs;
}

std::optional<State> try_state(const Matrix& candidate) {
    try {
        return State(candidate);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

State weyl_ancilla(Index d, double min_overlap) {
    if (d < 2) throw DimensionError("weyl_ancilla: d must be >= 2");
    // Suggested form: identity plus the uniform sum of the other unitaries.
    Matrix suggested = Matrix::Identity(d, d) / static_cast<double>(d);
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n) {
            if (m == 0 && n == 0) continue;
            suggested += weyl_unitary(d, m, n) / static_cast<double>(d * (d * d - 1));
        }
    if (auto state = try_state(suggested); state && min_weyl_overlap(d, state->rho()) > min_overlap)
        return *state;

    // Deterministic generic fallback: ramped amplitudes with quadratic phases
    // in radians. Phases commensurate with 2 pi / d would zero shift-type
    // overlaps at even d; these do not, and the scan below certifies it.
    Vector chi(d);
    for (Index k = 0; k < d; ++k)
        chi[k] = static_cast<double>(k + 1) * phase(static_cast<double>(k * k));
    chi /= chi.norm();
    constexpr double eps = 0.1;
    const Matrix fallback =
        (1.0 - eps) * (chi * chi.adjoint()) + eps * Matrix::Identity(d, d) / static_cast<double>(d);
    auto state = try_state(fallback);
    if (state && min_weyl_overlap(d, state->rho()) > min_overlap) return *state;
    throw Error("weyl_ancilla: no valid ancilla found for d=" + std::to_string(d) +
                "; supply one explicitly");
}

Vector weyl_processing(Index d, const State& ancilla, const Matrix& observable,
                       double denominator_guard) {
    if (ancilla.dim() != d) throw DimensionError("weyl_processing: ancilla dim != d");
    if (observable.rows() != d || observable.cols() != d)
        throw DimensionError("weyl_processing: observable dim != d");
    const Matrix nu_t = ancilla.rho().transpose();

    // Per-(p,q) data: Tr[U^dag O] / Tr[U^dag nu^T]
    Matrix ratio(d, d);
    for (Index p = 0; p < d; ++p) {
        for (Index q = 0; q < d; ++q) {
            const Matrix u_dag = weyl_unitary(d, p, q).adjoint();
            const Complex denom = (u_dag * nu_t).trace();
            if (std::abs(denom) < denominator_guard)
                throw Error("weyl_processing: Tr[U^dag nu^T] vanishes at (p,q)=(" +
                            std::to_string(p) + "," + std::to_string(q) + "), |.|=" +
                            std::to_string(std::abs(denom)));
            ratio(p, q) = (u_dag * observable).trace() / denom;
        }
    }

    Vector f(d * d);
    for (Index m = 0; m < d; ++m) {
        for (Index n = 0; n < d; ++n) {
            Complex acc(0.0, 0.0);
            for (Index p = 0; p < d; ++p)
                for (Index q = 0; q < d; ++q)
                    acc += ratio(p, q) *
                           phase(tau * static_cast<double>(m * q - n * p) /
                                 static_cast<double>(d));
            f[m * d + n] = acc / static_cast<double>(d);
        }
    }
    return f;
}

UniversalDetector make_weyl_detector(Index d, std::optional<State> ancilla) {
    State nu = ancilla ? *ancilla : weyl_ancilla(d);
    UniversalDetector det{.id = "weyl:d=" + std::to_string(d),
                          .povm = weyl_bell_povm(d),
                          .ancilla = nu,
                          .kind = ProcessingKind::WeylClosedForm,
                          .coefficients = nullptr,
                          .coefficient_at = nullptr};
    det.coefficients = [d, nu](const Matrix& observable) {
        return weyl_processing(d, nu, observable);
    };
    return det;
}

}  // namespace uqd
