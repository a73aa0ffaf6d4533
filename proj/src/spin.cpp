#include "uqd/spin.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace uqd {

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, tau);
    return a < 0.0 ? a + tau : a;
}

Matrix hermitian_exp(const Matrix& h, double scale) {
    // exp(i * scale * h) for Hermitian h
    const auto eig = hermitian_eig(h, 1e-8 * std::max(1.0, h.norm()));
    Vector phases(eig.values.size());
    for (Index k = 0; k < eig.values.size(); ++k) {
        const double a = scale * eig.values[k];
        phases[k] = Complex(std::cos(a), std::sin(a));
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

SpinSystem::SpinSystem(double j_in) : j(j_in) {
    const double two_j = 2.0 * j;
    if (j < 0.0 || std::abs(two_j - std::round(two_j)) > 1e-12)
        throw Error("SpinSystem: j must be a nonnegative half-integer");
    dim = static_cast<Index>(std::llround(two_j)) + 1;
    jz = Matrix::Zero(dim, dim);
    jplus = Matrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        const double m = j - static_cast<double>(i);
        jz(i, i) = m;
        if (i > 0) jplus(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    jminus = jplus.adjoint();
    jx = (jplus + jminus) / 2.0;
    jy = (jplus - jminus) / Complex(0.0, 2.0);
}

Index SpinSystem::index_of(double m) const {
    const double idx = j - m;
    if (idx < -1e-9 || idx > static_cast<double>(dim - 1) + 1e-9 ||
        std::abs(idx - std::round(idx)) > 1e-9)
        throw Error("SpinSystem: invalid magnetic quantum number m=" + std::to_string(m) +
                    " for j=" + std::to_string(j));
    return static_cast<Index>(std::llround(idx));
}

Matrix spin_rotation(const SpinSystem& sys, double psi, double phi) {
    const Complex e_m(std::cos(phi), -std::sin(phi));
    const Matrix gen = (sys.jplus * e_m + sys.jminus * std::conj(e_m)) / 2.0;
    return hermitian_exp(gen, psi);
}

Vector spin_coherent(const SpinSystem& sys, double psi, double phi, double m) {
    const Index i = sys.index_of(m);
    Vector basis = Vector::Zero(sys.dim);
    basis[i] = Complex(1.0, 0.0);
    return spin_rotation(sys, psi, phi) * basis;
}

Matrix su2_unitary(const SpinSystem& sys, double psi, const std::array<double, 3>& axis) {
    const double norm =
        std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw Error("su2_unitary: axis has norm " + std::to_string(norm) + ", expected 1");
    const Matrix gen = axis[0] * sys.jx + axis[1] * sys.jy + axis[2] * sys.jz;
    return hermitian_exp(gen, psi);
}

Matrix su2_bell_element(const SpinSystem& sys, double psi, const std::array<double, 3>& axis) {
    const Vector u = vectorize(su2_unitary(sys, psi, axis)).amps;
    return u * u.adjoint();
}

Su2Factorization su2_factorize(double psi, const std::array<double, 3>& axis) {
    const double norm =
        std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw Error("su2_factorize: axis has norm " + std::to_string(norm) + ", expected 1");
    // Fundamental representation: U = [[z, i conj(w)], [i w, conj(z)]] with
    // z = cos(psi/2) + i sin(psi/2) n_z and w = sin(psi/2)(n_x + i n_y).
    const double c = std::cos(psi / 2.0);
    const double s = std::sin(psi / 2.0);
    const Complex z(c, s * axis[2]);
    const Complex w = s * Complex(axis[0], axis[1]);
    const double cp = std::abs(z);
    const double sp = std::abs(w);

    Su2Factorization out{};
    out.psi_p = 2.0 * std::atan2(sp, cp);
    if (sp < 1e-14) {
        out.phi_p = 0.0;
        out.theta_p = wrap_angle(std::arg(z));
    } else if (cp < 1e-14) {
        out.theta_p = 0.0;
        out.phi_p = wrap_angle(std::arg(w));
    } else {
        out.theta_p = wrap_angle(std::arg(z));
        out.phi_p = wrap_angle(std::arg(w) - out.theta_p);
    }
    return out;
}

std::vector<Su2GridNode> su2_grid(GridSpec spec, double j) {
    const auto psi_q = midpoint(spec.n_psi, 0.0, tau);
    const auto u_q = gauss_legendre(spec.n_theta, -1.0, 1.0);  // u = cos(theta)
    const auto phi_q = midpoint(spec.n_phi, 0.0, tau);
    const double prefactor = (2.0 * j + 1.0) / (4.0 * std::numbers::pi * std::numbers::pi);

    std::vector<Su2GridNode> grid;
    grid.reserve(static_cast<std::size_t>(spec.nodes()));
    for (Index a = 0; a < spec.n_psi; ++a) {
        const double psi = psi_q.nodes[static_cast<std::size_t>(a)];
        const double sin_half = std::sin(psi / 2.0);
        const double w_psi = psi_q.weights[static_cast<std::size_t>(a)] * sin_half * sin_half;
        for (Index b = 0; b < spec.n_theta; ++b) {
            const double u = u_q.nodes[static_cast<std::size_t>(b)];
            const double sin_theta = std::sqrt(std::max(0.0, 1.0 - u * u));
            const double w_u = u_q.weights[static_cast<std::size_t>(b)];
            for (Index cidx = 0; cidx < spec.n_phi; ++cidx) {
                const double phi = phi_q.nodes[static_cast<std::size_t>(cidx)];
                Su2GridNode node;
                node.psi = psi;
                node.axis = {sin_theta * std::cos(phi), sin_theta * std::sin(phi), u};
                node.weight =
                    prefactor * w_psi * w_u * phi_q.weights[static_cast<std::size_t>(cidx)];
                grid.push_back(node);
            }
        }
    }
    return grid;
}

std::vector<Matrix> su2_grid_unitaries(const SpinSystem& sys,
                                       const std::vector<Su2GridNode>& grid,
                                       kernels::Exec exec) {
    std::vector<Matrix> unitaries(grid.size());
    const auto count = static_cast<Index>(grid.size());
    const bool par = exec == kernels::Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (Index i = 0; i < count; ++i) {
        const auto& node = grid[static_cast<std::size_t>(i)];
        unitaries[static_cast<std::size_t>(i)] = su2_unitary(sys, node.psi, node.axis);
    }
    return unitaries;
}

Povm su2_grid_povm(const SpinSystem& sys, GridSpec spec, kernels::Exec exec) {
    const auto grid = su2_grid(spec, sys.j);
    const auto unitaries = su2_grid_unitaries(sys, grid, exec);
    Povm povm;
    povm.dims = {sys.dim, sys.dim};
    povm.elements.resize(grid.size());
    povm.labels.resize(grid.size());
    const auto count = static_cast<Index>(grid.size());
    const bool par = exec == kernels::Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (Index i = 0; i < count; ++i) {
        const auto& node = grid[static_cast<std::size_t>(i)];
        const Vector u = vectorize(unitaries[static_cast<std::size_t>(i)]).amps;
        povm.elements[static_cast<std::size_t>(i)] = node.weight * (u * u.adjoint());
        povm.labels[static_cast<std::size_t>(i)] = std::to_string(i);
    }
    return povm;
}

namespace {

void check_diagonal_positive(const SpinSystem& sys, const State& ancilla) {
    if (ancilla.dim() != sys.dim)
        throw DimensionError("su2 processing: ancilla dim != 2j+1");
    const Matrix& nu = ancilla.rho();
    Matrix off = nu;
    off.diagonal().setZero();
    if (off.norm() > kDefaultTol)
        throw Error("su2 processing: ancilla must be diagonal in the J_z basis");
    for (Index i = 0; i < nu.rows(); ++i)
        if (nu(i, i).real() <= kDefaultTol)
            throw Error("su2 processing: ancilla must have strictly positive weights, p_" +
                        std::to_string(i) + " = " + std::to_string(nu(i, i).real()));
}

struct GridFrame {
    Matrix stacked;     // D^2 x N columns = vectorized weighted members
    Matrix pinv;        // frame-map pseudoinverse
    SpanningReport span;
};

GridFrame build_grid_frame(const SpinSystem& sys, const State& ancilla,
                           const std::vector<Su2GridNode>& grid,
                           const std::vector<Matrix>& unitaries, kernels::Exec exec) {
    const Matrix nu_t = ancilla.rho().transpose();
    const Index dsq = sys.dim * sys.dim;
    GridFrame frame;
    frame.stacked.resize(dsq, static_cast<Index>(grid.size()));
    const auto count = static_cast<Index>(grid.size());
    const bool par = exec == kernels::Exec::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (Index i = 0; i < count; ++i) {
        const Matrix& u = unitaries[static_cast<std::size_t>(i)];
        const Matrix xi = grid[static_cast<std::size_t>(i)].weight * (u * nu_t * u.adjoint());
        frame.stacked.col(i) = vectorize(xi).amps;
    }

    // Rank and pseudoinverse from the SVD of the stack itself; a Gram-based
    // route would square the singular values into the eigensolver noise floor.
    Eigen::BDCSVD<Matrix> svd(frame.stacked.adjoint(), Eigen::ComputeThinV);
    const RealVector& sigma = svd.singularValues();
    const double sigma_max = sigma.size() ? sigma[0] : 0.0;
    frame.span.threshold = sigma_max * static_cast<double>(dsq) * kRankRelTol;
    RealVector inv_sq = RealVector::Zero(sigma.size());
    for (Index k = 0; k < sigma.size(); ++k) {
        if (sigma[k] > frame.span.threshold) {
            inv_sq[k] = 1.0 / (sigma[k] * sigma[k]);
            frame.span.rank = k + 1;
            frame.span.min_singular = sigma[k];
        }
    }
    frame.span.spans = frame.span.rank == dsq;
    frame.pinv =
        svd.matrixV() * inv_sq.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
    return frame;
}

}  // namespace

Vector su2_numeric_processing(const SpinSystem& sys, const State& ancilla, GridSpec spec,
                              const Matrix& observable, kernels::Exec exec) {
    check_diagonal_positive(sys, ancilla);
    if (observable.rows() != sys.dim || observable.cols() != sys.dim)
        throw DimensionError("su2_numeric_processing: observable dim != 2j+1");
    const auto grid = su2_grid(spec, sys.j);
    const auto unitaries = su2_grid_unitaries(sys, grid, exec);
    const auto frame = build_grid_frame(sys, ancilla, grid, unitaries, exec);
    if (!frame.span.spans)
        throw Error("su2_numeric_processing: grid too coarse to span, rank " +
                    std::to_string(frame.span.rank) + " of " +
                    std::to_string(sys.dim * sys.dim));
    // f(x) = <<Xi_x| S^+ |O>>, the canonical-dual coefficients.
    const Vector y = frame.pinv * vectorize(observable).amps;
    return frame.stacked.adjoint() * y;
}

State su2_default_ancilla(Index dim) {
    // Geometric weights: a degree-2j profile is needed so the diagonal has a
    // component in every spin-k sector (a linear ramp loses the quadrupole
    // sector at j = 1 and the induced family stops spanning).
    RealVector p(dim);
    for (Index i = 0; i < dim; ++i) p[i] = std::pow(2.0, static_cast<double>(i));
    p /= p.sum();
    Matrix nu = Matrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) nu(i, i) = p[i];
    return State(nu);
}

UniversalDetector make_su2_detector(double j, GridSpec spec, std::optional<State> ancilla,
                                    kernels::Exec exec) {
    const SpinSystem sys(j);
    State nu = ancilla ? *ancilla : su2_default_ancilla(sys.dim);
    check_diagonal_positive(sys, nu);

    const auto grid = su2_grid(spec, sys.j);
    const auto unitaries = su2_grid_unitaries(sys, grid, exec);
    auto frame = std::make_shared<GridFrame>(build_grid_frame(sys, nu, grid, unitaries, exec));
    if (!frame->span.spans)
        throw Error("make_su2_detector: grid too coarse to span, rank " +
                    std::to_string(frame->span.rank) + " of " +
                    std::to_string(sys.dim * sys.dim));

    const auto two_j = static_cast<long long>(std::llround(2.0 * j));
    const std::string jlabel = (two_j % 2 == 0) ? std::to_string(two_j / 2)
                                                : std::to_string(two_j) + "/2";
    UniversalDetector det{.id = "su2:j=" + jlabel,
                          .povm = su2_grid_povm(sys, spec, exec),
                          .ancilla = nu,
                          .kind = ProcessingKind::GenericDual,
                          .grid = {spec.n_psi, spec.n_theta, spec.n_phi},
                          .coefficients = nullptr,
                          .coefficient_at = nullptr};
    const Index dim = sys.dim;
    det.coefficients = [frame, dim](const Matrix& observable) {
        if (observable.rows() != dim || observable.cols() != dim)
            throw DimensionError("su2 detector: observable dim mismatch");
        const Vector y = frame->pinv * vectorize(observable).amps;
        return Vector(frame->stacked.adjoint() * y);
    };
    return det;
}

}  // namespace uqd
