#include "uqd/operator_core.hpp"

#include <cmath>
#include <numbers>

namespace uqd {

BipartiteVector vectorize(const Matrix& a) {
    BipartiteVector v;
    v.dims = {a.rows(), a.cols()};
    v.amps.resize(a.size());
    for (Index n = 0; n < a.rows(); ++n)
        for (Index m = 0; m < a.cols(); ++m) v.amps[n * a.cols() + m] = a(n, m);
    return v;
}

Matrix devectorize(const Vector& amps, BipartiteDims dims) {
    if (amps.size() != dims.joint())
        throw DimensionError("devectorize: length " + std::to_string(amps.size()) +
                             " != dimH*dimK = " + std::to_string(dims.joint()));
    Matrix a(dims.dim_h, dims.dim_k);
    for (Index n = 0; n < dims.dim_h; ++n)
        for (Index m = 0; m < dims.dim_k; ++m) a(n, m) = amps[n * dims.dim_k + m];
    return a;
}

Matrix devectorize(const BipartiteVector& v) { return devectorize(v.amps, v.dims); }

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem traced) {
    if (m.rows() != m.cols() || m.rows() != dims.joint())
        throw DimensionError("partial_trace: operator of size " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) + " does not factor as " +
                             std::to_string(dims.dim_h) + "x" + std::to_string(dims.dim_k));
    const Index h = dims.dim_h, k = dims.dim_k;
    if (traced == Subsystem::K) {
        Matrix out = Matrix::Zero(h, h);
        for (Index n = 0; n < h; ++n)
            for (Index np = 0; np < h; ++np)
                for (Index mm = 0; mm < k; ++mm) out(n, np) += m(n * k + mm, np * k + mm);
        return out;
    }
    Matrix out = Matrix::Zero(k, k);
    for (Index mm = 0; mm < k; ++mm)
        for (Index mp = 0; mp < k; ++mp)
            for (Index n = 0; n < h; ++n) out(mm, mp) += m(n * k + mm, n * k + mp);
    return out;
}

HermitianEig hermitian_eig(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) throw DimensionError("hermitian_eig: matrix not square");
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol)
        throw Error("hermitian_eig: input not Hermitian, max asymmetry " + std::to_string(asym));
    Eigen::SelfAdjointEigenSolver<Matrix> solver((a + a.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver failed");
    // Eigen sorts ascending; the library convention is descending.
    HermitianEig out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

NormalEig normal_eig(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) throw DimensionError("normal_eig: matrix not square");
    const double scale = std::max(1.0, a.squaredNorm());
    const double comm = (a * a.adjoint() - a.adjoint() * a).norm();
    if (comm > tol * scale)
        throw Error("normal_eig: input not normal, commutator norm " + std::to_string(comm));
    // Schur of a normal matrix is diagonal, so the Schur vectors are an
    // orthonormal eigenbasis even in the degenerate case.
    Eigen::ComplexSchur<Matrix> schur(a, /*computeU=*/true);
    if (schur.info() != Eigen::Success) throw Error("normal_eig: Schur decomposition failed");
    Vector values = schur.matrixT().diagonal();
    Matrix vectors = schur.matrixU();

    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Index>(i);
    std::stable_sort(order.begin(), order.end(), [&](Index lhs, Index rhs) {
        if (values[lhs].real() != values[rhs].real())
            return values[lhs].real() > values[rhs].real();
        return values[lhs].imag() > values[rhs].imag();
    });

    NormalEig out;
    out.values.resize(values.size());
    out.vectors.resize(vectors.rows(), vectors.cols());
    for (Index i = 0; i < values.size(); ++i) {
        out.values[i] = values[order[static_cast<std::size_t>(i)]];
        out.vectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
    }
    return out;
}

State::State(Matrix rho, double tol) : rho_(std::move(rho)), tol_(tol) {
    if (rho_.rows() != rho_.cols()) throw DimensionError("State: matrix not square");
    const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol_) throw Error("State: not Hermitian, max asymmetry " + std::to_string(asym));
    const double trace_defect = std::abs(rho_.trace() - Complex(1.0, 0.0));
    if (trace_defect > tol_)
        throw Error("State: trace differs from 1 by " + std::to_string(trace_defect));
    Eigen::SelfAdjointEigenSolver<Matrix> solver((rho_ + rho_.adjoint()) / 2.0);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol_)
        throw Error("State: negative eigenvalue " + std::to_string(min_eig));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(seed + splitmix64(stream)));
}

double gaussian(std::mt19937_64& rng) {
    // Box-Muller on pinned uniform bits; std::normal_distribution is not
    // bit-stable across library versions.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix random_ginibre(Index rows, Index cols, std::mt19937_64& rng) {
    Matrix g(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = Complex(gaussian(rng), gaussian(rng));
    return g;
}

Matrix random_haar_unitary(Index dim, std::uint64_t seed) {
    if (dim < 1) throw DimensionError("random_haar_unitary: dim must be >= 1");
    auto rng = seeded_rng(seed);
    const Matrix g = random_ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so the distribution is exactly Haar.
    for (Index i = 0; i < dim; ++i) {
        const Complex rii = r(i, i);
        const double mag = std::abs(rii);
        q.col(i) *= (mag > 0.0) ? rii / mag : Complex(1.0, 0.0);
    }
    return q;
}

State random_density(Index dim, Index rank, std::uint64_t seed) {
    if (rank < 1 || rank > dim)
        throw Error("random_density: rank " + std::to_string(rank) + " out of range [1, " +
                    std::to_string(dim) + "]");
    auto rng = seeded_rng(seed);
    const Matrix g = random_ginibre(dim, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    return State(rho);
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace uqd
