#include "uqd/frames.hpp"

#include <Eigen/SVD>

namespace uqd {

OperatorFamily OperatorFamily::from(std::vector<Matrix> members, std::vector<std::string> labels) {
    if (members.empty()) throw Error("OperatorFamily: empty family");
    if (!labels.empty() && labels.size() != members.size())
        throw Error("OperatorFamily: label count mismatch");
    OperatorFamily f;
    f.dims = {members.front().rows(), members.front().cols()};
    for (const auto& m : members)
        if (m.rows() != f.dims.dim_h || m.cols() != f.dims.dim_k)
            throw DimensionError("OperatorFamily: members have mixed dims");
    f.members = std::move(members);
    f.labels = std::move(labels);
    return f;
}

Matrix OperatorFamily::stacked() const {
    Matrix st(dims.joint(), size());
    for (Index i = 0; i < size(); ++i)
        st.col(i) = vectorize(members[static_cast<std::size_t>(i)]).amps;
    return st;
}

namespace {

struct RankInfo {
    Index rank;
    double min_singular;   // smallest singular value counted into the rank
    double threshold;
    RealVector singulars;  // descending
};

RankInfo singular_rank(const RealVector& singulars_desc, Index space_dim) {
    RankInfo info{0, 0.0, 0.0, singulars_desc};
    const double sigma_max = singulars_desc.size() ? singulars_desc[0] : 0.0;
    info.threshold = sigma_max * static_cast<double>(space_dim) * kRankRelTol;
    for (Index i = 0; i < singulars_desc.size(); ++i) {
        if (singulars_desc[i] > info.threshold) {
            info.rank = i + 1;
            info.min_singular = singulars_desc[i];
        }
    }
    return info;
}

}  // namespace

SpanningReport is_spanning(const OperatorFamily& family, kernels::Exec exec) {
    (void)exec;  // single SVD call; kept for signature uniformity
    const Matrix st = family.stacked();
    // BDCSVD wants rows >= cols; singular values are orientation-invariant.
    Eigen::BDCSVD<Matrix> svd(st.rows() >= st.cols() ? st : Matrix(st.adjoint()));
    const auto info = singular_rank(svd.singularValues(), family.dims.joint());
    SpanningReport report;
    report.rank = info.rank;
    report.spans = info.rank == family.dims.joint();
    report.min_singular = info.min_singular;
    report.threshold = info.threshold;
    return report;
}

Matrix frame_map(const OperatorFamily& family, kernels::Exec exec) {
    return kernels::gram_matrix(family.stacked(), exec);
}

DualFamily canonical_dual(const OperatorFamily& family, kernels::Exec exec) {
    const auto span = is_spanning(family, exec);
    if (!span.spans) {
        const Index deficiency = family.dims.joint() - span.rank;
        throw Error("canonical_dual: family does not span, rank " + std::to_string(span.rank) +
                    " of " + std::to_string(family.dims.joint()) + " (deficiency " +
                    std::to_string(deficiency) + ")");
    }
    // Theta_i = S^+ Xi_i with S = M M^dag for the stacked members M = V S W^dag;
    // the dual stack is then V S^-1 W^dag, computed from one SVD of M rather
    // than through the Gram matrix (squaring would halve the usable precision).
    const Matrix st = family.stacked();
    Eigen::BDCSVD<Matrix> svd(st.adjoint(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sigma = svd.singularValues();
    const double threshold = sigma[0] * static_cast<double>(family.dims.joint()) * kRankRelTol;
    RealVector inv = RealVector::Zero(sigma.size());
    for (Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > threshold) inv[i] = 1.0 / sigma[i];
    const Matrix dual_stack =
        svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();

    DualFamily dual;
    dual.members.reserve(family.members.size());
    for (Index i = 0; i < family.size(); ++i)
        dual.members.push_back(devectorize(Vector(dual_stack.col(i)), family.dims));
    return dual;
}

Vector expand(const Matrix& a, const OperatorFamily& family, const DualFamily& dual) {
    if (a.rows() != family.dims.dim_h || a.cols() != family.dims.dim_k)
        throw DimensionError("expand: operator dims do not match family");
    if (dual.members.size() != family.members.size())
        throw Error("expand: dual not aligned with family");
    Vector coeff(family.size());
    for (Index i = 0; i < family.size(); ++i)
        coeff[i] = (dual.members[static_cast<std::size_t>(i)].adjoint() * a).trace();
    return coeff;
}

Matrix reconstruct(const Vector& coefficients, const OperatorFamily& family) {
    if (coefficients.size() != family.size())
        throw DimensionError("reconstruct: coefficient count mismatch");
    Matrix out = Matrix::Zero(family.dims.dim_h, family.dims.dim_k);
    for (Index i = 0; i < family.size(); ++i)
        out += coefficients[i] * family.members[static_cast<std::size_t>(i)];
    return out;
}

}  // namespace uqd
