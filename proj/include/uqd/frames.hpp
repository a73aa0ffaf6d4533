#pragma once

// Operator spanning sets and their duals. A family {Xi_i} spans the operator
// space from K to H when its vectorized members have full rank; the canonical
// (minimal-norm) dual {Theta_i} then reconstructs any A as
// A = sum_i Tr[Theta_i^dag A] Xi_i.

#include <string>
#include <vector>

#include "uqd/kernels.hpp"
#include "uqd/operator_core.hpp"
#include "uqd/types.hpp"

namespace uqd {

struct OperatorFamily {
    std::vector<Matrix> members;
    std::vector<std::string> labels;  // empty or aligned with members
    BipartiteDims dims;               // uniform member dims

    static OperatorFamily from(std::vector<Matrix> members, std::vector<std::string> labels = {});
    Index size() const { return static_cast<Index>(members.size()); }

    // D x N matrix whose columns are the vectorized members.
    Matrix stacked() const;
};

struct DualFamily {
    std::vector<Matrix> members;  // aligned 1:1 with the family it was built from
};

struct SpanningReport {
    bool spans = false;
    Index rank = 0;
    double min_singular = 0.0;
    double threshold = 0.0;
};

SpanningReport is_spanning(const OperatorFamily& family,
                           kernels::Exec exec = kernels::Exec::Parallel);

// Frame map S = sum_i |Xi_i>><<Xi_i|; Hermitian PSD, full rank iff spanning.
Matrix frame_map(const OperatorFamily& family, kernels::Exec exec = kernels::Exec::Parallel);

// Theta_i = S^+ Xi_i. Throws if the family does not span (reporting the
// rank deficiency). For an orthogonal family with Tr[Xi_i^dag Xi_j] =
// c delta_ij this reduces to Theta_i = Xi_i / c.
DualFamily canonical_dual(const OperatorFamily& family,
                          kernels::Exec exec = kernels::Exec::Parallel);

// Expansion coefficients coeff_i = Tr[Theta_i^dag A].
Vector expand(const Matrix& a, const OperatorFamily& family, const DualFamily& dual);

// sum_i coeff_i Xi_i; inverse of expand up to the dual's reconstruction error.
Matrix reconstruct(const Vector& coefficients, const OperatorFamily& family);

}  // namespace uqd
