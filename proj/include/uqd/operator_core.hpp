#pragma once

// Dense complex operator algebra on small Hilbert spaces: the vectorization
// isomorphism |A>>, tensor products, partial traces, spectral decompositions
// and seeded random sampling. Everything is immutable value semantics.

#include <cstdint>
#include <random>
#include <utility>

#include "uqd/types.hpp"

namespace uqd {

// Factor dimensions of a bipartite space H (x) K. Joint indices are row-major
// with the H index major: (n, m) -> n * dim_k + m.
struct BipartiteDims {
    Index dim_h = 0;
    Index dim_k = 0;

    Index joint() const { return dim_h * dim_k; }
    bool operator==(const BipartiteDims&) const = default;
};

// |A>> = sum_{n,m} A_{nm} |n>|m> for an operator A from K to H.
struct BipartiteVector {
    Vector amps;
    BipartiteDims dims;
};

BipartiteVector vectorize(const Matrix& a);
Matrix devectorize(const BipartiteVector& v);
Matrix devectorize(const Vector& amps, BipartiteDims dims);

// Kronecker product with index ordering consistent with vectorize:
// tensor_product(A, B) * |C>> == |A C B^T>>.
Matrix tensor_product(const Matrix& a, const Matrix& b);

enum class Subsystem { H, K };

// Partial trace of a square operator on H (x) K over the named factor.
// Satisfies Tr_K[|A>><<B|] = A B^dag and Tr_H[|A>><<B|] = A^T B^*.
Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem traced);

struct HermitianEig {
    RealVector values;  // sorted descending
    Matrix vectors;     // orthonormal columns, aligned with values
};

struct NormalEig {
    Vector values;   // sorted descending by (re, im)
    Matrix vectors;  // unitary columns
};

HermitianEig hermitian_eig(const Matrix& a, double tol = kDefaultTol);
NormalEig normal_eig(const Matrix& a, double tol = kDefaultTol);

// Density operator: Hermitian, PSD and unit trace within tol (validated on
// construction).
class State {
  public:
    explicit State(Matrix rho, double tol = kDefaultTol);

    const Matrix& rho() const { return rho_; }
    Index dim() const { return rho_.rows(); }
    double tol() const { return tol_; }

  private:
    Matrix rho_;
    double tol_;
};

Matrix random_haar_unitary(Index dim, std::uint64_t seed);
State random_density(Index dim, Index rank, std::uint64_t seed);

// --- seeded randomness -------------------------------------------------------
//
// All sampling in the library flows from explicit seeds. Streams are derived
// by mixing (seed, stream) through splitmix64 so that chunked parallel
// sampling is reproducible for any worker count.

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream = 0);

// Uniform double in [0, 1) from the top 53 bits; avoids distribution objects
// whose output is not pinned by the standard.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng);

// Ginibre matrix: i.i.d. standard complex Gaussian entries.
Matrix random_ginibre(Index rows, Index cols, std::mt19937_64& rng);

double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace uqd
