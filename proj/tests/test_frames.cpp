#include <doctest.h>

#include "helpers.hpp"
#include "uqd/frames.hpp"
#include "uqd/weyl.hpp"

using namespace uqd;
using test::max_abs_diff;
using test::pauli;
using test::random_matrix;

namespace {

OperatorFamily pauli_family() {
    return OperatorFamily::from({pauli('I'), pauli('X'), pauli('Y'), pauli('Z')},
                                {"I", "X", "Y", "Z"});
}

OperatorFamily weyl_family(Index d) {
    std::vector<Matrix> members;
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n) members.push_back(weyl_unitary(d, m, n));
    return OperatorFamily::from(std::move(members));
}

}  // namespace

TEST_CASE("is_spanning: Pauli basis, undersized set, Weyl family") {
    const auto full = is_spanning(pauli_family());
    CHECK(full.spans);
    CHECK(full.rank == 4);

    const auto partial =
        is_spanning(OperatorFamily::from({pauli('I'), pauli('X'), pauli('Z')}));
    CHECK_FALSE(partial.spans);
    CHECK(partial.rank == 3);

    const auto weyl = is_spanning(weyl_family(3));
    CHECK(weyl.spans);
    CHECK(weyl.rank == 9);
}

TEST_CASE("frame_map: Hermitian PSD, tight family gives c * identity") {
    const Matrix s = frame_map(pauli_family());
    CHECK(max_abs_diff(s, s.adjoint()) < 1e-14);
    // Tr[sigma_i^dag sigma_j] = 2 delta_ij -> S = 2 I
    CHECK(max_abs_diff(s, 2.0 * Matrix::Identity(4, 4)) < 1e-10);

    std::vector<Matrix> random_members;
    for (int i = 0; i < 6; ++i) random_members.push_back(random_matrix(2, 2, 50 + i));
    const Matrix s2 = frame_map(OperatorFamily::from(random_members));
    const auto eig = hermitian_eig(s2);
    CHECK(eig.values[eig.values.size() - 1] > -1e-12);
}

TEST_CASE("canonical_dual: orthogonal family scales by 1/c, self-dual for orthonormal") {
    const auto duals = canonical_dual(pauli_family());
    REQUIRE(duals.members.size() == 4);
    CHECK(max_abs_diff(duals.members[0], pauli('I') / 2.0) < 1e-12);
    CHECK(max_abs_diff(duals.members[1], pauli('X') / 2.0) < 1e-12);
    CHECK(max_abs_diff(duals.members[2], pauli('Y') / 2.0) < 1e-12);
    CHECK(max_abs_diff(duals.members[3], pauli('Z') / 2.0) < 1e-12);

    // orthonormal operator basis: matrix units are self-dual
    std::vector<Matrix> units;
    for (Index r = 0; r < 2; ++r)
        for (Index c = 0; c < 2; ++c) {
            Matrix u = Matrix::Zero(2, 2);
            u(r, c) = Complex(1, 0);
            units.push_back(u);
        }
    const auto unit_family = OperatorFamily::from(units);
    const auto unit_duals = canonical_dual(unit_family);
    for (std::size_t i = 0; i < units.size(); ++i)
        CHECK(max_abs_diff(unit_duals.members[i], units[i]) < 1e-12);

    CHECK_THROWS_WITH_AS(canonical_dual(OperatorFamily::from({pauli('I'), pauli('X')})),
                         doctest::Contains("deficiency 2"), Error);
}

TEST_CASE("canonical_dual: overcomplete random family reconstructs") {
    std::vector<Matrix> members;
    for (int i = 0; i < 6; ++i) members.push_back(random_matrix(2, 2, 70 + i));
    const auto family = OperatorFamily::from(members);
    REQUIRE(is_spanning(family).spans);
    const auto duals = canonical_dual(family);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = random_matrix(2, 2, 700 + trial);
        const Vector coeff = expand(a, family, duals);
        CHECK(frobenius_distance(reconstruct(coeff, family), a) < 1e-9);
    }
}

TEST_CASE("expand: basis coefficients and Weyl orthogonality") {
    const auto family = pauli_family();
    const auto duals = canonical_dual(family);
    const Vector coeff = expand(pauli('X'), family, duals);
    CHECK(std::abs(coeff[0]) < 1e-12);
    CHECK(std::abs(coeff[1] - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(coeff[2]) < 1e-12);
    CHECK(std::abs(coeff[3]) < 1e-12);

    // Weyl family at d=3 with duals U/d: identity picks out (0,0) only
    const auto weyl = weyl_family(3);
    DualFamily scaled;
    for (const auto& u : weyl.members) scaled.members.push_back(u / 3.0);
    const Vector id_coeff = expand(Matrix::Identity(3, 3), weyl, scaled);
    CHECK(std::abs(id_coeff[0] - Complex(1, 0)) < 1e-12);
    for (Index i = 1; i < id_coeff.size(); ++i) CHECK(std::abs(id_coeff[i]) < 1e-12);

    CHECK_THROWS_AS(expand(Matrix::Identity(3, 3), family, duals), DimensionError);
}

TEST_CASE("duality invariant: 100 random operators reconstruct through any computed dual") {
    std::vector<Matrix> members;
    for (int i = 0; i < 11; ++i) members.push_back(random_matrix(3, 3, 90 + i));
    const auto family = OperatorFamily::from(members);
    const auto duals = canonical_dual(family);
    for (int trial = 0; trial < 100; ++trial) {
        const Matrix a = random_matrix(3, 3, 1500 + trial);
        CHECK(frobenius_distance(reconstruct(expand(a, family, duals), family), a) < 1e-9);
    }
}

TEST_CASE("completeness relation: sum_i |Xi_i>><<Theta_i| is the identity") {
    // the expansion A = sum_i Tr[Theta_i^dag A] Xi_i for every A is the
    // operator identity below on the vectorized space
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<Matrix> members;
        for (int i = 0; i < 5 + rep; ++i) members.push_back(random_matrix(2, 2, 130 + 10 * rep + i));
        const auto family = OperatorFamily::from(members);
        const auto duals = canonical_dual(family);
        Matrix acc = Matrix::Zero(4, 4);
        for (std::size_t i = 0; i < members.size(); ++i)
            acc += vectorize(family.members[i]).amps * vectorize(duals.members[i]).amps.adjoint();
        CHECK(max_abs_diff(acc, Matrix::Identity(4, 4)) < 1e-10);
    }
}

TEST_CASE("canonical_dual of canonical_dual recovers the family") {
    std::vector<Matrix> members;
    for (int i = 0; i < 5; ++i) members.push_back(random_matrix(2, 2, 110 + i));
    const auto family = OperatorFamily::from(members);
    const auto duals = canonical_dual(family);
    const auto family_of_duals = OperatorFamily::from(duals.members);
    const auto double_dual = canonical_dual(family_of_duals);
    for (std::size_t i = 0; i < members.size(); ++i)
        CHECK(max_abs_diff(double_dual.members[i], members[i]) < 1e-8);
}
