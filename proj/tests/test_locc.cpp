#include <doctest.h>

#include "helpers.hpp"
#include "uqd/locc.hpp"
#include "uqd/weyl.hpp"

using namespace uqd;
using test::max_abs_diff;
using test::pauli;

TEST_CASE("locc_povm: structure at d=2, completeness, normal base family") {
    const auto locc = locc_povm(2);
    CHECK(locc.dim_h == 2);
    CHECK(locc.ancilla_dim == 4);
    const auto povm = locc.to_povm();
    CHECK(povm.size() == 8);  // 2 eigenvectors x 4 unitaries on a 2x4 joint space
    CHECK(povm.dims.joint() == 8);

    Matrix sum = Matrix::Zero(8, 8);
    for (const auto& el : povm.elements) sum += el;
    CHECK(max_abs_diff(sum, Matrix::Identity(8, 8)) < 1e-12);

    for (const auto& c : locc.base)
        CHECK((c * c.adjoint() - c.adjoint() * c).norm() < 1e-12);

    // base family spans, so L >= d^2 is met with equality
    CHECK(is_spanning(OperatorFamily::from(locc.base)).spans);
}

TEST_CASE("locc_povm: canonical dual of the Weyl base is C(l)/d") {
    const auto locc = locc_povm(3);
    for (std::size_t l = 0; l < locc.base.size(); ++l)
        CHECK(max_abs_diff(locc.base_dual.members[l], locc.base[l] / 3.0) < 1e-12);
}

TEST_CASE("locc_processing: hand value f = 4 for O = Z at the Z outcome") {
    // l indexes (m,n) row-major; U_{1,0} = Z sits at l = 2. With nu = I/4 and
    // dual Z/2: f = Tr[(Z/2) Z] * (+1) / (1/4) = 4 for the +1 eigenvector.
    const auto locc = locc_povm(2);
    const State nu(Matrix::Identity(4, 4) / 4.0);
    const Vector f = locc_processing(locc, nu, pauli('Z'));
    REQUIRE(f.size() == 8);
    const Index l = 2, k_plus = 0;  // eigenvalues sorted descending: +1 first
    CHECK(std::abs(locc.eigenvalues[l][k_plus] - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(f[l * 2 + k_plus] - Complex(4, 0)) < 1e-10);
    CHECK(std::abs(f[l * 2 + 1] - Complex(-4, 0)) < 1e-10);
}

TEST_CASE("locc_processing: identity observable collapses to the l = (0,0) block") {
    const auto locc = locc_povm(2);
    const State nu(Matrix::Identity(4, 4) / 4.0);
    const Vector f = locc_processing(locc, nu, Matrix::Identity(2, 2));
    for (Index l = 0; l < 4; ++l)
        for (Index k = 0; k < 2; ++k) {
            if (l == 0) continue;
            CHECK(std::abs(f[l * 2 + k]) < 1e-12);
        }
    // and the weighted average is exactly 1 for any rho
    const auto det = make_locc_detector(2);
    const State rho = random_density(2, 2, 3);
    CHECK(std::abs(exact_expectation(det, rho, Matrix::Identity(2, 2)) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("locc detector: exact identity for d = 2, 3 with mixed and random ancillas") {
    for (Index d : {Index(2), Index(3)}) {
        const auto det = make_locc_detector(d);
        for (int trial = 0; trial < 50; ++trial) {
            const State rho = random_density(d, 1 + trial % d, 100 * d + trial);
            auto rng = seeded_rng(200 * static_cast<std::uint64_t>(d), trial);
            const Matrix o = random_ginibre(d, d, rng);
            CHECK(std::abs(exact_expectation(det, rho, o) - (rho.rho() * o).trace()) < 1e-9);
        }

        // random strictly positive diagonal ancilla
        const Index big_l = d * d;
        auto rng = seeded_rng(42, static_cast<std::uint64_t>(d));
        Matrix diag = Matrix::Zero(big_l, big_l);
        double total = 0.0;
        for (Index l = 0; l < big_l; ++l) {
            const double w = 0.2 + uniform01(rng);
            diag(l, l) = w;
            total += w;
        }
        diag /= total;
        const auto det2 = make_locc_detector(d, State(diag));
        for (int trial = 0; trial < 20; ++trial) {
            const State rho = random_density(d, d, 300 * d + trial);
            auto rng2 = seeded_rng(400 * static_cast<std::uint64_t>(d), trial);
            const Matrix o = random_ginibre(d, d, rng2);
            CHECK(std::abs(exact_expectation(det2, rho, o) - (rho.rho() * o).trace()) < 1e-9);
        }
    }
}

TEST_CASE("locc_processing: vanishing diagonal ancilla entry names l") {
    const auto locc = locc_povm(2);
    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = 0.5;
    diag(1, 1) = 0.5;  // l = 2, 3 vanish
    CHECK_THROWS_WITH_AS(locc_processing(locc, State(diag), pauli('Z')),
                         doctest::Contains("l=2"), Error);
}
