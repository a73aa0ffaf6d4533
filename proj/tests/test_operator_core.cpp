#include <doctest.h>

#include "helpers.hpp"
#include "uqd/operator_core.hpp"

using namespace uqd;
using test::max_abs_diff;
using test::pauli;
using test::random_hermitian;
using test::random_matrix;

TEST_CASE("vectorize: identity and matrix units") {
    const auto v = vectorize(Matrix::Identity(2, 2));
    REQUIRE(v.amps.size() == 4);
    CHECK(v.amps[0] == Complex(1, 0));
    CHECK(v.amps[1] == Complex(0, 0));
    CHECK(v.amps[2] == Complex(0, 0));
    CHECK(v.amps[3] == Complex(1, 0));

    Matrix unit01 = Matrix::Zero(2, 2);
    unit01(0, 1) = Complex(1, 0);  // |0><1|
    const auto u = vectorize(unit01);
    CHECK(u.amps[1] == Complex(1, 0));
    CHECK(u.amps.cwiseAbs().sum() == 1.0);
}

TEST_CASE("vectorize: <<A|B>> = Tr[A^dag B] on random pairs") {
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_matrix(3, 3, 100 + trial);
        const Matrix b = random_matrix(3, 3, 200 + trial);
        const Complex lhs = vectorize(a).amps.dot(vectorize(b).amps);
        const Complex rhs = (a.adjoint() * b).trace();
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("devectorize: inverse of vectorize, exact") {
    const Vector amps = (Vector(4) << 1, 0, 0, 1).finished();
    CHECK(max_abs_diff(devectorize(amps, {2, 2}), Matrix::Identity(2, 2)) == 0.0);

    const Vector unit = (Vector(4) << 0, 0, 1, 0).finished();
    Matrix expect = Matrix::Zero(2, 2);
    expect(1, 0) = Complex(1, 0);  // |1><0|
    CHECK(max_abs_diff(devectorize(unit, {2, 2}), expect) == 0.0);

    for (int trial = 0; trial < 100; ++trial) {
        const Matrix a = random_matrix(3, 4, 300 + trial);
        CHECK(max_abs_diff(devectorize(vectorize(a)), a) == 0.0);
    }

    CHECK_THROWS_AS(devectorize((Vector(3) << 1, 0, 0).finished(), BipartiteDims{2, 2}),
                    DimensionError);
}

TEST_CASE("tensor_product: A (x) B |C>> = |A C B^T>>") {
    const Matrix c = random_matrix(2, 2, 7);
    CHECK(max_abs_diff(devectorize(
                           Vector(tensor_product(Matrix::Identity(2, 2),
                                                 Matrix::Identity(2, 2)) *
                                  vectorize(c).amps),
                           {2, 2}),
                       c) == 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_matrix(2, 2, 400 + trial);
        const Matrix b = random_matrix(2, 2, 500 + trial);
        const Matrix cc = random_matrix(2, 2, 600 + trial);
        const Vector lhs = tensor_product(a, b) * vectorize(cc).amps;
        const Vector rhs = vectorize(a * cc * b.transpose()).amps;
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }

    // X (x) I |I>> = |X>>
    const Vector lhs = tensor_product(pauli('X'), Matrix::Identity(2, 2)) *
                       vectorize(Matrix::Identity(2, 2)).amps;
    CHECK((lhs - vectorize(pauli('X')).amps).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial_trace: both identities on vectorized outer products") {
    // Tr_K[|I>><<I|] = I
    const Vector vi = vectorize(Matrix::Identity(2, 2)).amps;
    const Matrix outer = vi * vi.adjoint();
    CHECK(max_abs_diff(partial_trace(outer, {2, 2}, Subsystem::K), Matrix::Identity(2, 2)) <
          1e-15);

    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_matrix(3, 3, 700 + trial);
        const Matrix b = random_matrix(3, 3, 800 + trial);
        const Matrix m = vectorize(a).amps * vectorize(b).amps.adjoint();
        CHECK(max_abs_diff(partial_trace(m, {3, 3}, Subsystem::K), a * b.adjoint()) < 1e-12);
        CHECK(max_abs_diff(partial_trace(m, {3, 3}, Subsystem::H),
                           a.transpose() * b.conjugate()) < 1e-12);
    }

    // product state reduces to rho
    const State rho = random_density(3, 2, 11);
    const State nu = random_density(2, 2, 12);
    const Matrix joint = tensor_product(rho.rho(), nu.rho());
    CHECK(max_abs_diff(partial_trace(joint, {3, 2}, Subsystem::K), rho.rho()) < 1e-12);

    CHECK_THROWS_AS(partial_trace(Matrix::Identity(5, 5), {2, 2}, Subsystem::K), DimensionError);
}

TEST_CASE("hermitian_eig: Pauli spectra and reassembly") {
    const auto z = hermitian_eig(pauli('Z'));
    CHECK(z.values[0] == doctest::Approx(1.0));
    CHECK(z.values[1] == doctest::Approx(-1.0));

    const auto x = hermitian_eig(pauli('X'));
    CHECK(x.values[0] == doctest::Approx(1.0));
    CHECK(x.values[1] == doctest::Approx(-1.0));
    // eigenvectors (|0> +- |1>)/sqrt(2) up to phase
    for (Index col = 0; col < 2; ++col)
        CHECK(std::abs(std::abs(x.vectors(0, col)) - 1.0 / std::sqrt(2.0)) < 1e-12);

    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_hermitian(4, 900 + trial);
        const auto eig = hermitian_eig(a);
        const Matrix back =
            eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
        CHECK(max_abs_diff(back, a) < 1e-10);
        CHECK(max_abs_diff(eig.vectors.adjoint() * eig.vectors, Matrix::Identity(4, 4)) < 1e-10);
        for (Index i = 1; i < eig.values.size(); ++i) CHECK(eig.values[i - 1] >= eig.values[i]);
    }

    CHECK_THROWS_WITH_AS(hermitian_eig(random_matrix(3, 3, 1)),
                         doctest::Contains("max asymmetry"), Error);
}

TEST_CASE("normal_eig: antisymmetric shift, Hermitian agreement, unitary spectra") {
    // [[0,1],[-1,0]] has characteristic polynomial l^2 + 1 -> {+i, -i}
    Matrix u11(2, 2);
    u11 << 0, 1, -1, 0;
    const auto eig = normal_eig(u11);
    CHECK(std::abs(eig.values[0] - Complex(0, 1)) < 1e-12);
    CHECK(std::abs(eig.values[1] - Complex(0, -1)) < 1e-12);

    const Matrix h = random_hermitian(3, 21);
    const auto he = hermitian_eig(h);
    const auto ne = normal_eig(h);
    for (Index i = 0; i < 3; ++i) CHECK(std::abs(ne.values[i] - Complex(he.values[i], 0)) < 1e-9);

    for (int trial = 0; trial < 10; ++trial) {
        const Matrix u = random_haar_unitary(3, 1000 + trial);
        const auto e = normal_eig(u);
        for (Index i = 0; i < 3; ++i) CHECK(std::abs(std::abs(e.values[i]) - 1.0) < 1e-10);
        const Matrix back = e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
        CHECK(max_abs_diff(back, u) < 1e-9);
        CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, Matrix::Identity(3, 3)) < 1e-10);
    }

    CHECK_THROWS_WITH_AS(normal_eig(random_matrix(3, 3, 2)), doctest::Contains("commutator"),
                         Error);
}

TEST_CASE("random_haar_unitary: unitarity, determinism, first moment") {
    const Matrix u1 = random_haar_unitary(1, 5);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-12);

    for (int trial = 0; trial < 100; ++trial) {
        const Matrix u = random_haar_unitary(4, 2000 + trial);
        CHECK(max_abs_diff(u.adjoint() * u, Matrix::Identity(4, 4)) < 1e-12);
    }

    CHECK(max_abs_diff(random_haar_unitary(3, 42), random_haar_unitary(3, 42)) == 0.0);

    // E|U_00|^2 = 1/d
    double acc = 0.0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) acc += std::norm(random_haar_unitary(2, 3000 + k)(0, 0));
    CHECK(std::abs(acc / n - 0.5) < 0.02);
}

TEST_CASE("random_density: purity, rank, normalization") {
    const State pure = random_density(2, 1, 9);
    CHECK(std::abs((pure.rho() * pure.rho()).trace().real() - 1.0) < 1e-10);

    const State full = random_density(3, 3, 10);
    const auto eig = hermitian_eig(full.rho());
    for (Index i = 0; i < 3; ++i) CHECK(eig.values[i] > 0.0);

    for (int trial = 0; trial < 100; ++trial) {
        const State rho = random_density(4, 1 + trial % 4, 4000 + trial);
        CHECK(std::abs(rho.rho().trace() - Complex(1, 0)) < 1e-12);
    }

    CHECK_THROWS_AS(random_density(2, 3, 0), Error);
    CHECK_THROWS_AS(random_density(2, 0, 0), Error);
}

TEST_CASE("State: validation failures name the defect") {
    CHECK_THROWS_WITH_AS(State{random_matrix(2, 2, 3)}, doctest::Contains("Hermitian"), Error);
    CHECK_THROWS_WITH_AS(State{Matrix(2.0 * Matrix::Identity(2, 2))},
                         doctest::Contains("trace"), Error);
    Matrix neg(2, 2);
    neg << 2, 0, 0, -1;
    CHECK_THROWS_WITH_AS(State{neg}, doctest::Contains("negative eigenvalue"), Error);
}
