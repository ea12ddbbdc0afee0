#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "skewinfo/matrix_core.hpp"
#include "skewinfo/quantum_objects.hpp"
#include "test_util.hpp"

using namespace skewinfo;

TEST_CASE("eigendecomposition of simple Hermitian matrices") {
    const auto id = hermitian_eigendecompose(ComplexMatrix::Identity(2, 2));
    CHECK(id.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(id.eigenvalues(1) == doctest::Approx(1.0));

    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 0.8;
    diag(1, 1) = 0.2;
    const auto dd = hermitian_eigendecompose(diag);
    CHECK(dd.eigenvalues(0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(dd.eigenvalues(1) == doctest::Approx(0.8).epsilon(1e-14));

    const auto ex = hermitian_eigendecompose(oracle::example_rho(1.0));
    const double expected[] = {0.0, 0.0, 0.5, 0.5};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ex.eigenvalues(i) - expected[i]) < 1e-14);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    Rng rng(RandomSeed{7});
    for (int d : {1, 2, 3, 5, 8}) {
        const ComplexMatrix g = rng.gaussian_matrix(d, d);
        const ComplexMatrix h = g + g.adjoint();
        const auto eig = hermitian_eigendecompose(h);
        const ComplexMatrix& v = eig.eigenvectors;
        CHECK(max_abs(v.adjoint() * v - ComplexMatrix::Identity(d, d)) < 1e-12);
        const ComplexMatrix back = v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
        CHECK(max_abs(back - h) < 1e-12);
        for (int i = 1; i < d; ++i) CHECK(eig.eigenvalues(i - 1) <= eig.eigenvalues(i));
    }
}

TEST_CASE("eigendecomposition is bit-reproducible") {
    Rng rng(RandomSeed{3});
    const ComplexMatrix g = rng.gaussian_matrix(4, 4);
    const ComplexMatrix h = g * g.adjoint();
    const auto a = hermitian_eigendecompose(h);
    const auto b = hermitian_eigendecompose(h);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("eigendecomposition input errors") {
    CHECK(error_kind_of([] { hermitian_eigendecompose(ComplexMatrix::Zero(2, 3)); }) ==
          ErrorKind::NotSquare);
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK(error_kind_of([&] { hermitian_eigendecompose(m); }) == ErrorKind::NotHermitian);
}

TEST_CASE("psd square root") {
    const ComplexMatrix quarter = 0.25 * ComplexMatrix::Identity(4, 4);
    CHECK(max_abs(psd_sqrt(quarter) - 0.5 * ComplexMatrix::Identity(4, 4)) < 1e-14);

    ComplexVector psi(3);
    psi << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.0);
    const ComplexMatrix proj = psi * psi.adjoint();
    CHECK(max_abs(psd_sqrt(proj) - proj) < 1e-12);

    const ComplexMatrix rho1 = oracle::example_rho(1.0);
    CHECK(max_abs(psd_sqrt(rho1) - std::sqrt(2.0) * rho1) < 1e-12);

    Rng rng(RandomSeed{11});
    for (int d : {2, 3, 4, 6}) {
        const ComplexMatrix g = rng.gaussian_matrix(d, d);
        const ComplexMatrix p = g * g.adjoint();
        const ComplexMatrix s = psd_sqrt(p);
        CHECK(max_abs(s * s - p) < 1e-11);
        CHECK(hermitian_asymmetry(s) < 1e-12);
        CHECK(max_abs(s - oracle::sqrt_psd(p)) < 1e-10);
    }
}

TEST_CASE("psd square root clamps tiny negatives and rejects real ones") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1e-12;
    const ComplexMatrix s = psd_sqrt(m);
    CHECK(s(1, 1).real() == 0.0);
    m(1, 1) = -1e-3;
    try {
        psd_sqrt(m);
        FAIL("expected NotPSD");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPSD);
        CHECK(e.magnitude() == doctest::Approx(-1e-3));
    }
}

TEST_CASE("commutator") {
    Rng rng(RandomSeed{5});
    const ComplexMatrix b = rng.gaussian_matrix(3, 3);
    CHECK(max_abs(commutator(ComplexMatrix::Identity(3, 3), b)) == 0.0);

    ComplexMatrix d1 = ComplexMatrix::Zero(2, 2), d2 = ComplexMatrix::Zero(2, 2);
    d1.diagonal() << 1.0, 2.0;
    d2.diagonal() << 3.0, 4.0;
    CHECK(max_abs(commutator(d1, d2)) == 0.0);

    ComplexMatrix p = ComplexMatrix::Zero(2, 2), x = ComplexMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    x(0, 1) = x(1, 0) = 1.0;
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 1) = 1.0;
    expected(1, 0) = -1.0;
    CHECK(max_abs(commutator(p, x) - expected) == 0.0);
}

TEST_CASE("Hilbert-Schmidt inner product") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    CHECK(hs_inner(i2, i2) == Complex(2.0, 0.0));

    Rng rng(RandomSeed{9});
    const ComplexMatrix a = rng.gaussian_matrix(4, 4);
    const Complex aa = hs_inner(a, a);
    CHECK(aa.real() >= 0.0);
    CHECK(std::abs(aa.imag()) < 1e-12);
    CHECK(aa.real() == doctest::Approx(a.squaredNorm()).epsilon(1e-13));

    const ComplexMatrix b = rng.gaussian_matrix(4, 4);
    CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
}

TEST_CASE("compensated summation") {
    std::vector<double> v{1.0, 1e100, 1.0, -1e100};
    CHECK(compensated_sum(v) == 2.0);
    std::vector<double> tenths(10, 0.1);
    CHECK(compensated_sum(tenths) == 1.0);
}
