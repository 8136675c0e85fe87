#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "phasepom/fock.hpp"

#include <cmath>

using namespace phasepom;

TEST_CASE("fock space validates its parameters") {
    CHECK_NOTHROW(FockSpace(2, 2));
    CHECK_THROWS_AS(FockSpace(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(FockSpace(10, 11), std::invalid_argument);
    CHECK_THROWS_AS(FockSpace(10, 0), std::invalid_argument);
}

TEST_CASE("ladder operators") {
    FockSpace two(2, 2);
    auto [a2, ad2] = ladder_ops(two);
    CHECK(a2(0, 1) == Complex(1.0, 0.0));
    CHECK(a2.cwiseAbs().sum() == 1.0);  // single nonzero entry

    FockSpace three(3, 3);
    auto [a3, ad3] = ladder_ops(three);
    CHECK(ad3(2, 1).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    FockSpace sp(17, 12);
    auto [a, ad] = ladder_ops(sp);
    const CMat num = ad * a;
    for (int n = 0; n < 17; ++n) {
        CHECK(num(n, n).real() == doctest::Approx(double(n)).epsilon(1e-14));
        for (int m = 0; m < 17; ++m)
            if (m != n) CHECK(std::abs(num(m, n)) == 0.0);
    }
}

TEST_CASE("quadratures") {
    FockSpace two(2, 2);
    auto [q2, p2] = quadratures(two);
    CHECK(q2(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(q2(1, 0) == q2(0, 1));

    FockSpace sp(40, 12);
    auto [q, p] = quadratures(sp);
    CHECK(max_abs(q - q.adjoint()) == 0.0);
    CHECK(max_abs(p - p.adjoint()) == 0.0);
    const CMat comm = q * p - p * q;
    const CMat expect = Complex(0.0, 1.0) * CMat::Identity(38, 38);
    CHECK(max_abs(comm.topLeftCorner(38, 38) - expect) <= 1e-12);
}

TEST_CASE("displacement basics") {
    FockSpace sp(60, 12);
    CHECK(max_abs(displacement(Complex(0.0, 0.0), sp) - CMat::Identity(60, 60)) == 0.0);

    const CMat d1 = displacement(Complex(1.0, 0.0), sp);
    CHECK(std::abs(d1(0, 0) - std::exp(-0.5)) <= 1e-10);

    const CMat d = displacement(Complex(0.5, 0.5), sp);
    const CMat dd = (d.adjoint() * d).topLeftCorner(20, 20);
    CHECK(max_abs(dd - CMat::Identity(20, 20)) <= 1e-10);
}

TEST_CASE("displacement agrees with the column recursion everywhere") {
    Rng rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        const Complex beta(3.0 * (rng.uniform() - 0.5), 3.0 * (rng.uniform() - 0.5));
        const CMat fast = displacement_block(beta, 48, 48);
        const CMat ref = oracle::displacement_columns(beta, 48);
        // both accumulate rounding toward the high-index corner
        CHECK(max_abs(fast - ref) <= 1e-8);
        CHECK(max_abs((fast - ref).topLeftCorner(16, 16)) <= 1e-12);
    }
}

TEST_CASE("displacement agrees with the matrix exponential on the trusted block") {
    Rng rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        const double r = 2.0 * std::sqrt(rng.uniform());
        const double th = 2.0 * M_PI * rng.uniform();
        const Complex beta = std::polar(r, th);
        const CMat fast = displacement_block(beta, 60, 60).topLeftCorner(20, 20);
        const CMat ref = oracle::displacement_expm(beta, 60).topLeftCorner(20, 20);
        CHECK(max_abs(fast - ref) <= 1e-8);
    }
}

TEST_CASE("weyl relation and inverse") {
    FockSpace sp(60, 12);
    Rng rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        const Complex b1(2.0 * (rng.uniform() - 0.5), 2.0 * (rng.uniform() - 0.5));
        const Complex b2(2.0 * (rng.uniform() - 0.5), 2.0 * (rng.uniform() - 0.5));
        const CMat lhs = displacement(b1, sp) * displacement(b2, sp);
        const Complex phase = std::polar(1.0, std::imag(b1 * std::conj(b2)));
        const CMat rhs = phase * displacement(b1 + b2, sp);
        CHECK(max_abs((lhs - rhs).topLeftCorner(12, 12)) <= 1e-8);

        const CMat inv = displacement(b1, sp) * displacement(-b1, sp);
        CHECK(max_abs(inv.topLeftCorner(12, 12) - CMat::Identity(12, 12)) <= 1e-8);
    }
}

TEST_CASE("rectangular displacement blocks match the square evaluation") {
    const Complex beta(0.7, -1.1);
    const CMat sq = displacement_block(beta, 40, 40);
    const CMat tall = displacement_block(beta, 40, 7);
    const CMat wide = displacement_block(beta, 7, 40);
    CHECK(max_abs(tall - sq.leftCols(7)) == 0.0);
    CHECK(max_abs(wide - sq.topRows(7)) == 0.0);
}

TEST_CASE("projective representation of the continuous group") {
    FockSpace sp(60, 12);
    CHECK(max_abs(pi_cont({0.0, 0.0, 0.0}, sp) - CMat::Identity(60, 60)) == 0.0);
    CHECK(max_abs(pi_cont({M_PI, 0.0, 0.0}, sp) + CMat::Identity(60, 60)) <= 1e-15);

    Rng rng(44);
    for (int trial = 0; trial < 6; ++trial) {
        const GroupElementCont a{0.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        const GroupElementCont b{0.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
        const CMat lhs = pi_cont(group_mul_cont(a, b), sp);
        const CMat rhs = pi_cont(a, sp) * pi_cont(b, sp);
        CHECK(max_abs((lhs - rhs).topLeftCorner(20, 20)) <= 1e-8);
    }
}

TEST_CASE("group law") {
    const GroupElementCont a{0.3, 0.7, -0.4}, b{-0.1, -0.2, 0.9};
    const GroupElementCont ab = group_mul_cont(a, b);
    CHECK(ab.q == doctest::Approx(0.5));
    CHECK(ab.p == doctest::Approx(0.5));
    const GroupElementCont e = group_mul_cont(a, group_inv_cont(a));
    CHECK(e.t == 0.0);
    CHECK(e.q == 0.0);
    CHECK(e.p == 0.0);
}

TEST_CASE("random density states") {
    FockSpace sp(16, 12);
    DensityOperator pure = random_density(sp, 1, 9);
    const CMat t = pure.entries();
    CHECK(std::abs(t.trace() - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(max_abs(t * t - t) <= 1e-12);

    DensityOperator again = random_density(sp, 1, 9);
    CHECK(max_abs(t - again.entries()) == 0.0);

    DensityOperator r3 = random_density(sp, 3, 5);
    Eigen::SelfAdjointEigenSolver<CMat> es(r3.entries());
    int above = 0;
    for (int i = 0; i < 16; ++i)
        if (es.eigenvalues()[i] > 1e-10) ++above;
    CHECK(above == 3);

    CHECK_THROWS_AS(random_density(sp, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_density(sp, 17, 1), std::invalid_argument);
}

TEST_CASE("density operator validation") {
    CMat bad = CMat::Zero(4, 4);
    bad(0, 1) = 1.0;  // not Hermitian
    bad(0, 0) = 1.0;
    CHECK_THROWS_AS(DensityOperator{bad}, InvalidStateError);

    CMat neg = CMat::Zero(4, 4);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;  // negative eigenvalue
    CHECK_THROWS_AS(DensityOperator{neg}, InvalidStateError);

    CMat off = CMat::Identity(4, 4);  // trace 4
    CHECK_THROWS_AS(DensityOperator{off}, InvalidStateError);

    CMat ok = CMat::Zero(4, 4);
    ok(0, 0) = 0.25;
    ok(1, 1) = 0.75;
    CHECK_NOTHROW(DensityOperator{ok});
}

TEST_CASE("embedding and support") {
    CMat small = CMat::Identity(3, 3) / 3.0;
    const CMat big = embed_block(small, 8);
    CHECK(big.rows() == 8);
    CHECK(max_abs(big.topLeftCorner(3, 3) - small) == 0.0);
    CHECK(big.bottomRightCorner(5, 5).cwiseAbs().sum() == 0.0);

    CVec v = CVec::Zero(10);
    v[4] = 1e-3;
    CHECK(support_dim(v) == 5);
    CHECK(support_dim(CVec::Zero(10)) == 0);
}
