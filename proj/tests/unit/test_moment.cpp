#include "burgerslab/moment.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#ifdef HAVE_EIGEN_ORACLE
#include <Eigen/Cholesky>
#include <Eigen/Dense>
#endif

using namespace burgerslab;

TEST_CASE("hilbert determinants, exact") {
    CHECK(hilbert_det(1) == Rational(1));
    CHECK(hilbert_det(2) == Rational(1, 12));
    CHECK(hilbert_det(3) == Rational(1, 2160));
    // d = 4 known value 1/6048000.
    CHECK(hilbert_det(4) == Rational(1, 6048000));
    CHECK_THROWS_AS(hilbert_det(0), std::invalid_argument);
    CHECK_THROWS_AS(hilbert_det(13), std::invalid_argument);
    CHECK_NOTHROW(hilbert_det(12));
}

TEST_CASE("vandermonde moment matrix and exact determinant") {
    const auto m = vandermonde_moment_exact(Rational(2), 2);
    CHECK(m.at(0, 0) == Rational(2));
    CHECK(m.at(0, 1) == Rational(2));
    CHECK(m.at(1, 1) == Rational(8, 3));
    CHECK(det_exact(m) == Rational(4, 3));
}

TEST_CASE("determinant identity det M(a) = H_d a^{d^2}") {
    const Rational as[] = {Rational(-2), Rational(-1, 2), Rational(0), Rational(1, 3),
                           Rational(1),  Rational(5)};
    for (int d = 2; d <= 6; ++d)
        for (const auto& a : as) CHECK(det_identity_holds(a, d));
}

TEST_CASE("bareiss handles zero pivots and float LU agrees") {
    RationalMatrix m(3);
    // Leading pivot zero; a row swap is required and flips the sign.
    m.at(0, 0) = 0; m.at(0, 1) = 2; m.at(0, 2) = 1;
    m.at(1, 0) = 1; m.at(1, 1) = 0; m.at(1, 2) = 3;
    m.at(2, 0) = 4; m.at(2, 1) = 1; m.at(2, 2) = 0;
    // det = 0*(0-3) - 2*(0-12) + 1*(1-0) = 25
    CHECK(det_exact(m) == Rational(25));

    RealMatrix r(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = static_cast<double>(m.at(i, j));
    CHECK(det_lu(r) == doctest::Approx(25.0).epsilon(1e-14));

    RationalMatrix singular(2);
    singular.at(0, 0) = 1; singular.at(0, 1) = 2;
    singular.at(1, 0) = 2; singular.at(1, 1) = 4;
    CHECK(det_exact(singular) == Rational(0));
}

#ifdef HAVE_EIGEN_ORACLE
TEST_CASE("bareiss matches eigen on dense rational-free matrices") {
    for (int d = 2; d <= 7; ++d) {
        RationalMatrix m(d);
        Eigen::MatrixXd em(d, d);
        // Deterministic non-symmetric integer entries.
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const int v = ((i + 1) * (j + 2) * 7 + i * i - 3 * j) % 11 - 5;
                m.at(i, j) = Rational(v);
                em(i, j) = v;
            }
        CHECK(to_double(det_exact(m)) ==
              doctest::Approx(em.determinant()).epsilon(1e-10));
    }
}

TEST_CASE("moment matrices are positive definite for a > 0") {
    for (int d = 2; d <= 6; ++d) {
        const auto m = vandermonde_moment(1.7, d);
        Eigen::MatrixXd em(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) em(i, j) = m.at(i, j);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(em);
        REQUIRE(es.info() == Eigen::Success);
        const double floor = -1e-12 * em.norm();
        CHECK(es.eigenvalues().minCoeff() >= floor);
        Eigen::LLT<Eigen::MatrixXd> llt(em);
        CHECK(llt.info() == Eigen::Success);
    }
}
#endif

TEST_CASE("general moment matrix agrees between exact and float routes") {
    const auto spec = FluxSpec::monomial({2, 5});
    const Rational a(3, 2);
    const auto exact = general_moment_exact(spec, a);
    const auto approx = general_moment(spec, to_double(a));
    REQUIRE(exact.dim == 3);
    REQUIRE(approx.dim == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(approx.at(i, j) ==
                  doctest::Approx(to_double(exact.at(i, j))).epsilon(1e-13));
    CHECK_THROWS_AS(general_moment_exact(FluxSpec::polynomial({{0.0, 0.0, 1.0}}), a),
                    std::invalid_argument);
}

TEST_CASE("capital delta matches the closed form for burgers families") {
    for (int d = 2; d <= 4; ++d) {
        const auto spec = FluxSpec::burgers(d);
        const int n = d - 1;
        for (double a : {0.25, 1.0, 1.9}) {
            const double expected =
                std::pow(to_double(hilbert_det(d)), 1.0 / n) * std::pow(a, double(d) * d / n);
            CHECK(capital_delta(spec, a) == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(capital_delta(spec, 0.0) == 0.0);
    }
    CHECK_THROWS_AS(capital_delta(FluxSpec::burgers(2), -1.0), std::invalid_argument);
}

TEST_CASE("delta evaluator is consistent and clamps degenerate families") {
    const auto spec = FluxSpec::monomial({2, 9, 11});
    const DeltaEvaluator delta(spec);
    for (double a : {0.1, 0.7, 1.3})
        CHECK(delta(a) == doctest::Approx(capital_delta(spec, a)).epsilon(1e-12));

    // Two identical components make M(a) exactly singular; the evaluator
    // clamps the round-off determinant to zero instead of throwing.
    const auto degenerate = FluxSpec::polynomial({{0.0, 0.0, 0.5}, {0.0, 0.0, 0.5}});
    const DeltaEvaluator dd(degenerate);
    CHECK(dd(1.0) == 0.0);
}
