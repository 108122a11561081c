#include "burgerslab/exact.hpp"
#include "burgerslab/profiles.hpp"
#include "burgerslab/util.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

using namespace burgerslab;

namespace {

double integrate(const std::function<double(double)>& f, double a, double b,
                 int cells = 400000) {
    double acc = 0.0;
    const double h = (b - a) / cells;
    for (int i = 0; i < cells; ++i) acc += f(a + (i + 0.5) * h);
    return acc * h;
}

}  // namespace

TEST_CASE("n-wave profile and norms") {
    const double L = 1.5, t = 3.0;
    const double edge = L * std::sqrt(1.0 + t);
    CHECK(n_wave(L, t, -0.1) == 0.0);
    CHECK(n_wave(L, t, edge + 1e-9) == 0.0);
    CHECK(n_wave(L, t, 1.0) == doctest::Approx(0.25).epsilon(1e-15));

    for (double p : {1.0, 2.0, 4.0, 7.5}) {
        const double direct = integrate(
            [&](double y) { return std::pow(n_wave(L, t, y), p); }, 0.0, edge);
        CHECK(n_wave_lp_norm(L, t, p) ==
              doctest::Approx(std::pow(direct, 1.0 / p)).epsilon(1e-8));
    }
    // Mass is conserved; the L1 norm decays like (1+t)^{-1/2} from L^2/2.
    CHECK(n_wave_lp_norm(L, t, 1.0) ==
          doctest::Approx(L * L / 2.0 / std::sqrt(1.0 + t)).epsilon(1e-15));
    CHECK_THROWS(n_wave_lp_norm(L, t, 0.5));
    CHECK_THROWS(n_wave(-1.0, t, 0.0));
}

TEST_CASE("riemann solution") {
    SUBCASE("shock, positive speed") {
        // uL > uR: shock at speed (uL + uR)/2 = 0.5.
        CHECK(riemann_burgers_1d(1.0, 0.0, 2.0, 0.99) == 1.0);
        CHECK(riemann_burgers_1d(1.0, 0.0, 2.0, 1.01) == 0.0);
    }
    SUBCASE("stationary shock") {
        CHECK(riemann_burgers_1d(1.0, -1.0, 5.0, -0.01) == 1.0);
        CHECK(riemann_burgers_1d(1.0, -1.0, 5.0, 0.01) == -1.0);
    }
    SUBCASE("rarefaction fan") {
        CHECK(riemann_burgers_1d(-1.0, 1.0, 2.0, -2.5) == -1.0);
        CHECK(riemann_burgers_1d(-1.0, 1.0, 2.0, 2.5) == 1.0);
        CHECK(riemann_burgers_1d(-1.0, 1.0, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("initial data at t = 0") {
        CHECK(riemann_burgers_1d(2.0, 3.0, 0.0, -1e-12) == 2.0);
        CHECK(riemann_burgers_1d(2.0, 3.0, 0.0, 1e-12) == 3.0);
    }
}

TEST_CASE("profile evaluation and bounds") {
    const auto nw = DataProfile::n_wave(2.0);
    CHECK(nw.dimension() == 1);
    CHECK(nw({1.5}) == 1.5);
    CHECK(nw({2.5}) == 0.0);
    CHECK(nw.value_bounds()[1] == 2.0);
    CHECK(nw.support_bounds()[0][0] == 0.0);
    CHECK(nw.support_bounds()[0][1] == 2.0);

    const auto bx = DataProfile::box(0.7, {0.0, -1.0}, {2.0, 2.0});
    CHECK(bx.dimension() == 2);
    CHECK(bx({1.0, 0.0}) == 0.7);
    CHECK(bx({3.0, 0.0}) == 0.0);

    const auto cn = DataProfile::cone(1.0, {0.0}, 2.0);
    CHECK(cn({0.0}) == 1.0);
    CHECK(cn({1.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cn({2.5}) == 0.0);

    // Scaling: amp * base(stretch * y).
    const auto sc = nw.scaled(3.0, {0.5});
    CHECK(sc({2.0}) == 3.0);  // base(1.0) = 1.0
    CHECK(sc.support_bounds()[0][1] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sc.value_bounds()[1] == doctest::Approx(6.0).epsilon(1e-15));

    const auto sum = DataProfile::sum({nw, cn});
    CHECK(sum({1.0}) == doctest::Approx(1.0 + 0.5).epsilon(1e-15));
    CHECK(sum.support_bounds()[0][0] == -2.0);
    CHECK(sum.support_bounds()[0][1] == 2.0);
}

TEST_CASE("profile json round trip") {
    const auto p = DataProfile::sum(
        {DataProfile::inv_sqrt().clipped(4.0), DataProfile::cone(0.5, {0.25}, 1.0)})
                       .scaled(2.0, {1.5});
    const auto q = DataProfile::from_json(p.to_json());
    CHECK(q.dimension() == 1);
    for (double y : {-0.9, -0.3, 0.01, 0.2, 0.55, 0.99}) CHECK(q({y}) == p({y}));
    CHECK_THROWS_AS(DataProfile::from_json(nlohmann::json{{"kind", "mystery"}}), ConfigError);
}

TEST_CASE("clipped inverse square root obeys the truncation identity") {
    // u_m = min(|y|^{-1/2}, m) on |y| < 1:  || u_{2m} - u_m ||_1 = 1/m.
    for (double m : {2.0, 5.0}) {
        const auto um = truncate_data(DataProfile::inv_sqrt(), m);
        const auto u2m = truncate_data(DataProfile::inv_sqrt(), 2.0 * m);
        const double dist = integrate(
            [&](double y) { return u2m({y}) - um({y}); }, -1.0, 1.0, 2000000);
        CHECK(dist == doctest::Approx(1.0 / m).epsilon(1e-4));
        CHECK(um.value_bounds()[1] == m);
        CHECK(std::isinf(DataProfile::inv_sqrt().value_bounds()[1]));
    }
}
