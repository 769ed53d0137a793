#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "srso3/checks.hpp"
#include "srso3/geodesic.hpp"
#include "srso3/rng.hpp"
#include "support/oracles.hpp"

using namespace srso3;

TEST_CASE("beta = 0 geodesic is the planar rotation exp(t a)") {
    for (const double t : {0.4, 1.7, M_PI}) {
        const Rotation g = geodesic_product(GeodesicParam(0.0, 0.0), t);
        Mat3 expect;
        expect(0, 0) = std::cos(t);
        expect(0, 1) = -std::sin(t);
        expect(1, 0) = std::sin(t);
        expect(1, 1) = std::cos(t);
        expect(2, 2) = 1.0;
        CHECK(g.matrix().max_abs_diff(expect) < 1e-15);
    }
    // endpoint of the beta = 0 shortest arc
    const Rotation gp = geodesic_product(GeodesicParam(0.0, 0.0), M_PI);
    CHECK(std::abs(gp(0, 0) + 1.0) < 1e-15);
    CHECK(std::abs(gp(1, 1) + 1.0) < 1e-15);
    CHECK(std::abs(gp(2, 2) - 1.0) < 1e-15);
}

TEST_CASE("product and closed form agree") {
    const GeodesicParam p(0.4, 0.9);
    CHECK(geodesic_product(p, 1.3).max_abs_diff(geodesic_closed_form(p, 1.3)) < 1e-12);
}

TEST_CASE("mn coefficients") {
    const auto m0 = mn(0.0, M_PI);
    CHECK(std::abs(m0.m) < 1e-15);
    CHECK(std::abs(m0.n - 2.0) < 1e-15);

    const auto mz = mn(3.7, 0.0);
    CHECK(mz.m == 0.0);
    CHECK(mz.n == 0.0);

    const auto mp = mn(1.0, 2.0 * M_PI / std::sqrt(2.0));
    CHECK(std::abs(mp.m) < 1e-15);
    CHECK(std::abs(mp.n) < 1e-15);

    // m^2 w^2 + (1 - n w^2)^2 = 1
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const double beta = rng.uniform(-5, 5), t = rng.uniform(0, 7);
        const auto [m, n] = mn(beta, t);
        const double w2 = 1.0 + beta * beta;
        CHECK(std::abs(m * m * w2 + (1.0 - n * w2) * (1.0 - n * w2) - 1.0) < 1e-12);
    }
}

TEST_CASE("closed form: first column and t = 0") {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-4, 4));
        const double t = rng.uniform(0, 6);
        const auto [m, n] = mn(p.beta, t);
        const Rotation g = geodesic_closed_form(p, t);
        CHECK(std::abs(g(0, 0) - (1.0 - n)) < 1e-14);
        CHECK(std::abs(g(1, 0) - (m * std::cos(p.phi0) - p.beta * n * std::sin(p.phi0))) <
              1e-14);
        CHECK(std::abs(g(2, 0) - (m * std::sin(p.phi0) + p.beta * n * std::cos(p.phi0))) <
              1e-14);
    }
    CHECK(geodesic_closed_form(GeodesicParam(2.2, -1.4), 0.0)
              .max_abs_diff(Rotation::identity()) == 0.0);
}

TEST_CASE("closed form matches the conjugated factorization times exp(-t beta c)") {
    const double beta = 2.0, t = 0.5;
    const Mat3 lhs = geodesic_closed_form(GeodesicParam(0.0, beta), t).matrix();
    const Mat3 rhs = testing::conjugated_rotation_product(beta, t) *
                     exp(LieVector{0, 0, -t * beta}).matrix();
    CHECK(lhs.max_abs_diff(rhs) < 1e-14);
}

TEST_CASE("ODE integrator") {
    CHECK(geodesic_ode(GeodesicParam(0.0, 0.0), M_PI, 1e-3)
              .matrix()
              .max_abs_diff(exp(LieVector{M_PI, 0, 0}).matrix()) < 1e-8);
    CHECK(geodesic_ode(GeodesicParam(1.0, 2.0), 0.0, 0.5)
              .max_abs_diff(Rotation::identity()) == 0.0);
    const GeodesicParam p(1.1, -0.7);
    CHECK(geodesic_ode(p, 2.0, 1e-3).max_abs_diff(geodesic_closed_form(p, 2.0)) < 1e-8);
    CHECK_THROWS_AS(geodesic_ode(p, 1.0, 0.0), std::domain_error);
    // negative times integrate backwards
    CHECK(geodesic_ode(p, -1.5, 1e-3).max_abs_diff(geodesic_closed_form(p, -1.5)) < 1e-8);
}

TEST_CASE("restart") {
    const GeodesicParam p(0.2, 0.5);
    const GeodesicParam r0 = restart(p, 0.0);
    CHECK(r0.phi0 == p.phi0);
    CHECK(r0.beta == p.beta);

    const GeodesicParam r1 = restart(p, 1.0);
    CHECK(std::abs(r1.phi0 - 0.7) < 1e-15);
    CHECK(r1.beta == 0.5);

    const GeodesicParam q(0.3, -1.2);
    const Rotation lhs =
        geodesic_closed_form(q, 0.8).inverse() * geodesic_closed_form(q, 0.8 + 0.6);
    const Rotation rhs = geodesic_closed_form(restart(q, 0.8), 0.6);
    CHECK(lhs.max_abs_diff(rhs) < 1e-12);
}

TEST_CASE("reverse_sign") {
    {
        const auto [q, s] = reverse_sign(GeodesicParam(0.0, 0.4), 1.5);
        CHECK(std::abs(q.phi0 - M_PI) < 1e-15);
        CHECK(q.beta == -0.4);
        CHECK(s == -1.5);
        CHECK(geodesic_closed_form(q, s).max_abs_diff(
                  geodesic_closed_form(GeodesicParam(0.0, 0.4), 1.5)) < 1e-12);
    }
    {
        // beta = 0: exp(-t * (-a)) = exp(t a)
        const auto [q, s] = reverse_sign(GeodesicParam(0.0, 0.0), 2.0);
        CHECK(geodesic_closed_form(q, s).max_abs_diff(
                  geodesic_closed_form(GeodesicParam(0.0, 0.0), 2.0)) < 1e-13);
    }
    {
        const GeodesicParam p(1.9, -0.8);
        const auto [q, s] = reverse_sign(p, 1.1);
        const auto [q2, s2] = reverse_sign(q, s);
        CHECK(std::abs(q2.phi0 - p.phi0) < 1e-15);
        CHECK(q2.beta == p.beta);
        CHECK(s2 == 1.1);
    }
}

TEST_CASE("conjugate_phase") {
    const GeodesicParam base(0.0, 0.6);
    CHECK(conjugate_phase(base, 0.0, 1.0).max_abs_diff(
              geodesic_closed_form(GeodesicParam(0.0, 0.6), 1.0)) < 1e-14);
    CHECK(conjugate_phase(base, 2.0, 1.0).max_abs_diff(
              geodesic_closed_form(GeodesicParam(2.0, 0.6), 1.0)) < 1e-12);

    const Mat3 b = exp(LieVector{0, 0, 0.5 * M_PI}).matrix();
    Mat3 expect;
    expect(0, 0) = 1.0;
    expect(1, 2) = -1.0;
    expect(2, 1) = 1.0;
    CHECK(b.max_abs_diff(expect) < 1e-15);
}

TEST_CASE("parameter normalization and validation") {
    CHECK(GeodesicParam(2.0 * M_PI + 0.25, 0.0).phi0 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(GeodesicParam(-0.25, 0.0).phi0 == doctest::Approx(2.0 * M_PI - 0.25));
    CHECK(GeodesicParam(0.0, 1.0).phi0 == 0.0);
    CHECK_THROWS_AS(GeodesicParam(0.0, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(GeodesicParam(std::numeric_limits<double>::infinity(), 0.0),
                    std::domain_error);
}

TEST_CASE("geodesic invariant suite passes") {
    for (const auto& r : checks::run_suite("geodesic")) {
        INFO(r.id, " value=", r.value, " threshold=", r.threshold);
        CHECK(r.pass);
    }
}
