#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "srso3/checks.hpp"
#include "srso3/rng.hpp"
#include "srso3/so3.hpp"
#include "support/oracles.hpp"

using namespace srso3;

namespace {
Mat3 diag(double a, double b, double c) {
    Mat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}
} // namespace

TEST_CASE("basis matrices match e_ij - e_ji") {
    const Basis bs = basis();
    const Mat3 ma = bs.a.to_matrix();
    CHECK(ma(1, 0) == 1.0);
    CHECK(ma(0, 1) == -1.0);
    CHECK(ma(0, 0) == 0.0);
    CHECK(ma(2, 2) == 0.0);
    CHECK(ma(2, 0) == 0.0);
    CHECK(ma(1, 2) == 0.0);

    const Mat3 mc = bs.c.to_matrix();
    CHECK(mc(2, 1) == 1.0);
    CHECK(mc(1, 2) == -1.0);
    CHECK(mc(0, 1) == 0.0);
    CHECK(mc(1, 0) == 0.0);

    for (const LieVector& v : {bs.a, bs.b, bs.c}) {
        const Mat3 m = v.to_matrix();
        CHECK((m + m.transposed()).max_abs_diff(Mat3::zero()) == 0.0);
    }
}

TEST_CASE("coefficients round trip through the skew matrix exactly") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const LieVector x = rng.lie_vector(10.0);
        const LieVector y = LieVector::from_skew(x.to_matrix());
        CHECK(x.xa == y.xa);
        CHECK(x.xb == y.xb);
        CHECK(x.xc == y.xc);
    }
}

TEST_CASE("bracket relations") {
    const Basis bs = basis();
    const LieVector ab = bracket(bs.a, bs.b);
    CHECK(ab.xa == 0.0);
    CHECK(ab.xb == 0.0);
    CHECK(ab.xc == 1.0);

    const LieVector aa = bracket(bs.a, bs.a);
    CHECK(aa.norm() == 0.0);

    const LieVector ca = bracket(bs.c, bs.a);
    CHECK(ca.xb == 1.0);
    CHECK(ca.xa == 0.0);
    CHECK(ca.xc == 0.0);

    // matches the matrix commutator
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const LieVector x = rng.lie_vector(3.0), y = rng.lie_vector(3.0);
        const Mat3 comm = x.to_matrix() * y.to_matrix() - y.to_matrix() * x.to_matrix();
        CHECK(bracket(x, y).to_matrix().max_abs_diff(comm) < 1e-14);
    }
}

TEST_CASE("Jacobi identity is exact in structure-constant arithmetic") {
    // small integer coefficients keep every product exact in doubles
    for (int xa = -2; xa <= 2; ++xa)
        for (int yb = -2; yb <= 2; ++yb)
            for (int zc = -2; zc <= 2; ++zc) {
                const LieVector x{double(xa), 1.0, -2.0};
                const LieVector y{3.0, double(yb), 1.0};
                const LieVector z{-1.0, 2.0, double(zc)};
                const LieVector j = bracket(x, bracket(y, z)) +
                                    bracket(y, bracket(z, x)) +
                                    bracket(z, bracket(x, y));
                CHECK(j.xa == 0.0);
                CHECK(j.xb == 0.0);
                CHECK(j.xc == 0.0);
            }
}

TEST_CASE("ad matrices of the basis") {
    const Basis bs = basis();
    CHECK(ad_matrix(bs.c).max_abs_diff(bs.a.to_matrix()) == 0.0);
    CHECK(ad_matrix(bs.b).max_abs_diff(bs.b.to_matrix() * -1.0) == 0.0);
    CHECK(ad_matrix(bs.a).max_abs_diff(bs.c.to_matrix()) == 0.0);
    CHECK(ad_matrix(LieVector{}).max_abs_diff(Mat3::zero()) == 0.0);
}

TEST_CASE("exp: special values") {
    CHECK(exp(LieVector{}).max_abs_diff(Rotation::identity()) == 0.0);
    CHECK(exp(LieVector{M_PI, 0, 0}).max_abs_diff(
              Rotation(diag(-1, -1, 1), Rotation::unchecked_t{})) < 1e-15);
}

TEST_CASE("exp matches the conjugated planar rotation factorization") {
    for (const auto& [beta, t] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {-0.7, 2.2}}) {
        const Rotation lhs = exp(LieVector{t, 0.0, t * beta});
        const Mat3 rhs = testing::conjugated_rotation_product(beta, t);
        CHECK(lhs.matrix().max_abs_diff(rhs) < 1e-14);
    }
}

TEST_CASE("exp agrees with the Taylor oracle, including tiny angles") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const LieVector x = rng.lie_vector(i < 100 ? 3.0 : 1e-5);
        CHECK(exp(x).matrix().max_abs_diff(testing::expm_taylor(x.to_matrix())) < 1e-14);
    }
}

TEST_CASE("log: special values and the angle-pi branch") {
    CHECK(log(Rotation::identity()).norm() == 0.0);

    const LieVector lp = log(exp(LieVector{M_PI, 0, 0}));
    CHECK(std::abs(lp.norm() - M_PI) < 1e-12);
    CHECK(std::abs(std::abs(lp.xa) - M_PI) < 1e-12); // either sign accepted

    const LieVector lb = log(exp(LieVector{0, 0.7, 0}));
    CHECK(std::abs(lb.xb - 0.7) < 1e-12);
    CHECK(std::abs(lb.xa) < 1e-12);
    CHECK(std::abs(lb.xc) < 1e-12);

    // angles just below pi exercise the quadratic axis extraction
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const Vec3 u = rng.unit_vector();
        const double angle = M_PI - rng.uniform(0.0, 1e-7);
        const LieVector x{angle * u.x, angle * u.y, angle * u.z};
        const Rotation r = exp(x);
        CHECK(exp(log(r)).max_abs_diff(r) < 1e-9);
    }
}

TEST_CASE("log rejects non-orthogonal input") {
    Mat3 bad = Mat3::identity();
    bad(0, 1) = 1e-4;
    CHECK_THROWS_AS(log_matrix(bad, 1e-8), InvalidRotation);
    CHECK_THROWS_AS(Rotation::from_matrix(bad, 1e-12), InvalidRotation);
}

TEST_CASE("Ad: conjugation action in coefficients") {
    const Basis bs = basis();
    Rng rng(5);

    // Ad(exp(phi0 c)) rotates (a, b) by phi0 and fixes c
    for (const double phi0 : {0.3, 1.2, 4.0}) {
        const double beta = rng.uniform(-2, 2);
        const LieVector out = Ad(exp(LieVector{0, 0, phi0}), bs.a + beta * bs.c);
        CHECK(std::abs(out.xa - std::cos(phi0)) < 1e-15);
        CHECK(std::abs(out.xb - std::sin(phi0)) < 1e-15);
        CHECK(std::abs(out.xc - beta) < 1e-15);
    }

    const LieVector x = rng.lie_vector(2.0);
    const LieVector same = Ad(Rotation::identity(), x);
    CHECK(std::abs(same.xa - x.xa) == 0.0);

    // tilting the rotation axis into the horizontal plane:
    // Ad(exp(-xi b)) maps t*w*a to t*(a + beta*c) for cos xi = 1/w
    for (const double beta : {0.5, 2.0}) {
        const double w = std::sqrt(1.0 + beta * beta);
        const double xi = std::atan2(beta / w, 1.0 / w);
        const double t = 0.9;
        const LieVector out = Ad(exp(LieVector{0, -xi, 0}), LieVector{t * w, 0, 0});
        CHECK(std::abs(out.xa - t) < 1e-14);
        CHECK(std::abs(out.xb) < 1e-14);
        CHECK(std::abs(out.xc - t * beta) < 1e-14);
    }
}

TEST_CASE("Ad preserves the bracket") {
    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        const Rotation g = rng.rotation();
        const LieVector x = rng.lie_vector(2.0), y = rng.lie_vector(2.0);
        const LieVector lhs = Ad(g, bracket(x, y));
        const LieVector rhs = bracket(Ad(g, x), Ad(g, y));
        CHECK((lhs - rhs).norm() < 1e-13);
    }
}

TEST_CASE("orthonormalize projects a perturbed rotation back to SO(3)") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Mat3 m = rng.rotation().matrix();
        for (double& v : m.e) v += rng.uniform(-1e-6, 1e-6);
        const Mat3 p = orthonormalize(m);
        CHECK(Rotation(p, Rotation::unchecked_t{}).orthogonality_defect() < 1e-14);
    }
}

TEST_CASE("so3 invariant suite passes") {
    for (const auto& r : checks::run_suite("so3")) {
        INFO(r.id, " value=", r.value, " threshold=", r.threshold);
        CHECK(r.pass);
    }
}
