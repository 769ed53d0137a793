#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "srso3/checks.hpp"
#include "srso3/detail/cut_time.hpp"
#include "srso3/geodesic.hpp"
#include "srso3/kernels.hpp"
#include "srso3/rng.hpp"

using namespace srso3;

TEST_CASE("backend selection") {
    kernels::force_backend("scalar");
    CHECK(std::strcmp(kernels::active_backend().name, "scalar") == 0);
    if (kernels::avx2_available()) {
        kernels::force_backend("avx2");
        CHECK(std::strcmp(kernels::active_backend().name, "avx2") == 0);
    } else {
        CHECK_THROWS_AS(kernels::force_backend("avx2"), std::runtime_error);
    }
    CHECK_THROWS_AS(kernels::force_backend("sse9"), std::invalid_argument);
    kernels::force_backend("auto");
}

TEST_CASE("scalar batch matches the single-point solver bit for bit") {
    Rng rng(41);
    std::vector<double> beta(257);
    for (auto& b : beta) b = rng.uniform(-8, 8);
    beta[0] = 0.0;
    beta[1] = detail::inv_sqrt3();
    std::vector<double> t1(beta.size());
    std::vector<unsigned char> br(beta.size());
    kernels::scalar_backend().cut_time_batch(beta.data(), beta.size(), t1.data(),
                                             br.data());
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const auto ref = detail::cut_time_scalar(beta[i]);
        CHECK(t1[i] == ref.t1);
        CHECK(br[i] == static_cast<unsigned char>(ref.branch));
    }
}

TEST_CASE("project batch matches the closed form first column") {
    Rng rng(42);
    for (const auto* backend :
         {&kernels::scalar_backend(),
          kernels::avx2_available() ? &kernels::avx2_backend() : nullptr}) {
        if (!backend) continue;
        const double phi0 = rng.uniform(0, 2 * M_PI);
        const double beta = rng.uniform(-4, 4);
        std::vector<double> ts(133), x(133), y(133), z(133);
        for (auto& t : ts) t = rng.uniform(0, 10);
        backend->project_batch(phi0, beta, ts.data(), ts.size(), x.data(), y.data(),
                               z.data());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const Rotation g = geodesic_closed_form(GeodesicParam(phi0, beta), ts[i]);
            CHECK(std::abs(x[i] - g(0, 0)) < 1e-13);
            CHECK(std::abs(y[i] - g(1, 0)) < 1e-13);
            CHECK(std::abs(z[i] - g(2, 0)) < 1e-13);
        }
    }
}

TEST_CASE("frobenius gap batch matches a direct evaluation") {
    Rng rng(43);
    const Mat3 target = rng.rotation().matrix();
    std::vector<double> ph(97), be(97), ts(97), gap(97);
    for (std::size_t i = 0; i < ph.size(); ++i) {
        ph[i] = rng.uniform(0, 2 * M_PI);
        be[i] = rng.uniform(-4, 4);
        ts[i] = rng.uniform(0, 8);
    }
    for (const auto* backend :
         {&kernels::scalar_backend(),
          kernels::avx2_available() ? &kernels::avx2_backend() : nullptr}) {
        if (!backend) continue;
        backend->frobenius_gap_batch(ph.data(), be.data(), ts.data(), ph.size(), target,
                                     gap.data());
        for (std::size_t i = 0; i < ph.size(); ++i) {
            const Mat3 g = geodesic_closed_form(GeodesicParam(ph[i], be[i]), ts[i]).matrix();
            double acc = 0.0;
            for (int k = 0; k < 9; ++k) {
                const double d = g.e[static_cast<std::size_t>(k)] -
                                 target.e[static_cast<std::size_t>(k)];
                acc += d * d;
            }
            CHECK(std::abs(gap[i] - acc) < 1e-12);
        }
    }
}

TEST_CASE("kernel equivalence suite passes") {
    for (const auto& r : checks::run_suite("kernels")) {
        INFO(r.id, " value=", r.value, " threshold=", r.threshold, " ", r.detail);
        CHECK(r.pass);
    }
}
