#include "srso3/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "srso3/cut_locus.hpp"
#include "srso3/distance.hpp"
#include "srso3/geodesic.hpp"
#include "srso3/kernels.hpp"
#include "srso3/rng.hpp"
#include "srso3/sphere.hpp"

namespace srso3::checks {

namespace {

using Clock = std::chrono::steady_clock;

double inv_sqrt3() { return detail::inv_sqrt3(); }

struct Recorder {
    std::vector<CheckResult>& out;
    std::string suite;
    double scale;

    // pass when value <= threshold * scale
    CheckResult& le(const std::string& id, double value, double threshold,
                    std::string detail = {}) {
        CheckResult r;
        r.suite = suite;
        r.id = id;
        r.value = value;
        r.threshold = threshold * scale;
        r.pass = value <= r.threshold;
        r.detail = std::move(detail);
        out.push_back(std::move(r));
        return out.back();
    }

    // pass when value > threshold (threshold not scaled down: a floor)
    CheckResult& gt(const std::string& id, double value, double threshold,
                    std::string detail = {}) {
        CheckResult r;
        r.suite = suite;
        r.id = id;
        r.value = value;
        r.threshold = threshold;
        r.pass = value > threshold;
        r.detail = std::move(detail);
        out.push_back(std::move(r));
        return out.back();
    }
};

class Timer {
public:
    Timer() : start_(Clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

private:
    Clock::time_point start_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double wrap_pi(double x) {
    double r = std::remainder(x, 2.0 * M_PI);
    return r;
}

// Scaling-and-squaring Taylor matrix exponential; independent of the
// Rodrigues closed form it cross-checks.
Mat3 expm_taylor(Mat3 a) {
    double norm = 0.0;
    for (double v : a.e) norm += std::abs(v);
    int squarings = 0;
    while (norm > 0.25 && squarings < 60) {
        a = a * 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Mat3 sum = Mat3::identity();
    Mat3 term = Mat3::identity();
    for (int k = 1; k <= 40; ++k) {
        term = term * a * (1.0 / k);
        sum = sum + term;
        double tn = 0.0;
        for (double v : term.e) tn = std::max(tn, std::abs(v));
        if (tn < 1e-22) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// ---------------------------------------------------------------- acceptance

void acceptance_suite(Recorder& rec, const CheckOptions& opt) {
    // 1. diameter over a 10^4-point atan grid, peak refined
    {
        Timer timer;
        const DiameterCheck dc =
            diameter_check(DiameterGrid{-5.0, 5.0, 10000, true}, opt.jobs);
        const double dev = std::abs(dc.refined_max - diameter());
        const double argdev = std::abs(std::abs(dc.refined_argmax) - inv_sqrt3());
        auto& r = rec.le("1-diameter", dev, 1e-6,
                         "argmax=" + fmt(dc.refined_argmax) + " grid_max=" +
                             fmt(dc.grid_max) + " |argmax|-1/sqrt3=" + fmt(argdev));
        r.pass = r.pass && argdev <= 1e-3 * rec.scale;
        r.seconds = timer.seconds();
    }

    // 2. known cut times
    {
        Timer timer;
        const double v0 = std::abs(cut_time(0.0).t1 - M_PI);
        const double v1 = std::abs(cut_time(1.0).t1 - M_PI * std::sqrt(2.0));
        const double v2 = std::abs(cut_time(inv_sqrt3()).t1 - M_PI * std::sqrt(3.0));
        auto& r = rec.le("2-known-cut-times", std::max(v1, v2), 1e-12,
                         "t1(0) dev=" + fmt(v0) + " (exact required)");
        r.pass = r.pass && v0 == 0.0;
        r.seconds = timer.seconds();
    }

    // 3. formula cross-checks
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x3a11ULL);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-5, 5));
            const double t = rng.uniform(0, 2 * M_PI);
            worst = std::max(worst, geodesic_product(p, t).max_abs_diff(
                                        geodesic_closed_form(p, t)));
        }
        rec.le("3a-product-vs-closed", worst, 1e-10).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x3b22ULL);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-5, 5));
            const double t = rng.uniform(0, 2 * M_PI);
            worst = std::max(worst, geodesic_ode(p, t, 1e-3).max_abs_diff(
                                        geodesic_closed_form(p, t)));
        }
        rec.le("3b-ode-vs-closed", worst, 1e-7).seconds = timer.seconds();
    }

    // 4. Gauss–Bonnet closure on the digon family
    {
        Timer timer;
        double worst_gb = 0.0, worst_pi = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double beta = (k + 0.5) / 20.0 * inv_sqrt3();
            const double t1 = cut_time(beta).t1;
            worst_gb = std::max(worst_gb, gauss_bonnet_residual(beta, t1, 20000));
            worst_pi = std::max(worst_pi, std::abs(digon(beta, t1).area - M_PI));
        }
        const double secs = timer.seconds();
        rec.le("4a-gauss-bonnet-area", worst_gb, 1e-6).seconds = secs;
        rec.le("4b-cut-area-pi", worst_pi, 1e-9).seconds = 0.0;
    }

    // 5. signed geodesic curvature of projections
    {
        Timer timer;
        double worst = 0.0;
        for (const double beta : {0.25, 0.5, 1.0, 2.0}) {
            const double w = std::sqrt(1.0 + beta * beta);
            const int n = 1000;
            std::vector<S2Point> pts(n + 1);
            for (int i = 0; i <= n; ++i) {
                const double t = 2.0 * M_PI / w * i / n;
                pts[i] = project(geodesic_closed_form(GeodesicParam(0.0, beta), t));
            }
            const double kappa = geodesic_curvature_numeric(pts);
            worst = std::max(worst, std::abs(kappa - (-beta)));
        }
        rec.le("5-curvature", worst, 1e-4).seconds = timer.seconds();
    }

    // 6. conjugate set = SO(2) \ {e}
    {
        Timer timer;
        const std::size_t n = 1000;
        double worst_so2 = 0.0;
        double min_identity_gap = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = std::atan(inv_sqrt3()) +
                              (std::atan(50.0) - std::atan(inv_sqrt3())) *
                                  static_cast<double>(i) / static_cast<double>(n - 1);
            for (const double sgn : {1.0, -1.0}) {
                const Rotation e = cut_endpoint(sgn * std::tan(xi));
                double dev = 0.0;
                dev = std::max(dev, std::abs(e(0, 0) - 1.0));
                for (int k = 1; k < 3; ++k) {
                    dev = std::max(dev, std::abs(e(k, 0)));
                    dev = std::max(dev, std::abs(e(0, k)));
                }
                worst_so2 = std::max(worst_so2, dev);
                min_identity_gap =
                    std::min(min_identity_gap, e.max_abs_diff(Rotation::identity()));
            }
        }
        auto& r = rec.le("6a-conjugate-in-so2", worst_so2, 1e-10,
                         "min gap to identity=" + fmt(min_identity_gap));
        r.pass = r.pass && min_identity_gap > 1e-9;
        r.seconds = timer.seconds();
    }
    {
        Timer timer;
        const std::size_t n = 1001;
        double min_dev = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            const double beta = -(inv_sqrt3() - 1e-6) +
                                2.0 * (inv_sqrt3() - 1e-6) * static_cast<double>(i) /
                                    static_cast<double>(n - 1);
            const Rotation e = cut_endpoint(beta);
            const double dev = std::hypot(e(1, 0), e(2, 0)) + std::abs(e(0, 0) - 1.0);
            min_dev = std::min(min_dev, dev);
        }
        rec.gt("6b-cut-not-in-so2", min_dev, 1e-3).seconds = timer.seconds();
    }

    // 7. cut points double covered
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x7c33ULL);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            double beta;
            if (i == 0)
                beta = inv_sqrt3();
            else if (i == 1)
                beta = -inv_sqrt3();
            else if (i == 2)
                beta = 0.0;
            else
                beta = rng.uniform(-inv_sqrt3(), inv_sqrt3());
            const double phi0 = rng.uniform(0, 2 * M_PI);
            const double t1 = cut_time(beta).t1;
            const auto [phi0p, betap] = cut_symmetry_partner(phi0, beta);
            const Rotation g1 = geodesic_closed_form(GeodesicParam(phi0, beta), t1);
            const Rotation g2 = geodesic_closed_form(GeodesicParam(phi0p, betap),
                                                     cut_time(betap).t1);
            worst = std::max(worst, g1.max_abs_diff(g2));
        }
        rec.le("7-cut-double-cover", worst, 1e-9).seconds = timer.seconds();
    }

    // 8. monotone on both sides of the peak
    {
        Timer timer;
        int violations = 0;
        const std::size_t n = 1000;
        double prev = cut_time(0.0).t1;
        for (std::size_t i = 1; i < n; ++i) {
            const double beta = inv_sqrt3() * static_cast<double>(i) /
                                static_cast<double>(n - 1);
            const double t1 = cut_time(beta).t1;
            if (!(t1 > prev)) ++violations;
            prev = t1;
        }
        prev = cut_time(inv_sqrt3()).t1;
        for (std::size_t i = 1; i < n; ++i) {
            const double beta = inv_sqrt3() +
                                (5.0 - inv_sqrt3()) * static_cast<double>(i) /
                                    static_cast<double>(n - 1);
            const double t1 = cut_time(beta).t1;
            if (!(t1 < prev)) ++violations;
            prev = t1;
        }
        rec.le("8-monotonicity", violations, 0.0).seconds = timer.seconds();
    }

    // 9. logarithm round trip
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x9d44ULL);
        double worst = 0.0, worst_dist = 0.0;
        int failures = 0;
        for (int i = 0; i < 1000; ++i) {
            const double xi = rng.uniform(-std::atan(5.0), std::atan(5.0));
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), std::tan(xi));
            const double t1 = cut_time(p.beta).t1;
            const double t = rng.uniform(0.02, 0.95) * t1;
            const Rotation g = geodesic_closed_form(p, t);
            try {
                const DistanceResult res = sr_log(g, 1e-9);
                worst = std::max(worst, std::abs(res.distance - t));
                worst_dist = std::max(worst_dist, res.distance);
            } catch (const NoConvergence&) {
                ++failures;
            }
        }
        auto& r = rec.le("9-log-round-trip", worst, 1e-6,
                         "failures=" + std::to_string(failures) +
                             " max distance=" + fmt(worst_dist));
        r.pass = r.pass && failures == 0 && worst_dist <= diameter() + 1e-9;
        r.seconds = timer.seconds();
    }

    // 10. oracle sandwich
    {
        Timer timer;
        Rng rng(opt.seed ^ 0xa055ULL);
        std::vector<Rotation> targets;
        for (int i = 0; i < 10; ++i) {
            const double xi = rng.uniform(-std::atan(5.0), std::atan(5.0));
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), std::tan(xi));
            const double t = rng.uniform(0.1, 0.95) * cut_time(std::tan(xi)).t1;
            targets.push_back(geodesic_closed_form(p, t));
        }
        for (const double beta :
             {0.0, 0.15, 0.25, 0.3, 0.45, 0.55, inv_sqrt3(), 0.8, 1.2, 2.5})
            targets.push_back(cut_endpoint(beta));

        double worst = -1e300;
        std::string worst_id;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const double d = sr_log(targets[i], 1e-9).distance;
            const double b =
                brute_force_distance_detailed(targets[i], 16, 200,
                                              opt.seed + 1000 * i, opt.jobs)
                    .length;
            const double viol = std::max(d - 1e-2 - b, b - d - 5e-2);
            if (viol > worst) {
                worst = viol;
                worst_id = "target " + std::to_string(i) + " d=" + fmt(d) +
                           " bound=" + fmt(b);
            }
        }
        rec.le("10-oracle-sandwich", worst, 0.0, worst_id).seconds = timer.seconds();
    }

    // 11. parallel transport
    {
        Timer timer;
        Rng rng(opt.seed ^ 0xb166ULL);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-2, 2));
            const double t1 = std::min(rng.uniform(0.5, 3.0), 0.9 * cut_time(p.beta).t1);
            worst = std::max(worst, transport_defect(p, t1, 1000));
        }
        rec.le("11a-transport-defect", worst, 1e-4).seconds = timer.seconds();
    }
    {
        Timer timer;
        const double angle = holonomy_angle(1.0, 20000);
        const double area = sector_area(circle_radius(1.0), 2.0 * M_PI);
        const double dev = std::abs(wrap_pi(angle - area));
        rec.le("11b-holonomy-area", dev, 1e-3,
               "angle=" + fmt(angle) + " area=" + fmt(area))
            .seconds = timer.seconds();
    }
}

// ----------------------------------------------------------------- so3 suite

void so3_suite(Recorder& rec, const CheckOptions& opt) {
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x1001ULL);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const Rotation r = exp(rng.lie_vector(10.0));
            worst = std::max({worst, r.orthogonality_defect(), r.det_defect()});
        }
        rec.le("so3-exp-orthogonal", worst, 1e-12).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x1002ULL);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const LieVector x = rng.lie_vector(3.0), y = rng.lie_vector(3.0),
                            z = rng.lie_vector(3.0);
            const LieVector j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                                bracket(z, bracket(x, y));
            worst = std::max(worst, j.norm());
        }
        rec.le("so3-jacobi", worst, 1e-14).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x1003ULL);
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const LieVector x = rng.lie_vector(3.0);
            const Rotation g = exp(x);
            const Mat3 ad_exp = expm_taylor(ad_matrix(x));
            const Basis bs = basis();
            const LieVector cols[3] = {Ad(g, bs.a), Ad(g, bs.b), Ad(g, bs.c)};
            for (int c = 0; c < 3; ++c) {
                worst = std::max(worst, std::abs(cols[c].xa - ad_exp(0, c)));
                worst = std::max(worst, std::abs(cols[c].xb - ad_exp(1, c)));
                worst = std::max(worst, std::abs(cols[c].xc - ad_exp(2, c)));
            }
        }
        rec.le("so3-ad-vs-expm", worst, 1e-10).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x1004ULL);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const Rotation r = rng.rotation(M_PI - 0.01);
            worst = std::max(worst, exp(log(r)).max_abs_diff(r));
        }
        rec.le("so3-log-round-trip", worst, 1e-9).seconds = timer.seconds();
    }
}

// ------------------------------------------------------------ geodesic suite

void geodesic_suite(Recorder& rec, const CheckOptions& opt) {
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x2001ULL);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-5, 5));
            const double t = rng.uniform(0, 2 * M_PI);
            worst = std::max(worst, geodesic_product(p, t).max_abs_diff(
                                        geodesic_closed_form(p, t)));
        }
        rec.le("geo-cross-formula", worst, 1e-10).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x2002ULL);
        double worst = 0.0;
        const double h = 1e-6;
        for (int i = 0; i < 200; ++i) {
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-3, 3));
            const double t = rng.uniform(0.0, 6.0);
            const Mat3 diff = (geodesic_closed_form(p, t + h).matrix() -
                               geodesic_closed_form(p, t - h).matrix()) *
                              (0.5 / h);
            const Mat3 d = geodesic_closed_form(p, t).matrix().transposed() * diff;
            const LieVector u = LieVector::from_skew((d - d.transposed()) * 0.5);
            const double phi = p.beta * t + p.phi0;
            worst = std::max(worst, std::abs(u.xc));
            worst = std::max(worst, std::abs(std::hypot(u.xa, u.xb) - 1.0));
            worst = std::max(
                worst, std::hypot(u.xa - std::cos(phi), u.xb - std::sin(phi)));
        }
        rec.le("geo-horizontal-unit-speed", worst, 1e-5).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x2003ULL);
        double min_ratio = 1e300;
        for (int i = 0; i < 12; ++i) {
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-2, 2));
            const double t = rng.uniform(1.0, 4.0);
            const Rotation exact = geodesic_closed_form(p, t);
            const double dev_coarse = geodesic_ode(p, t, 0.02).max_abs_diff(exact);
            const double dev_fine = geodesic_ode(p, t, 0.01).max_abs_diff(exact);
            if (dev_fine > 0.0) min_ratio = std::min(min_ratio, dev_coarse / dev_fine);
        }
        rec.gt("geo-ode-order4", min_ratio, 12.0).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x2004ULL);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), rng.uniform(-3, 3));
            const double t0 = rng.uniform(-3.0, 3.0), s = rng.uniform(-3.0, 3.0);
            const Rotation lhs = geodesic_closed_form(p, t0).inverse() *
                                 geodesic_closed_form(p, t0 + s);
            const Rotation rhs = geodesic_closed_form(restart(p, t0), s);
            worst = std::max(worst, lhs.max_abs_diff(rhs));
        }
        rec.le("geo-restart-contract", worst, 1e-11).seconds = timer.seconds();
    }
}

// -------------------------------------------------------------- sphere suite

void sphere_suite(Recorder& rec, const CheckOptions& opt) {
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x3001ULL);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double beta =
                (rng.uniform() < 0.5 ? 1.0 : -1.0) * rng.uniform(0.05, 4.0);
            const Vec3 center = circle_center(beta).vec();
            const double r = circle_radius(beta);
            const double w = std::sqrt(1.0 + beta * beta);
            for (int k = 0; k < 200; ++k) {
                const double t = 2.0 * M_PI / w * k / 199.0;
                const Vec3 x =
                    project(geodesic_closed_form(GeodesicParam(0.0, beta), t)).vec();
                worst = std::max(
                    worst,
                    std::abs(std::acos(std::clamp(center.dot(x), -1.0, 1.0)) - r));
            }
        }
        rec.le("sph-orbit-circle", worst, 1e-10).seconds = timer.seconds();
    }
    {
        Timer timer;
        double worst = 0.0;
        for (int ib = 1; ib <= 20; ++ib) {
            const double beta = 0.55 * ib / 20.0;
            const double w = std::sqrt(1.0 + beta * beta);
            for (int is = 1; is <= 20; ++is) {
                const double t1 = (2.0 * M_PI / w) * is / 21.0;
                const DigonGeometry d = digon(beta, t1);
                const Vec3 x1 =
                    project(geodesic_closed_form(GeodesicParam(0.0, beta), t1)).vec();
                const double rd = std::acos(std::clamp(x1.x, -1.0, 1.0));
                worst = std::max(worst, std::abs(d.r - rd));
            }
        }
        rec.le("sph-chord-consistency", worst, 1e-12).seconds = timer.seconds();
    }
    {
        Timer timer;
        double worst = 0.0;
        for (int ib = 1; ib <= 8; ++ib) {
            const double beta = 0.52 * ib / 8.0;
            const double w = std::sqrt(1.0 + beta * beta);
            for (int is = 1; is <= 5; ++is) {
                const double t1 = (2.0 * M_PI / w) * is / 6.0;
                const DigonGeometry d = digon(beta, t1);
                // tangent of the projection at t=0 and chord direction
                const double h = 1e-6;
                const Vec3 x0{1, 0, 0};
                const Vec3 xh =
                    project(geodesic_closed_form(GeodesicParam(0.0, beta), h)).vec();
                const Vec3 tangent = ((xh - x0) * (1.0 / h)).normalized();
                const Vec3 xe =
                    project(geodesic_closed_form(GeodesicParam(0.0, beta), t1)).vec();
                const Vec3 chord = (xe - x0 * x0.dot(xe)).normalized();
                worst = std::max(worst, std::abs(tangent.dot(chord) - std::cos(d.psi)));
            }
        }
        rec.le("sph-psi-consistency", worst, 1e-6).seconds = timer.seconds();
    }
    {
        Timer timer;
        double worst = 0.0;
        const double h = 1e-5;
        for (int ib = 1; ib <= 8; ++ib) {
            const double beta = 0.5 * ib / 8.0;
            const double w = std::sqrt(1.0 + beta * beta);
            for (int is = 1; is <= 6; ++is) {
                const double t1 = (2.0 * M_PI / w) * is / 7.0;
                const double dpsi =
                    (digon(beta, t1 + h).psi - digon(beta, t1 - h).psi) / (2.0 * h);
                const double n = mn(beta, t1).n;
                worst = std::max(worst, std::abs(dpsi - std::abs(beta) / (2.0 - n)));
            }
        }
        rec.le("sph-dpsi-formula", worst, 1e-6).seconds = timer.seconds();
    }
}

// ----------------------------------------------------------- cut-locus suite

// Minimum rotation distance from cut_endpoint(beta) to any geodesic point of
// length <= t1(beta) - 0.05, with the phi0 dimension removed by symmetry.
double nearest_shorter_geodesic(double beta) {
    const Rotation target = cut_endpoint(beta);
    const double t1 = detail::cut_time_scalar(beta).t1;
    const double length_cap = t1 - 0.05;
    const bool so2_target = std::abs(beta) >= detail::inv_sqrt3();

    double best = 1e300;
    const int nxi = 141, nt = 90;
    for (int i = 0; i < nxi; ++i) {
        const double xi = -std::atan(6.0) +
                          2.0 * std::atan(6.0) * static_cast<double>(i) / (nxi - 1);
        const double bp = std::tan(xi);
        const double tmax = std::min(length_cap, detail::cut_time_scalar(bp).t1);
        if (tmax <= 0.0) continue;
        for (int k = 1; k <= nt; ++k) {
            const double t = tmax * static_cast<double>(k) / nt;
            const Rotation base = geodesic_closed_form(GeodesicParam(0.0, bp), t);
            double dist;
            if (so2_target) {
                // conjugation by exp(phi0 c) fixes the target: phi0 drops out
                dist = rotation_distance(base, target);
            } else {
                const auto [m, n] = mn(bp, t);
                const double cn = std::hypot(m, bp * n);
                const double tn = std::hypot(target(1, 0), target(2, 0));
                if (cn < 1e-12 || tn < 1e-12) {
                    dist = rotation_distance(base, target);
                } else {
                    const double phi0 = std::atan2(target(2, 0), target(1, 0)) -
                                        std::atan2(bp * n, m);
                    dist = rotation_distance(
                        geodesic_closed_form(GeodesicParam(phi0, bp), t), target);
                }
            }
            best = std::min(best, dist);
        }
    }
    return best;
}

void cut_locus_suite(Recorder& rec, const CheckOptions& opt) {
    {
        Timer timer;
        double worst = 0.0;
        const std::size_t n = 1000;
        for (std::size_t i = 0; i < n; ++i) {
            // conditioning of the residual is ~1/|beta|; below ~5e-4 one ulp
            // of t1 already moves F by more than 1e-12
            const double beta = 5e-4 + (inv_sqrt3() - 1e-9 - 5e-4) *
                                           static_cast<double>(i) /
                                           static_cast<double>(n - 1);
            const auto ct = detail::cut_time_scalar(beta);
            worst = std::max(worst, std::abs(cut_root_residual(beta, ct.t1)));
        }
        rec.le("cl-root-residual", worst, 1e-12, "beta in [5e-4, 1/sqrt3)").seconds =
            timer.seconds();
    }
    {
        Timer timer;
        int violations = 0;
        const std::size_t n = 1000;
        for (std::size_t i = 0; i < n; ++i) {
            const double beta = 1e-4 + (inv_sqrt3() - 1e-6 - 1e-4) *
                                           static_cast<double>(i) /
                                           static_cast<double>(n - 1);
            const double w = std::sqrt(1.0 + beta * beta);
            const double flo = cut_root_residual(beta, M_PI / w + 1e-9);
            const double fhi = cut_root_residual(beta, 2.0 * M_PI / w - 1e-9);
            if (!(flo < 0.0 && fhi > 0.0)) ++violations;
        }
        rec.le("cl-bracket-signs", violations, 0.0).seconds = timer.seconds();
    }
    {
        Timer timer;
        int violations = 0;
        const std::size_t n = 2000;
        for (std::size_t i = 0; i < n; ++i) {
            const double beta = 1e-6 + (inv_sqrt3() - 1e-9 - 1e-6) *
                                           static_cast<double>(i) /
                                           static_cast<double>(n - 1);
            const auto ct = detail::cut_time_scalar(beta);
            const double bt = std::abs(beta) * ct.t1;
            if (!(bt > 0.0 && bt < M_PI)) ++violations;
        }
        rec.le("cl-beta-t1-range", violations, 0.0).seconds = timer.seconds();
    }
    {
        Timer timer;
        // cube-root extrapolation of the left branch to the peak
        const double u1 = 1e-9, u2 = 1e-12;
        const double f1 = detail::cut_time_scalar(inv_sqrt3() - u1).t1;
        const double f2 = detail::cut_time_scalar(inv_sqrt3() - u2).t1;
        const double c = (f2 - f1) / (std::cbrt(u1) - std::cbrt(u2));
        const double left_limit = f2 + c * std::cbrt(u2);
        const double right =
            detail::cut_time_scalar(inv_sqrt3() + 1e-12).t1; // formula branch
        const double dev =
            std::max(std::abs(left_limit - diameter()), std::abs(right - diameter()));
        rec.le("cl-continuity-at-peak", dev, 1e-8,
               "left extrapolated=" + fmt(left_limit))
            .seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x4005ULL);
        double min_dist = 1e300;
        std::vector<double> betas{0.0};
        for (int i = 0; i < 100; ++i) betas.push_back(rng.uniform(0.03, 0.56));
        for (int i = 0; i < 100; ++i) betas.push_back(rng.uniform(0.58, 3.0));
        for (const double beta : betas)
            min_dist = std::min(min_dist, nearest_shorter_geodesic(beta));
        rec.gt("cl-no-shorter-arc", min_dist, 1e-3).seconds = timer.seconds();
    }
    {
        Timer timer;
        const double on = conjugate_rank_defect(1.0);
        const double off = conjugate_rank_defect(0.3);
        auto& r = rec.le("cl-conjugate-rank-diagnostic", 0.0, 1.0,
                         "sigma_min(beta=1)=" + fmt(on) +
                             " sigma_min(beta=0.3)=" + fmt(off) + " (non-gating)");
        r.pass = std::isfinite(on) && std::isfinite(off);
        r.seconds = timer.seconds();
    }
}

// ------------------------------------------------------------ distance suite

void distance_suite(Recorder& rec, const CheckOptions& opt) {
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x5001ULL);
        double worst = 0.0, worst_dist = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double xi = rng.uniform(-std::atan(5.0), std::atan(5.0));
            const GeodesicParam p(rng.uniform(0, 2 * M_PI), std::tan(xi));
            const double t = rng.uniform(0.05, 0.95) * cut_time(p.beta).t1;
            const Rotation g = geodesic_closed_form(p, t);
            const DistanceResult a = sr_log(g, 1e-9);
            const DistanceResult b = sr_log_full(g, 1e-9);
            worst = std::max(worst, std::abs(a.distance - b.distance));
            worst_dist = std::max({worst_dist, a.distance, b.distance});
        }
        auto& r = rec.le("d-route-agreement", worst, 1e-8,
                         "max distance=" + fmt(worst_dist));
        r.pass = r.pass && worst_dist <= diameter() + 1e-9;
        r.seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x5002ULL);
        double worst = -1e300;
        for (int i = 0; i < 100; ++i) {
            const Rotation g1 = rng.rotation(), g2 = rng.rotation();
            const double excess =
                distance(g1 * g2) - distance(g1) - distance(g2);
            worst = std::max(worst, excess);
        }
        rec.le("d-triangle-inequality", worst, 1e-6).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x5003ULL);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Rotation g = rng.rotation();
            worst = std::max(worst, std::abs(distance(g) - distance(g.inverse())));
        }
        rec.le("d-inverse-symmetry", worst, 1e-6).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x5004ULL);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Rotation g = rng.rotation();
            const Rotation b = exp(LieVector{0, 0, rng.uniform(0, 2 * M_PI)});
            worst = std::max(
                worst, std::abs(distance(b * g * b.inverse()) - distance(g)));
        }
        rec.le("d-so2-conjugation-invariance", worst, 1e-6).seconds = timer.seconds();
    }
    {
        Timer timer;
        double worst = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double beta = 0.55 * k / 20.0;
            const double t1 = cut_time(beta).t1;
            const DistanceResult res = sr_log(cut_endpoint(beta), 1e-9);
            worst = std::max(worst, std::abs(res.distance - t1));
        }
        rec.le("d-cut-pair-distance", worst, 1e-8).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x5006ULL);
        double worst = -1e300;
        for (int i = 0; i < 5; ++i) {
            const Rotation g = rng.rotation();
            const double d = sr_log(g, 1e-9).distance;
            const double b = brute_force_distance(g, 12, 64, opt.seed + 17 * i);
            worst = std::max(worst, d - 1e-2 - b);
        }
        rec.le("d-oracle-soundness", worst, 0.0).seconds = timer.seconds();
    }
}

// ------------------------------------------------------------- kernels suite

void kernels_suite(Recorder& rec, const CheckOptions& opt) {
    if (!kernels::avx2_available()) {
        auto& r = rec.le("k-equivalence", 0.0, 1.0, "avx2 unavailable, scalar only");
        r.pass = true;
        return;
    }
    const auto& sc = kernels::scalar_backend();
    const auto& vx = kernels::avx2_backend();
    const std::size_t n = 4099; // odd size exercises the scalar tail

    {
        Timer timer;
        Rng rng(opt.seed ^ 0x6001ULL);
        std::vector<double> beta(n), t1a(n), t1b(n);
        std::vector<unsigned char> bra(n), brb(n);
        for (std::size_t i = 0; i < n; ++i) beta[i] = rng.uniform(-6, 6);
        beta[0] = 0.0;
        beta[1] = inv_sqrt3();
        beta[2] = -inv_sqrt3();
        sc.cut_time_batch(beta.data(), n, t1a.data(), bra.data());
        vx.cut_time_batch(beta.data(), n, t1b.data(), brb.data());
        double worst = 0.0;
        int branch_mismatch = 0;
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(t1a[i] - t1b[i]));
            if (bra[i] != brb[i]) ++branch_mismatch;
        }
        auto& r = rec.le("k-cut-time-equivalence", worst, 1e-10,
                         "branch mismatches=" + std::to_string(branch_mismatch));
        r.pass = r.pass && branch_mismatch == 0;
        r.seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x6002ULL);
        std::vector<double> ts(n), xa(n), ya(n), za(n), xb(n), yb(n), zb(n);
        double worst = 0.0;
        for (int rep = 0; rep < 8; ++rep) {
            const double phi0 = rng.uniform(0, 2 * M_PI);
            const double beta = rng.uniform(-6, 6);
            for (std::size_t i = 0; i < n; ++i) ts[i] = rng.uniform(0, 12.0);
            sc.project_batch(phi0, beta, ts.data(), n, xa.data(), ya.data(), za.data());
            vx.project_batch(phi0, beta, ts.data(), n, xb.data(), yb.data(), zb.data());
            for (std::size_t i = 0; i < n; ++i)
                worst = std::max({worst, std::abs(xa[i] - xb[i]),
                                  std::abs(ya[i] - yb[i]), std::abs(za[i] - zb[i])});
        }
        rec.le("k-project-equivalence", worst, 1e-13).seconds = timer.seconds();
    }
    {
        Timer timer;
        Rng rng(opt.seed ^ 0x6003ULL);
        std::vector<double> ph(n), be(n), ts(n), ga(n), gb(n);
        for (std::size_t i = 0; i < n; ++i) {
            ph[i] = rng.uniform(0, 2 * M_PI);
            be[i] = rng.uniform(-6, 6);
            ts[i] = rng.uniform(0, 9.0);
        }
        const Mat3 target = rng.rotation().matrix();
        sc.frobenius_gap_batch(ph.data(), be.data(), ts.data(), n, target, ga.data());
        vx.frobenius_gap_batch(ph.data(), be.data(), ts.data(), n, target, gb.data());
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(ga[i] - gb[i]));
        rec.le("k-frobenius-equivalence", worst, 1e-11).seconds = timer.seconds();
    }
}

} // namespace

double profile_scale(const std::string& name) {
    if (name == "default" || name.empty()) return 1.0;
    if (name == "strict") return 0.5;
    if (name == "loose") return 10.0;
    throw std::invalid_argument("unknown tolerance profile: " + name);
}

std::vector<std::string> suite_names() {
    return {"acceptance", "so3", "geodesic", "sphere", "cut-locus", "distance",
            "kernels"};
}

std::vector<CheckResult> run_suite(const std::string& name, const CheckOptions& opt) {
    std::vector<CheckResult> out;
    Recorder rec{out, name, opt.tol_scale};
    if (name == "acceptance")
        acceptance_suite(rec, opt);
    else if (name == "so3")
        so3_suite(rec, opt);
    else if (name == "geodesic")
        geodesic_suite(rec, opt);
    else if (name == "sphere")
        sphere_suite(rec, opt);
    else if (name == "cut-locus")
        cut_locus_suite(rec, opt);
    else if (name == "distance")
        distance_suite(rec, opt);
    else if (name == "kernels")
        kernels_suite(rec, opt);
    else
        throw std::invalid_argument("unknown check suite: " + name);
    return out;
}

std::vector<CheckResult> run_all(const CheckOptions& opt) {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
        auto part = run_suite(name, opt);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

} // namespace srso3::checks
