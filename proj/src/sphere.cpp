#include "srso3/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "srso3/kernels.hpp"

namespace srso3 {

S2Point project(const Rotation& r) {
    return {r(0, 0), r(1, 0), r(2, 0)};
}

S2Point circle_center(double beta) {
    const double w = std::sqrt(1.0 + beta * beta);
    const double s = (beta >= 0.0) ? 1.0 : -1.0;
    return {s * beta / w, 0.0, s / w};
}

double circle_radius(double beta) {
    const double w = std::sqrt(1.0 + beta * beta);
    return std::acos(std::abs(beta) / w);
}

double arc_length(double r, double alpha) { return alpha * std::sin(r); }

double sector_area(double r, double alpha) { return alpha * (1.0 - std::cos(r)); }

DigonGeometry digon(double beta, double t1) {
    if (beta == 0.0) throw std::domain_error("digon: beta must be nonzero");
    if (!std::isfinite(beta) || !std::isfinite(t1))
        throw std::domain_error("digon: arguments must be finite");
    const double ab = std::abs(beta);
    const double w = std::sqrt(1.0 + beta * beta);
    if (!(t1 > 0.0 && t1 < 2.0 * M_PI / w))
        throw std::domain_error("digon: t1 outside (0, 2*pi/sqrt(1+beta^2))");

    const double n = mn(beta, t1).n;
    const double h = 0.5 * t1 * w;
    // cos psi = w cos(h)/R, sin psi = |beta| sin(h)/R with R > 0 common.
    const double psi = std::atan2(ab * std::sin(h), w * std::cos(h));
    DigonGeometry d;
    d.r = std::acos(std::clamp(1.0 - n, -1.0, 1.0));
    d.psi = psi;
    d.area = 2.0 * psi - ab * t1;
    return d;
}

namespace {

// Direction of the geodesic from p toward q in the tangent plane at p.
Vec3 chord_direction(const Vec3& p, const Vec3& q) {
    const Vec3 t = q - p * p.dot(q);
    return t.normalized();
}

// Rotate v by `angle` about unit axis k (Rodrigues).
Vec3 rotate_about(const Vec3& k, double angle, const Vec3& v) {
    const double c = std::cos(angle), s = std::sin(angle);
    return v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c));
}

} // namespace

double geodesic_curvature_numeric(std::span<const S2Point> samples, bool reversed) {
    if (samples.size() < 5)
        throw std::invalid_argument("geodesic_curvature_numeric: need at least 5 samples");
    const double sign = reversed ? -1.0 : 1.0;
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const Vec3 prev = samples[i - 1].vec();
        const Vec3 cur = samples[i].vec();
        const Vec3 next = samples[i + 1].vec();
        const double h = 0.5 * ((next - cur).norm() + (cur - prev).norm());
        if (h <= 0.0) continue;
        const Vec3 tangent = ((next - prev) * (1.0 / (2.0 * h))).normalized();
        const Vec3 normal = tangent.cross(cur); // in-surface normal, T x N
        const Vec3 acc2 = (next - cur * 2.0 + prev) * (1.0 / (h * h));
        acc += acc2.dot(normal);
        ++count;
    }
    if (count == 0)
        throw std::invalid_argument("geodesic_curvature_numeric: degenerate samples");
    return sign * acc / static_cast<double>(count);
}

double gauss_bonnet_residual(double beta, double t1, int samples) {
    const double ab = std::abs(beta);
    const DigonGeometry d = digon(ab, t1);
    if (samples < 16) throw std::invalid_argument("gauss_bonnet_residual: samples too few");

    // Vertices along the projected arc of (0, |beta|); the closing edge back
    // to x(0) is exactly the digon chord since polygon edges are geodesic.
    const std::size_t n = static_cast<std::size_t>(samples);
    std::vector<double> ts(n + 1), xs(n + 1), ys(n + 1), zs(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        ts[k] = t1 * static_cast<double>(k) / static_cast<double>(n);
    kernels::active_backend().project_batch(0.0, ab, ts.data(), n + 1, xs.data(),
                                            ys.data(), zs.data());

    const auto vertex = [&](std::size_t k) { return Vec3{xs[k], ys[k], zs[k]}; };
    const std::size_t nv = n + 1;
    double turning_sum = 0.0;
    for (std::size_t k = 0; k < nv; ++k) {
        const Vec3 vp = vertex((k + nv - 1) % nv);
        const Vec3 vc = vertex(k);
        const Vec3 vn = vertex((k + 1) % nv);
        const Vec3 din = chord_direction(vc, vp) * -1.0; // arrival direction
        const Vec3 dout = chord_direction(vc, vn);
        turning_sum += std::atan2(din.cross(dout).dot(vc), din.dot(dout));
    }
    const double numeric_area = 2.0 * M_PI - turning_sum;
    return std::abs(numeric_area - d.area);
}

double transport_defect(const GeodesicParam& p, double t1, int samples) {
    if (samples < 10) throw std::invalid_argument("transport_defect: samples >= 10 required");
    const std::size_t n = static_cast<std::size_t>(samples);
    std::vector<Vec3> frame(n + 1), pos(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = t1 * static_cast<double>(k) / static_cast<double>(n);
        const Rotation g = geodesic_closed_form(p, t);
        frame[k] = g.matrix().col(1); // transported vector gamma(t) e2
        pos[k] = g.matrix().col(0);   // base point x(t)
    }
    const double h = t1 / static_cast<double>(n);
    double worst = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const Vec3 deriv = (frame[k + 1] - frame[k - 1]) * (1.0 / (2.0 * h));
        const Vec3 tangential = deriv - pos[k] * deriv.dot(pos[k]);
        worst = std::max(worst, tangential.norm());
    }
    return worst;
}

double holonomy_angle(double beta, int samples) {
    if (samples < 16) throw std::invalid_argument("holonomy_angle: samples too few");
    const double w = std::sqrt(1.0 + beta * beta);
    const double t1 = 2.0 * M_PI / w;
    const std::size_t n = static_cast<std::size_t>(samples);

    std::vector<double> ts(n + 1), xs(n + 1), ys(n + 1), zs(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        ts[k] = t1 * static_cast<double>(k) / static_cast<double>(n);
    kernels::active_backend().project_batch(0.0, beta, ts.data(), n + 1, xs.data(),
                                            ys.data(), zs.data());

    // Transport e2 by the exact parallel transport along each connecting
    // great-circle chord: rotate about x_k x x_{k+1}.
    Vec3 v{0.0, 1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const Vec3 a{xs[k], ys[k], zs[k]};
        const Vec3 b{xs[k + 1], ys[k + 1], zs[k + 1]};
        const Vec3 axis = a.cross(b);
        const double an = axis.norm();
        if (an < 1e-300) continue;
        const double angle = std::atan2(an, a.dot(b));
        v = rotate_about(axis * (1.0 / an), angle, v);
    }
    // Loop closes at e1; measure the turn in the oriented basis (e2, e3).
    const double angle = std::atan2(v.z, v.y);
    return (angle < 0.0) ? angle + 2.0 * M_PI : angle;
}

} // namespace srso3
