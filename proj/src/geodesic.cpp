#include "srso3/geodesic.hpp"

#include <cmath>
#include <stdexcept>

namespace srso3 {

double wrap_2pi(double x) {
    const double two_pi = 2.0 * M_PI;
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

GeodesicParam::GeodesicParam(double phi0_, double beta_)
    : phi0(wrap_2pi(phi0_)), beta(beta_) {
    if (!std::isfinite(phi0_) || !std::isfinite(beta_))
        throw std::domain_error("GeodesicParam: parameters must be finite");
}

MNCoefficients mn(double beta, double t) {
    const double w2 = 1.0 + beta * beta;
    const double w = std::sqrt(w2);
    const double sh = std::sin(0.5 * t * w);
    return {std::sin(t * w) / w, 2.0 * sh * sh / w2};
}

Rotation geodesic_product(const GeodesicParam& p, double t) {
    const LieVector dir{std::cos(p.phi0), std::sin(p.phi0), p.beta};
    return exp(t * dir) * exp(LieVector{0, 0, -t * p.beta});
}

Rotation geodesic_closed_form(const GeodesicParam& p, double t) {
    const auto [m, n] = mn(p.beta, t);
    const double beta = p.beta;
    const double phi = beta * t + p.phi0;
    const double c0 = std::cos(p.phi0), s0 = std::sin(p.phi0);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double cb = std::cos(beta * t), sb = std::sin(beta * t);
    const double q = 1.0 - beta * beta * n;

    Mat3 r;
    r(0, 0) = 1.0 - n;
    r(0, 1) = -m * cp - beta * n * sp;
    r(0, 2) = -m * sp + beta * n * cp;
    r(1, 0) = m * c0 - beta * n * s0;
    r(1, 1) = q * cb + beta * m * sb - n * cp * c0;
    r(1, 2) = q * sb - beta * m * cb - n * sp * c0;
    r(2, 0) = m * s0 + beta * n * c0;
    r(2, 1) = beta * m * cb - q * sb - n * cp * s0;
    r(2, 2) = q * cb + beta * m * sb - n * sp * s0;
    return Rotation(r, Rotation::unchecked_t{});
}

Rotation geodesic_ode(const GeodesicParam& p, double t, double step) {
    if (!(step > 0.0)) throw std::domain_error("geodesic_ode: step must be positive");
    if (t == 0.0) return Rotation::identity();

    const int nsteps = static_cast<int>(std::ceil(std::abs(t) / step));
    const double h = t / nsteps;

    const auto u = [&](double s) {
        const double phi = p.beta * s + p.phi0;
        return LieVector{std::cos(phi), std::sin(phi), 0.0}.to_matrix();
    };

    Mat3 g = Mat3::identity();
    double s = 0.0;
    for (int i = 0; i < nsteps; ++i) {
        const Mat3 k1 = g * u(s);
        const Mat3 k2 = (g + 0.5 * h * k1) * u(s + 0.5 * h);
        const Mat3 k3 = (g + 0.5 * h * k2) * u(s + 0.5 * h);
        const Mat3 k4 = (g + h * k3) * u(s + h);
        g = g + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        g = orthonormalize(g, 2); // keep long integrations on the group
        s += h;
    }
    return Rotation(g, Rotation::unchecked_t{});
}

GeodesicParam restart(const GeodesicParam& p, double t0) {
    return GeodesicParam(p.beta * t0 + p.phi0, p.beta);
}

std::pair<GeodesicParam, double> reverse_sign(const GeodesicParam& p, double t) {
    return {GeodesicParam(p.phi0 + M_PI, -p.beta), -t};
}

Rotation conjugate_phase(const GeodesicParam& p_base, double phi0, double t) {
    const Rotation b = exp(LieVector{0, 0, phi0});
    const Rotation base = geodesic_closed_form(GeodesicParam(0.0, p_base.beta), t);
    return b * base * b.inverse();
}

} // namespace srso3
