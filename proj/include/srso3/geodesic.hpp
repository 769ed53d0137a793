#pragma once

// Unit-speed geodesics from the identity of the left-invariant sub-Riemannian
// metric on SO(3) whose horizontal distribution is spanned by a, b.
//
// A geodesic is selected by (phi0, beta) and admits three evaluators:
//
//   geodesic_product     gamma(t) = exp(t(cos phi0 a + sin phi0 b + beta c)) exp(-t beta c)
//   geodesic_closed_form the explicit 3x3 matrix in m, n, beta, phi0
//   geodesic_ode         RK4 integration of gamma' = gamma u(t),
//                        u(t) = cos(beta t + phi0) a + sin(beta t + phi0) b
//
// The closed form is the canonical evaluator; the other two serve as
// independent verification routes.

#include <utility>

#include "srso3/so3.hpp"

namespace srso3 {

// Wrap an angle into [0, 2*pi).
double wrap_2pi(double x);

struct GeodesicParam {
    GeodesicParam(double phi0_, double beta_);

    double phi0; // initial horizontal direction, normalized to [0, 2*pi)
    double beta; // vertical momentum, constant along the geodesic
};

struct MNCoefficients {
    double m = 0.0; // sin(t w)/w,          w = sqrt(1 + beta^2)
    double n = 0.0; // (1 - cos(t w))/w^2
};

MNCoefficients mn(double beta, double t);

Rotation geodesic_product(const GeodesicParam& p, double t);
Rotation geodesic_closed_form(const GeodesicParam& p, double t);

// Fixed-step RK4 with per-step polar reprojection to SO(3); `step` > 0,
// negative `t` integrates backwards.
Rotation geodesic_ode(const GeodesicParam& p, double t, double step);

// Parameters of the geodesic s -> gamma(t0)^{-1} gamma(t0 + s).
GeodesicParam restart(const GeodesicParam& p, double t0);

// Sign change of beta: ((phi0 + pi, -beta), -t) reaches the same point.
std::pair<GeodesicParam, double> reverse_sign(const GeodesicParam& p, double t);

// B gamma_{(0,beta)}(t) B^{-1} with B = exp(phi0 c); equals the geodesic with
// initial direction phi0.
Rotation conjugate_phase(const GeodesicParam& p_base, double phi0, double t);

} // namespace srso3
