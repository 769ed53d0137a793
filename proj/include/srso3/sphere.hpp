#pragma once

// Geometry of geodesic projections on S^2: the projection p(g) = g e1 is a
// submetry, projections of geodesics are circles of constant geodesic
// curvature, and the second frame column g e2 realizes parallel transport
// along the projection.  The digon bounded by a projected arc and its chord
// carries the Gauss–Bonnet bookkeeping used by the cut-time equation.

#include <span>

#include "srso3/geodesic.hpp"
#include "srso3/so3.hpp"

namespace srso3 {

struct S2Point {
    double x = 1.0, y = 0.0, z = 0.0;

    Vec3 vec() const { return {x, y, z}; }
    static S2Point from(const Vec3& v) { return {v.x, v.y, v.z}; }
};

// Spherical digon data: chord length r, interior angle psi, area
// S = 2 psi - |beta| t1.
struct DigonGeometry {
    double r = 0.0;
    double psi = 0.0;
    double area = 0.0;
};

// First column of R, i.e. R e1.
S2Point project(const Rotation& r);

// Fixed point of the projected circle nearest to e1 (unit eigenvector of
// a + beta c, sign chosen on the e1 side); (0,0,1) for beta = 0.
S2Point circle_center(double beta);

// Spherical radius arccos(|beta|/sqrt(1+beta^2)) in (0, pi/2].
double circle_radius(double beta);

// Arc length alpha*sin(r) and sector area alpha*(1-cos(r)) of a spherical
// circle of radius r; plain formulas, pre: 0 <= alpha <= 2*pi, 0 <= r <= pi/2.
double arc_length(double r, double alpha);
double sector_area(double r, double alpha);

// Digon of the projected arc of (0, beta) over [0, t1].  Requires beta != 0
// and 0 < t1 < 2*pi/sqrt(1+beta^2) (no self-intersection); throws
// std::domain_error otherwise.
DigonGeometry digon(double beta, double t1);

// Finite-difference signed geodesic curvature of uniformly spaced samples of
// one projected geodesic.  Sign convention: normal = tangent x position
// (so that projections with beta > 0 measure -beta); `reversed` traverses
// the samples backwards.  Throws std::invalid_argument for fewer than 5
// samples.
double geodesic_curvature_numeric(std::span<const S2Point> samples,
                                  bool reversed = false);

// |numeric digon area - (2 psi - |beta| t1)| where the numeric area comes
// from the turning-angle excess of a fine geodesic polygon (sampled arc plus
// the closing chord).  beta enters through |beta| (the digon of -beta is the
// mirror image with equal area).
double gauss_bonnet_residual(double beta, double t1, int samples = 20000);

// Max norm over sample times of the tangential part of d/dt [gamma(t) e2]
// along the projection (finite differences); decays to zero for a parallel
// field.  Requires samples >= 10.
double transport_defect(const GeodesicParam& p, double t1, int samples);

// Rotation angle of e2 after discrete parallel transport around the full
// projected circle of (0, beta), measured in the oriented tangent plane at
// e1; equals the enclosed area mod 2*pi.
double holonomy_angle(double beta, int samples = 20000);

} // namespace srso3
