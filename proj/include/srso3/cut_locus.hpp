#pragma once

// Cut times, the diameter, cut endpoints and the symmetry that double-covers
// cut points.  Cut times by branch:
//
//   beta = 0                  t1 = pi
//   |beta| >= 1/sqrt(3)       t1 = 2*pi/sqrt(1+beta^2)  (full projected circle)
//   0 < |beta| < 1/sqrt(3)    unique root of 2 psi(t1) - |beta| t1 = pi
//
// t1(|beta|) increases up to |beta| = 1/sqrt(3) and decreases beyond; the
// peak value pi*sqrt(3) is the diameter.  Note the left approach to the peak
// behaves like pi*sqrt(3) - C u^(1/3), so grid scans need local refinement
// to resolve the maximum (diameter_check does this).

#include <utility>
#include <vector>

#include "srso3/detail/cut_time.hpp"
#include "srso3/geodesic.hpp"
#include "srso3/so3.hpp"

namespace srso3 {

struct CutPoint {
    double beta = 0.0;
    double t1 = 0.0; // cut time == arc length
    Rotation endpoint;
    CutBranch branch = CutBranch::BetaZero;
};

const char* to_string(CutBranch b);

// Cut time, branch and endpoint for one beta.  Throws std::domain_error for
// non-finite beta.
CutPoint cut_time(double beta);

// Root residual 2 psi(t1) - |beta| t1 - pi evaluated in the atan2 form
// (diagnostic; independent of the bisection's own formulation).
double cut_root_residual(double beta, double t1);

// pi*sqrt(3).
double diameter();

struct DiameterGrid {
    double beta_min = -5.0;
    double beta_max = 5.0;
    std::size_t points = 10000;
    bool atan_spacing = true; // uniform in atan(beta) instead of beta
};

struct DiameterCheck {
    double grid_max = 0.0;      // best cut time seen on the raw grid
    double grid_argmax = 0.0;   // beta attaining it
    double refined_max = 0.0;   // after golden-section refinement at the peak
    double refined_argmax = 0.0;
};

// Scan cut_time over a beta grid and refine the peak by golden-section
// search on |beta| (the cusp on the digon side makes the raw grid max off by
// O(spacing^(1/3)), so refinement is what certifies the diameter).
DiameterCheck diameter_check(const DiameterGrid& grid = {}, int jobs = 1);

// Endpoint of the reference geodesic (phi0 = 0) at its cut time.
Rotation cut_endpoint(double beta);

// The pair (phi0', beta') = (-beta t1 + phi0 + pi, -beta) reaching the same
// endpoint at the common cut time; defined for beta^2 <= 1/3, throws
// std::domain_error beyond.
std::pair<double, double> cut_symmetry_partner(double phi0, double beta);

// Cut points on the atan-uniform grid beta = tan(xi), xi in (-pi/2, pi/2),
// clipped to |beta| <= beta_max.  n >= 1.
std::vector<CutPoint> sample_cut_locus(std::size_t n, double beta_max, int jobs = 1);

// Smallest singular value of the numeric differential of the endpoint map
// (phi0, beta, t) -> gamma at t = t1(beta).  Near zero on the conjugate set
// (beta^2 >= 1/3).  Non-gating diagnostic.
double conjugate_rank_defect(double beta);

} // namespace srso3
