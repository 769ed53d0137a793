#pragma once

// The inverse problem: given g in SO(3), recover the minimizing geodesic
// (phi0, beta, t) with t <= t1(beta) and the sub-Riemannian distance t.
//
// sr_log solves the conjugation-invariant part first (the pair
// (g_11, trace g) determines (beta, t) up to the SO(2) symmetry), recovers
// phi0 by one phase alignment, and verifies against the full matrix; targets
// that defeat the reduction fall back to a coarse grid over
// (phi0, atan(beta), t/t1) plus damped Gauss–Newton on log(gamma^{-1} g).
// Targets in SO(2)\{e} are solved in closed form (any phi0 works there).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "srso3/geodesic.hpp"
#include "srso3/so3.hpp"

namespace srso3 {

enum class Multiplicity {
    Unique,  // single minimizing geodesic
    CutPair, // beta^2 <= 1/3 cut endpoint: two minimizers, see cut_symmetry_partner
    Circle,  // target in SO(2)\{e}: a circle of minimizers (free phi0)
};

const char* to_string(Multiplicity m);

struct DistanceResult {
    double distance = 0.0;
    GeodesicParam param{0.0, 0.0};
    double time = 0.0;
    double residual = 0.0; // ||log(gamma(param, time)^{-1} g)||
    std::optional<double> oracle_bound;
    Multiplicity multiplicity = Multiplicity::Unique;
};

class NoConvergence : public std::runtime_error {
public:
    NoConvergence(const std::string& what, DistanceResult best_)
        : std::runtime_error(what), best(std::move(best_)) {}
    DistanceResult best;
};

DistanceResult sr_log(const Rotation& g, double tol = 1e-9);

// Length-only wrapper over sr_log.
double distance(const Rotation& g);

// Force the full 3-parameter grid + Gauss–Newton route (no invariant
// reduction); used to cross-validate the primary path.
DistanceResult sr_log_full(const Rotation& g, double tol = 1e-9);

struct BruteForceResult {
    double length = 0.0;   // best path length with mismatch <= 1e-6, else best effort
    double mismatch = 0.0; // endpoint gap ||log(E^{-1} g)|| of the reported path
    bool feasible = false; // mismatch <= 1e-6 reached
};

// Independent upper bound on d(e, g): minimizes the total length of a
// horizontal path made of `segments` constant-heading arcs
// prod_i exp(len_i (cos th_i a + sin th_i b)) by random-restart coordinate
// descent with a quadratic endpoint penalty.  Deterministic for a fixed seed.
// segments in [4, 32]; budget = number of restarts.
BruteForceResult brute_force_distance_detailed(const Rotation& g, int segments,
                                               int budget, std::uint64_t seed,
                                               int jobs = 1);
double brute_force_distance(const Rotation& g, int segments, int budget,
                            std::uint64_t seed);

} // namespace srso3
