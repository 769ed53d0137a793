#pragma once

// Scalar cut-time solve shared by the public API and the scalar kernel
// backend.  For 0 < |beta| < 1/sqrt(3) the cut time is the root of
//
//   F(t) = 2 psi(t) - |beta| t - pi
//
// in (pi/w, 2*pi/w), w = sqrt(1+beta^2), where psi is the interior angle of
// the digon bounded by the projected arc and its chord.  Bisection acts on
// the cancellation-free equivalent
//
//   B(t) = w cos(h) cos(X) + |beta| sin(h) sin(X),  h = t w/2,  X = |beta| t/2,
//
// which is a positive multiple of -sin(F/2) on the bracket, so it has the
// same (single) sign change and stays well conditioned for small |beta|.

#include <cmath>
#include <stdexcept>

namespace srso3 {

enum class CutBranch : unsigned char {
    BetaZero = 0,   // beta = 0, t1 = pi
    FullCircle = 1, // |beta| >= 1/sqrt(3), t1 = 2*pi/w (one full projected circle)
    DigonPi = 2,    // 0 < |beta| < 1/sqrt(3), digon area reaches pi
};

namespace detail {

inline double inv_sqrt3() {
    static const double v = 1.0 / std::sqrt(3.0);
    return v;
}

struct CutTimeScalar {
    double t1;
    CutBranch branch;
};

inline double cut_bisect_fn(double ab, double w, double t) {
    const double h = 0.5 * t * w;
    const double x = 0.5 * ab * t;
    return w * std::cos(h) * std::cos(x) + ab * std::sin(h) * std::sin(x);
}

inline CutTimeScalar cut_time_scalar(double beta) {
    if (!std::isfinite(beta)) throw std::domain_error("cut_time: beta must be finite");
    if (beta == 0.0) return {M_PI, CutBranch::BetaZero};
    const double ab = std::abs(beta);
    const double w = std::sqrt(1.0 + beta * beta);
    if (ab >= inv_sqrt3()) return {2.0 * M_PI / w, CutBranch::FullCircle};

    double lo = M_PI / w;       // B > 0 here
    double hi = 2.0 * M_PI / w; // B < 0 here
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break; // bracket exhausted at 1 ulp
        if (cut_bisect_fn(ab, w, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), CutBranch::DigonPi};
}

} // namespace detail
} // namespace srso3
