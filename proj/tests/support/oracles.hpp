#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include "srso3/mat3.hpp"

namespace srso3::testing {

// Scaling-and-squaring Taylor matrix exponential.
inline Mat3 expm_taylor(Mat3 a) {
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

// The three-matrix factorization of exp(t(a + beta c)) written out in the
// closed-form derivation (conjugated planar rotation).
inline Mat3 conjugated_rotation_product(double beta, double t) {
    const double w2 = 1.0 + beta * beta;
    const double w = std::sqrt(w2);
    Mat3 left, rot, right;
    left(0, 0) = 1.0;
    left(0, 2) = beta;
    left(1, 1) = w;
    left(2, 0) = -beta;
    left(2, 2) = 1.0;
    rot(0, 0) = std::cos(t * w);
    rot(0, 1) = -std::sin(t * w);
    rot(1, 0) = std::sin(t * w);
    rot(1, 1) = std::cos(t * w);
    rot(2, 2) = 1.0;
    right(0, 0) = 1.0;
    right(0, 2) = -beta;
    right(1, 1) = w;
    right(2, 0) = beta;
    right(2, 2) = 1.0;
    return (left * rot * right) * (1.0 / w2);
}

} // namespace srso3::testing
