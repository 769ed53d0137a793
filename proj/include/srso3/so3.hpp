#pragma once

// Linear algebra of so(3) and SO(3) in the basis
//
//   a = e21 - e12,   b = e31 - e13,   c = e32 - e23,
//
// with bracket relations [a,b]=c, [b,c]=a, [c,a]=b.  Elements of the Lie
// algebra are carried as coefficient triples (xa, xb, xc); under that
// identification the bracket is the cross product and the coefficient
// Euclidean norm equals the rotation angle of exp.  The subgroup
// SO(2) = exp(R c) is the stabilizer of e1 = (1,0,0)^T.

#include <stdexcept>
#include <string>

#include "srso3/mat3.hpp"

namespace srso3 {

class InvalidRotation : public std::invalid_argument {
public:
    explicit InvalidRotation(const std::string& what) : std::invalid_argument(what) {}
};

// Element of so(3): coefficients of the basis (a, b, c).
struct LieVector {
    double xa = 0.0, xb = 0.0, xc = 0.0;

    LieVector() = default;
    LieVector(double a_, double b_, double c_) : xa(a_), xb(b_), xc(c_) {}

    LieVector operator+(const LieVector& o) const { return {xa + o.xa, xb + o.xb, xc + o.xc}; }
    LieVector operator-(const LieVector& o) const { return {xa - o.xa, xb - o.xb, xc - o.xc}; }
    LieVector operator*(double s) const { return {xa * s, xb * s, xc * s}; }
    LieVector operator-() const { return {-xa, -xb, -xc}; }

    double norm() const { return std::sqrt(xa * xa + xb * xb + xc * xc); }

    // Skew-symmetric matrix xa*a + xb*b + xc*c.
    Mat3 to_matrix() const;
    // Inverse of to_matrix (reads the lower-triangular entries; exact).
    static LieVector from_skew(const Mat3& m);
};

inline LieVector operator*(double s, const LieVector& v) { return v * s; }

// Orthogonal 3x3 matrix with determinant 1.
class Rotation {
public:
    Rotation() : m_(Mat3::identity()) {}

    static Rotation identity() { return Rotation(); }

    // Validates R^T R = I entrywise and det R = 1 within `tol`.
    static Rotation from_matrix(const Mat3& m, double tol = 1e-12);

    // Trusted constructor for matrices that are orthogonal by construction.
    struct unchecked_t {};
    Rotation(const Mat3& m, unchecked_t) : m_(m) {}

    const Mat3& matrix() const { return m_; }
    double operator()(int r, int c) const { return m_(r, c); }

    Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_, unchecked_t{}); }
    Vec3 operator*(const Vec3& v) const { return m_ * v; }
    Rotation inverse() const { return Rotation(m_.transposed(), unchecked_t{}); }

    // Max entrywise deviation of R^T R from I, and |det - 1|.
    double orthogonality_defect() const;
    double det_defect() const { return std::abs(m_.det() - 1.0); }

    double max_abs_diff(const Rotation& o) const { return m_.max_abs_diff(o.m_); }

private:
    explicit Rotation(const Mat3& m) : m_(m) {}
    Mat3 m_;
};

// Basis (a, b, c) as coefficient vectors (1,0,0), (0,1,0), (0,0,1).
struct Basis {
    LieVector a, b, c;
};
Basis basis();

// Lie bracket [X,Y] = XY - YX in coefficients (the cross product).
LieVector bracket(const LieVector& x, const LieVector& y);

// Matrix of ad(X) = [X, .] acting on coefficient space, ordered basis (a,b,c).
Mat3 ad_matrix(const LieVector& x);

// Rodrigues exponential so(3) -> SO(3).
Rotation exp(const LieVector& x);

// Principal logarithm; returned coefficient norm lies in [0, pi].  At angle
// pi the axis sign is fixed to the representative whose leading nonzero
// coefficient is non-negative.  Throws InvalidRotation if `m` fails the
// orthogonality check at `input_tol`.
LieVector log(const Rotation& r);
LieVector log_matrix(const Mat3& m, double input_tol = 1e-8);

// Adjoint action: coefficients of g X g^{-1}.
LieVector Ad(const Rotation& g, const LieVector& x);

// Nearest-rotation projection (Newton–Schulz polar iteration).  Intended for
// inputs already close to SO(3): CLI matrix input, integrator drift.
Mat3 orthonormalize(const Mat3& m, int iterations = 4);

// Bi-invariant rotation distance ||log(r1^{-1} r2)||.
double rotation_distance(const Rotation& r1, const Rotation& r2);

} // namespace srso3
