#include "srso3/so3.hpp"

#include <algorithm>
#include <cmath>

namespace srso3 {

Mat3 LieVector::to_matrix() const {
    // xa*(e21-e12) + xb*(e31-e13) + xc*(e32-e23)
    Mat3 m;
    m(0, 1) = -xa;
    m(1, 0) = xa;
    m(0, 2) = -xb;
    m(2, 0) = xb;
    m(1, 2) = -xc;
    m(2, 1) = xc;
    return m;
}

LieVector LieVector::from_skew(const Mat3& m) {
    return {m(1, 0), m(2, 0), m(2, 1)};
}

Rotation Rotation::from_matrix(const Mat3& m, double tol) {
    const Mat3 gram = m.transposed() * m;
    const Mat3 id = Mat3::identity();
    const double defect = gram.max_abs_diff(id);
    if (defect > tol)
        throw InvalidRotation("matrix is not orthogonal: max |R^T R - I| = " +
                              std::to_string(defect));
    const double dd = std::abs(m.det() - 1.0);
    if (dd > tol)
        throw InvalidRotation("matrix has det != 1: |det - 1| = " + std::to_string(dd));
    return Rotation(m);
}

double Rotation::orthogonality_defect() const {
    return (m_.transposed() * m_).max_abs_diff(Mat3::identity());
}

Basis basis() {
    return {LieVector{1, 0, 0}, LieVector{0, 1, 0}, LieVector{0, 0, 1}};
}

LieVector bracket(const LieVector& x, const LieVector& y) {
    // [a,b]=c, [b,c]=a, [c,a]=b make the coefficient bracket a cross product.
    return {x.xb * y.xc - x.xc * y.xb,
            x.xc * y.xa - x.xa * y.xc,
            x.xa * y.xb - x.xb * y.xa};
}

Mat3 ad_matrix(const LieVector& x) {
    // ad(a)=c, ad(b)=-b, ad(c)=a as matrices; the combination is the
    // cross-product matrix of the coefficient triple.
    Mat3 m;
    m(0, 1) = -x.xc;
    m(1, 0) = x.xc;
    m(0, 2) = x.xb;
    m(2, 0) = -x.xb;
    m(1, 2) = -x.xa;
    m(2, 1) = x.xa;
    return m;
}

namespace {

// sin(t)/t and (1-cos(t))/t^2 with series fallback below the cancellation
// threshold.
void sinc_pair(double theta, double& s1, double& s2) {
    if (std::abs(theta) < 1e-4) {
        const double t2 = theta * theta;
        s1 = 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
        s2 = 0.5 - t2 / 24.0 * (1.0 - t2 / 30.0);
    } else {
        s1 = std::sin(theta) / theta;
        const double sh = std::sin(0.5 * theta);
        s2 = 2.0 * sh * sh / (theta * theta);
    }
}

} // namespace

Rotation exp(const LieVector& x) {
    const double theta = x.norm();
    double s1, s2;
    sinc_pair(theta, s1, s2);
    const Mat3 m = x.to_matrix();
    const Mat3 r = Mat3::identity() + s1 * m + s2 * (m * m);
    return Rotation(r, Rotation::unchecked_t{});
}

LieVector log_matrix(const Mat3& m, double input_tol) {
    {
        const double defect = (m.transposed() * m).max_abs_diff(Mat3::identity());
        if (defect > input_tol || std::abs(m.det() - 1.0) > input_tol)
            throw InvalidRotation("log: input fails orthogonality check, defect = " +
                                  std::to_string(defect));
    }
    // Skew part carries sin(theta) * axis.
    const LieVector w{0.5 * (m(1, 0) - m(0, 1)),
                      0.5 * (m(2, 0) - m(0, 2)),
                      0.5 * (m(2, 1) - m(1, 2))};
    const double sin_theta = std::min(w.norm(), 1.0);
    const double cos_theta = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
    const double theta = std::atan2(sin_theta, cos_theta);

    if (theta < 1e-10) return w; // sin(theta)/theta == 1 to machine precision

    if (cos_theta > -1.0 + 1e-6) {
        return w * (theta / sin_theta);
    }

    // Angle near pi: the skew part degenerates, take the axis from the
    // quadratic (symmetric) part: R + R^T = 2 cos(theta) I + 2 (1-cos) u u^T.
    const double k = 1.0 - cos_theta;
    double u[3];
    const double d0 = (m(0, 0) - cos_theta) / k;
    const double d1 = (m(1, 1) - cos_theta) / k;
    const double d2 = (m(2, 2) - cos_theta) / k;
    u[0] = std::sqrt(std::max(d0, 0.0));
    u[1] = std::sqrt(std::max(d1, 0.0));
    u[2] = std::sqrt(std::max(d2, 0.0));
    // Off-diagonal symmetric entries fix the relative signs.
    int imax = 0;
    if (d1 > d0) imax = 1;
    if (d2 > ((imax == 0) ? d0 : d1)) imax = 2;
    const auto sym = [&](int i, int j) { return 0.5 * (m(i, j) + m(j, i)) / k; };
    if (imax == 0) {
        u[1] = sym(0, 1) / u[0];
        u[2] = sym(0, 2) / u[0];
    } else if (imax == 1) {
        u[0] = sym(0, 1) / u[1];
        u[2] = sym(1, 2) / u[1];
    } else {
        u[0] = sym(0, 2) / u[2];
        u[1] = sym(1, 2) / u[2];
    }
    // Normalize and map the rotation axis (u1,u2,u3) back to coefficients
    // (xa,xb,xc) = (u3, -u2, u1).
    const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    LieVector v{u[2] / un, -u[1] / un, u[0] / un};
    // Use the skew part to pick the sign while it still carries information;
    // at theta == pi exactly fall back to the lexicographic representative.
    const double wd = w.xa * v.xa + w.xb * v.xb + w.xc * v.xc;
    if (wd < 0.0) v = -v;
    if (sin_theta < 1e-12) {
        const double lead = (v.xa != 0.0) ? v.xa : ((v.xb != 0.0) ? v.xb : v.xc);
        if (lead < 0.0) v = -v;
    }
    return v * theta;
}

LieVector log(const Rotation& r) { return log_matrix(r.matrix(), 1e-8); }

LieVector Ad(const Rotation& g, const LieVector& x) {
    const Mat3 conj = g.matrix() * x.to_matrix() * g.matrix().transposed();
    return LieVector::from_skew(conj);
}

Mat3 orthonormalize(const Mat3& m, int iterations) {
    Mat3 x = m;
    for (int i = 0; i < iterations; ++i) {
        const Mat3 corr = Mat3::identity() * 3.0 - x.transposed() * x;
        x = x * corr * 0.5;
    }
    return x;
}

double rotation_distance(const Rotation& r1, const Rotation& r2) {
    const Mat3 rel = r1.matrix().transposed() * r2.matrix();
    // Orthogonal up to roundoff of the two factors; be lenient on the check.
    return log_matrix(rel, 1e-6).norm();
}

} // namespace srso3
