#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace srso3 {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Dense 3x3 matrix, row-major.
struct Mat3 {
    std::array<double, 9> e{};

    double& operator()(int r, int c) { return e[static_cast<std::size_t>(3 * r + c)]; }
    double operator()(int r, int c) const { return e[static_cast<std::size_t>(3 * r + c)]; }

    static Mat3 zero() { return Mat3{}; }
    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.e[i] = e[i] + o.e[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.e[i] = e[i] - o.e[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (std::size_t i = 0; i < 9; ++i) r.e[i] = e[i] * s;
        return r;
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) +
                          (*this)(i, 2) * o(2, j);
        return r;
    }
    Vec3 operator*(const Vec3& v) const {
        return {e[0] * v.x + e[1] * v.y + e[2] * v.z,
                e[3] * v.x + e[4] * v.y + e[5] * v.z,
                e[6] * v.x + e[7] * v.y + e[8] * v.z};
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double trace() const { return e[0] + e[4] + e[8]; }

    double det() const {
        return e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
               e[2] * (e[3] * e[7] - e[4] * e[6]);
    }

    Vec3 col(int j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }
    Vec3 row(int i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }

    double max_abs_diff(const Mat3& o) const {
        double m = 0.0;
        for (std::size_t i = 0; i < 9; ++i) m = std::max(m, std::abs(e[i] - o.e[i]));
        return m;
    }
};

inline Mat3 operator*(double s, const Mat3& m) { return m * s; }

} // namespace srso3
