#pragma once

// Deterministic sampling helpers for the verification suites.  mt19937_64 is
// bit-exact by the standard; the double conversions below avoid the
// implementation-defined std distributions so runs reproduce across
// platforms byte for byte.

#include <cstdint>
#include <random>

#include "srso3/so3.hpp"

namespace srso3 {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    Vec3 unit_vector() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * M_PI);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    LieVector lie_vector(double max_norm) {
        const Vec3 u = unit_vector();
        const double r = max_norm * std::cbrt(uniform()); // uniform in the ball
        return {r * u.x, r * u.y, r * u.z};
    }

    // Random rotation as exp of a coefficient vector with norm < max_angle.
    Rotation rotation(double max_angle = M_PI - 0.01) {
        return exp(lie_vector(max_angle));
    }

private:
    std::mt19937_64 eng_;
};

} // namespace srso3
