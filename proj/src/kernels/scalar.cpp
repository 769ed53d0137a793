#include <cmath>

#include "srso3/detail/cut_time.hpp"
#include "srso3/kernels.hpp"

namespace srso3::kernels {

namespace {

void cut_time_batch_scalar(const double* beta, std::size_t n, double* t1,
                           unsigned char* branch) {
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = detail::cut_time_scalar(beta[i]);
        t1[i] = r.t1;
        if (branch) branch[i] = static_cast<unsigned char>(r.branch);
    }
}

void project_batch_scalar(double phi0, double beta, const double* t, std::size_t n,
                          double* x, double* y, double* z) {
    const double w2 = 1.0 + beta * beta;
    const double w = std::sqrt(w2);
    const double c0 = std::cos(phi0), s0 = std::sin(phi0);
    for (std::size_t i = 0; i < n; ++i) {
        const double sh = std::sin(0.5 * t[i] * w);
        const double ch = std::cos(0.5 * t[i] * w);
        const double m = 2.0 * sh * ch / w;
        const double nn = 2.0 * sh * sh / w2;
        x[i] = 1.0 - nn;
        y[i] = m * c0 - beta * nn * s0;
        z[i] = m * s0 + beta * nn * c0;
    }
}

void frobenius_gap_batch_scalar(const double* phi0, const double* beta,
                                const double* t, std::size_t n, const Mat3& g,
                                double* gap2) {
    for (std::size_t i = 0; i < n; ++i) {
        const double b = beta[i];
        const double w2 = 1.0 + b * b;
        const double w = std::sqrt(w2);
        const double sh = std::sin(0.5 * t[i] * w);
        const double ch = std::cos(0.5 * t[i] * w);
        const double m = 2.0 * sh * ch / w;
        const double nn = 2.0 * sh * sh / w2;
        const double c0 = std::cos(phi0[i]), s0 = std::sin(phi0[i]);
        const double cb = std::cos(b * t[i]), sb = std::sin(b * t[i]);
        const double cp = cb * c0 - sb * s0; // cos(beta t + phi0)
        const double sp = sb * c0 + cb * s0;
        const double q = 1.0 - b * b * nn;

        double r[9];
        r[0] = 1.0 - nn;
        r[1] = -m * cp - b * nn * sp;
        r[2] = -m * sp + b * nn * cp;
        r[3] = m * c0 - b * nn * s0;
        r[4] = q * cb + b * m * sb - nn * cp * c0;
        r[5] = q * sb - b * m * cb - nn * sp * c0;
        r[6] = m * s0 + b * nn * c0;
        r[7] = b * m * cb - q * sb - nn * cp * s0;
        r[8] = q * cb + b * m * sb - nn * sp * s0;

        double acc = 0.0;
        for (int k = 0; k < 9; ++k) {
            const double d = r[k] - g.e[static_cast<std::size_t>(k)];
            acc += d * d;
        }
        gap2[i] = acc;
    }
}

} // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar", &cut_time_batch_scalar, &project_batch_scalar,
                           &frobenius_gap_batch_scalar};
    return b;
}

} // namespace srso3::kernels
