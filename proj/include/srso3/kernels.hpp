#pragma once

// Batch kernels behind the grid sweeps (cut-time scans, geodesic sampling,
// distance coarse search).  A scalar reference implementation always exists;
// an AVX2 variant is selected at runtime when the CPU supports it.  The two
// are equivalence-tested; single-point tight-tolerance paths in the library
// always go through the scalar routines.
//
// Backend selection: SRSO3_KERNEL=scalar|avx2|auto in the environment, or
// force_backend() from code.  Default is auto.

#include <cstddef>

#include "srso3/mat3.hpp"

namespace srso3::kernels {

struct Backend {
    const char* name;

    // Cut time t1(beta) and branch code (CutBranch) per lane; beta values
    // must be finite.  branch may be null.
    void (*cut_time_batch)(const double* beta, std::size_t n, double* t1,
                           unsigned char* branch);

    // First column of the closed-form geodesic (the S^2 projection) of the
    // geodesic (phi0, beta) at many times.
    void (*project_batch)(double phi0, double beta, const double* t, std::size_t n,
                          double* x, double* y, double* z);

    // Squared Frobenius gap between the closed-form geodesic at
    // (phi0[i], beta[i], t[i]) and a fixed target rotation.
    void (*frobenius_gap_batch)(const double* phi0, const double* beta,
                                const double* t, std::size_t n, const Mat3& target,
                                double* gap2);
};

const Backend& scalar_backend();

// True when the AVX2 backend was compiled in and the CPU supports it.
bool avx2_available();
const Backend& avx2_backend(); // throws std::runtime_error if unavailable

const Backend& active_backend();
// name: "auto", "scalar" or "avx2"; throws on unknown/unavailable.
void force_backend(const char* name);

} // namespace srso3::kernels
