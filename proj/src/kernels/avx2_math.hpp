#pragma once

// AVX2 double-precision sin/cos for the kernel sweeps.  Cody–Waite reduction
// modulo pi/2 with a 3-term split (exact j*c products for |j| < 2^26, i.e.
// |x| up to ~5e7), then Taylor polynomials on [-pi/4, pi/4] through y^17
// (sin) and y^18 (cos); truncation < 1e-19, total error a few ulp.

#include <immintrin.h>

namespace srso3::kernels::avx2m {

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

// pi/2 = PIO2_A + PIO2_B + PIO2_C + O(4.3e-35); A and B carry 27 bits each.
inline constexpr double kTwoOverPi = 0x1.45f306dc9c883p-1;
inline constexpr double kPio2A = 0x1.921fb54000000p+0;
inline constexpr double kPio2B = 0x1.10b4610000000p-30;
inline constexpr double kPio2C = 0x1.a62633145c06ep-58;

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d j = _mm256_round_pd(_mm256_mul_pd(x, set1(kTwoOverPi)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d y = _mm256_fnmadd_pd(j, set1(kPio2A), x);
    y = _mm256_fnmadd_pd(j, set1(kPio2B), y);
    y = _mm256_fnmadd_pd(j, set1(kPio2C), y);

    // quadrant q = j mod 4, exact in doubles
    const __m256d q = _mm256_sub_pd(
        j, _mm256_mul_pd(set1(4.0), _mm256_floor_pd(_mm256_mul_pd(j, set1(0.25)))));

    const __m256d z = _mm256_mul_pd(y, y);

    // sin(y) = y * (1 + z*(S1 + z*(... ))), Sk = (-1)^k/(2k+1)!
    __m256d ps = set1(0x1.952c77030ad4ap-49);                  // 1/17!
    ps = _mm256_fmadd_pd(ps, z, set1(-0x1.ae7f3e733b81fp-41)); // -1/15!
    ps = _mm256_fmadd_pd(ps, z, set1(0x1.6124613a86d09p-33));  // 1/13!
    ps = _mm256_fmadd_pd(ps, z, set1(-0x1.ae64567f544e4p-26)); // -1/11!
    ps = _mm256_fmadd_pd(ps, z, set1(0x1.71de3a556c734p-19));  // 1/9!
    ps = _mm256_fmadd_pd(ps, z, set1(-0x1.a01a01a01a01ap-13)); // -1/7!
    ps = _mm256_fmadd_pd(ps, z, set1(0x1.1111111111111p-7));   // 1/5!
    ps = _mm256_fmadd_pd(ps, z, set1(-0x1.5555555555555p-3));  // -1/3!
    const __m256d sin_y = _mm256_fmadd_pd(_mm256_mul_pd(ps, z), y, y);

    // cos(y) = 1 + z*(C1 + z*(...)), Ck = (-1)^k/(2k)!
    __m256d pc = set1(-0x1.6827863b97d97p-53);                 // -1/18!
    pc = _mm256_fmadd_pd(pc, z, set1(0x1.ae7f3e733b81fp-45));  // 1/16!
    pc = _mm256_fmadd_pd(pc, z, set1(-0x1.93974a8c07c9dp-37)); // -1/14!
    pc = _mm256_fmadd_pd(pc, z, set1(0x1.1eed8eff8d898p-29));  // 1/12!
    pc = _mm256_fmadd_pd(pc, z, set1(-0x1.27e4fb7789f5cp-22)); // -1/10!
    pc = _mm256_fmadd_pd(pc, z, set1(0x1.a01a01a01a01ap-16));  // 1/8!
    pc = _mm256_fmadd_pd(pc, z, set1(-0x1.6c16c16c16c17p-10)); // -1/6!
    pc = _mm256_fmadd_pd(pc, z, set1(0x1.5555555555555p-5));   // 1/4!
    pc = _mm256_fmadd_pd(pc, z, set1(-0.5));
    const __m256d cos_y = _mm256_fmadd_pd(pc, z, set1(1.0));

    // Quadrant fixup: q=1 -> (cos, -sin), q=2 -> (-sin, -cos), q=3 -> (-cos, sin).
    const __m256d q1 = _mm256_cmp_pd(q, set1(1.0), _CMP_EQ_OQ);
    const __m256d q2 = _mm256_cmp_pd(q, set1(2.0), _CMP_EQ_OQ);
    const __m256d q3 = _mm256_cmp_pd(q, set1(3.0), _CMP_EQ_OQ);
    const __m256d swap = _mm256_or_pd(q1, q3);

    __m256d s = _mm256_blendv_pd(sin_y, cos_y, swap);
    __m256d c = _mm256_blendv_pd(cos_y, sin_y, swap);

    const __m256d neg = set1(-0.0);
    const __m256d s_flip = _mm256_or_pd(q2, q3);
    const __m256d c_flip = _mm256_or_pd(q1, q2);
    s = _mm256_xor_pd(s, _mm256_and_pd(s_flip, neg));
    c = _mm256_xor_pd(c, _mm256_and_pd(c_flip, neg));

    s_out = s;
    c_out = c;
}

} // namespace srso3::kernels::avx2m
