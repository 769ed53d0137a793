// AVX2 kernel backend.  This translation unit is compiled with -mavx2 -mfma;
// callers reach it only through the dispatch table after a CPUID check.

#include "srso3/kernels.hpp"

#ifdef SRSO3_HAVE_AVX2

#include <cmath>

#include "avx2_math.hpp"
#include "srso3/detail/cut_time.hpp"

namespace srso3::kernels {

namespace {

using namespace avx2m;

void cut_time_batch_avx2(const double* beta, std::size_t n, double* t1,
                         unsigned char* branch) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d zero = _mm256_setzero_pd();
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d inv_s3 = set1(detail::inv_sqrt3());
    const __m256d pi = set1(M_PI);
    const __m256d two_pi = set1(2.0 * M_PI);
    const __m256d half = set1(0.5);

    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d b = _mm256_loadu_pd(beta + i);
        const __m256d ab = _mm256_and_pd(b, abs_mask);
        const __m256d w = _mm256_sqrt_pd(_mm256_fmadd_pd(b, b, set1(1.0)));
        const __m256d t_full = _mm256_div_pd(two_pi, w);

        const __m256d mask_zero = _mm256_cmp_pd(b, zero, _CMP_EQ_OQ);
        const __m256d mask_full =
            _mm256_andnot_pd(mask_zero, _mm256_cmp_pd(ab, inv_s3, _CMP_GE_OQ));
        const __m256d mask_digon =
            _mm256_andnot_pd(_mm256_or_pd(mask_zero, mask_full), _mm256_cmp_pd(b, b, _CMP_ORD_Q));

        __m256d t_digon = zero;
        if (_mm256_movemask_pd(mask_digon) != 0) {
            __m256d lo = _mm256_div_pd(pi, w); // B > 0
            __m256d hi = t_full;               // B < 0
            for (int it = 0; it < 100; ++it) {
                const __m256d mid = _mm256_mul_pd(half, _mm256_add_pd(lo, hi));
                __m256d sh, ch, sx, cx;
                sincos4(_mm256_mul_pd(half, _mm256_mul_pd(mid, w)), sh, ch);
                sincos4(_mm256_mul_pd(half, _mm256_mul_pd(ab, mid)), sx, cx);
                const __m256d bval = _mm256_fmadd_pd(_mm256_mul_pd(w, ch), cx,
                                                     _mm256_mul_pd(_mm256_mul_pd(ab, sh), sx));
                const __m256d pos = _mm256_cmp_pd(bval, zero, _CMP_GT_OQ);
                lo = _mm256_blendv_pd(lo, mid, pos);
                hi = _mm256_blendv_pd(mid, hi, pos);
            }
            t_digon = _mm256_mul_pd(half, _mm256_add_pd(lo, hi));
        }

        __m256d t = _mm256_blendv_pd(t_digon, t_full, mask_full);
        t = _mm256_blendv_pd(t, pi, mask_zero);
        _mm256_storeu_pd(t1 + i, t);

        if (branch) {
            const int mz = _mm256_movemask_pd(mask_zero);
            const int mf = _mm256_movemask_pd(mask_full);
            for (int k = 0; k < 4; ++k) {
                branch[i + static_cast<std::size_t>(k)] = static_cast<unsigned char>(
                    (mz >> k) & 1 ? CutBranch::BetaZero
                                  : ((mf >> k) & 1 ? CutBranch::FullCircle
                                                   : CutBranch::DigonPi));
            }
        }
    }
    if (n4 < n)
        scalar_backend().cut_time_batch(beta + n4, n - n4, t1 + n4,
                                        branch ? branch + n4 : nullptr);
}

void project_batch_avx2(double phi0, double beta, const double* t, std::size_t n,
                        double* x, double* y, double* z) {
    const std::size_t n4 = n & ~std::size_t{3};
    const double w2s = 1.0 + beta * beta;
    const double ws = std::sqrt(w2s);
    const __m256d w = set1(ws);
    const __m256d inv_w = set1(1.0 / ws);
    const __m256d inv_w2 = set1(1.0 / w2s);
    const __m256d c0 = set1(std::cos(phi0));
    const __m256d s0 = set1(std::sin(phi0));
    const __m256d bb = set1(beta);
    const __m256d one = set1(1.0);
    const __m256d two = set1(2.0);
    const __m256d half = set1(0.5);

    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d tt = _mm256_loadu_pd(t + i);
        __m256d sh, ch;
        sincos4(_mm256_mul_pd(half, _mm256_mul_pd(tt, w)), sh, ch);
        const __m256d m =
            _mm256_mul_pd(_mm256_mul_pd(two, _mm256_mul_pd(sh, ch)), inv_w);
        const __m256d nn =
            _mm256_mul_pd(_mm256_mul_pd(two, _mm256_mul_pd(sh, sh)), inv_w2);
        const __m256d bn = _mm256_mul_pd(bb, nn);
        _mm256_storeu_pd(x + i, _mm256_sub_pd(one, nn));
        _mm256_storeu_pd(y + i, _mm256_fmsub_pd(m, c0, _mm256_mul_pd(bn, s0)));
        _mm256_storeu_pd(z + i, _mm256_fmadd_pd(m, s0, _mm256_mul_pd(bn, c0)));
    }
    if (n4 < n)
        scalar_backend().project_batch(phi0, beta, t + n4, n - n4, x + n4, y + n4,
                                       z + n4);
}

void frobenius_gap_batch_avx2(const double* phi0, const double* beta, const double* t,
                              std::size_t n, const Mat3& g, double* gap2) {
    const std::size_t n4 = n & ~std::size_t{3};
    const __m256d one = set1(1.0);
    const __m256d two = set1(2.0);
    const __m256d half = set1(0.5);

    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d b = _mm256_loadu_pd(beta + i);
        const __m256d tt = _mm256_loadu_pd(t + i);
        const __m256d p0 = _mm256_loadu_pd(phi0 + i);
        const __m256d w2 = _mm256_fmadd_pd(b, b, one);
        const __m256d w = _mm256_sqrt_pd(w2);

        __m256d sh, ch, s0, c0, sb, cb;
        sincos4(_mm256_mul_pd(half, _mm256_mul_pd(tt, w)), sh, ch);
        sincos4(p0, s0, c0);
        sincos4(_mm256_mul_pd(b, tt), sb, cb);

        const __m256d m =
            _mm256_div_pd(_mm256_mul_pd(two, _mm256_mul_pd(sh, ch)), w);
        const __m256d nn =
            _mm256_div_pd(_mm256_mul_pd(two, _mm256_mul_pd(sh, sh)), w2);
        const __m256d cp = _mm256_fmsub_pd(cb, c0, _mm256_mul_pd(sb, s0));
        const __m256d sp = _mm256_fmadd_pd(sb, c0, _mm256_mul_pd(cb, s0));
        const __m256d bn = _mm256_mul_pd(b, nn);
        const __m256d bm = _mm256_mul_pd(b, m);
        const __m256d q = _mm256_fnmadd_pd(_mm256_mul_pd(b, b), nn, one);

        __m256d r[9];
        r[0] = _mm256_sub_pd(one, nn);
        r[1] = _mm256_fnmadd_pd(m, cp, _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), bn), sp));
        r[2] = _mm256_fnmadd_pd(m, sp, _mm256_mul_pd(bn, cp));
        r[3] = _mm256_fmsub_pd(m, c0, _mm256_mul_pd(bn, s0));
        r[4] = _mm256_fnmadd_pd(_mm256_mul_pd(nn, cp), c0,
                                _mm256_fmadd_pd(q, cb, _mm256_mul_pd(bm, sb)));
        r[5] = _mm256_fnmadd_pd(_mm256_mul_pd(nn, sp), c0,
                                _mm256_fmsub_pd(q, sb, _mm256_mul_pd(bm, cb)));
        r[6] = _mm256_fmadd_pd(m, s0, _mm256_mul_pd(bn, c0));
        r[7] = _mm256_fnmadd_pd(_mm256_mul_pd(nn, cp), s0,
                                _mm256_fmsub_pd(bm, cb, _mm256_mul_pd(q, sb)));
        r[8] = _mm256_fnmadd_pd(_mm256_mul_pd(nn, sp), s0,
                                _mm256_fmadd_pd(q, cb, _mm256_mul_pd(bm, sb)));

        __m256d acc = _mm256_setzero_pd();
        for (int k = 0; k < 9; ++k) {
            const __m256d d = _mm256_sub_pd(r[k], set1(g.e[static_cast<std::size_t>(k)]));
            acc = _mm256_fmadd_pd(d, d, acc);
        }
        _mm256_storeu_pd(gap2 + i, acc);
    }
    if (n4 < n)
        scalar_backend().frobenius_gap_batch(phi0 + n4, beta + n4, t + n4, n - n4, g,
                                             gap2 + n4);
}

} // namespace

const Backend& avx2_backend_impl() {
    static const Backend b{"avx2", &cut_time_batch_avx2, &project_batch_avx2,
                           &frobenius_gap_batch_avx2};
    return b;
}

} // namespace srso3::kernels

#endif // SRSO3_HAVE_AVX2
