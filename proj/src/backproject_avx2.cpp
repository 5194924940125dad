// AVX2 variant of the backprojection inner loop. Four directions per block,
// identical operation sequence to tap_sum_scalar in backproject_impl.hpp:
// no FMA, no reassociation, the same clamped loads and masked selects, so
// every lane reproduces the scalar value bit for bit.

#include <immintrin.h>

#include "backproject_impl.hpp"

namespace rt3d::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(signmask, v);
}

}  // namespace

double ring_sum_avx2(const BpProblem& P, int ring, const double xv[3], int& bad_i1) {
    CompensatedSum cs;
    const double hw = P.ring_half_w[ring];
    const std::size_t base = static_cast<std::size_t>(ring) * P.n_theta;

    const __m256d x0 = _mm256_set1_pd(xv[0]);
    const __m256d x1 = _mm256_set1_pd(xv[1]);
    const __m256d x2 = _mm256_set1_pd(xv[2]);
    const __m256d v_inv_eps = _mm256_set1_pd(P.inv_eps);
    const __m256d v_rho = _mm256_set1_pd(P.rho);
    const __m256d v_eps = _mm256_set1_pd(P.eps);
    const __m256d v_three = _mm256_set1_pd(3.0);
    const __m256d v_plo = _mm256_set1_pd(P.p_lo);
    const __m256d v_phi = _mm256_set1_pd(P.p_hi);
    const __m256d v_zero = _mm256_setzero_pd();
    const __m128i idx_lo = _mm_setzero_si128();
    const __m128i idx_hi = _mm_set1_epi32(7);

    const int blocks = P.n_theta / 4;
    for (int blk = 0; blk < blocks; ++blk) {
        const int i1 = blk * 4;
        const __m256d ax = _mm256_loadu_pd(P.ax + base + i1);
        const __m256d ay = _mm256_loadu_pd(P.ay + base + i1);
        const __m256d az = _mm256_loadu_pd(P.az + base + i1);

        // p = (ax*x0 + ay*x1) + az*x2
        const __m256d p = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(ax, x0), _mm256_mul_pd(ay, x1)), _mm256_mul_pd(az, x2));

        const __m256d in_range = _mm256_and_pd(_mm256_cmp_pd(p, v_plo, _CMP_GE_OQ),
                                               _mm256_cmp_pd(p, v_phi, _CMP_LE_OQ));
        const int range_mask = _mm256_movemask_pd(in_range);
        if (range_mask != 0xF) {
            for (int l = 0; l < 4; ++l) {
                if (!(range_mask & (1 << l))) {
                    bad_i1 = i1 + l;
                    return 0.0;
                }
            }
        }

        const __m256d w = _mm256_sub_pd(_mm256_mul_pd(p, v_inv_eps), v_rho);
        const __m256d j0 = _mm256_ceil_pd(_mm256_sub_pd(w, v_three));
        const __m256d t0 = _mm256_sub_pd(w, j0);

        __m256d adotc[kMaxBalls];
        for (int b = 0; b < P.n_balls; ++b) {
            adotc[b] = _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(ax, _mm256_set1_pd(P.bcx[b])),
                              _mm256_mul_pd(ay, _mm256_set1_pd(P.bcy[b]))),
                _mm256_mul_pd(az, _mm256_set1_pd(P.bcz[b])));
        }

        __m256d acc = v_zero;
        for (int k = 0; k < kTaps; ++k) {
            const __m256d kd = _mm256_set1_pd(static_cast<double>(k));
            const __m256d t = _mm256_sub_pd(t0, kd);

            __m128i idx = _mm_add_epi32(_mm256_cvttpd_epi32(_mm256_floor_pd(t)), _mm_set1_epi32(3));
            idx = _mm_min_epi32(_mm_max_epi32(idx, idx_lo), idx_hi);
            const __m256d c0 = _mm256_i32gather_pd(P.c0, idx, 8);
            const __m256d c1 = _mm256_i32gather_pd(P.c1, idx, 8);
            const __m256d c2 = _mm256_i32gather_pd(P.c2, idx, 8);
            // poly = c0 + t*(c1 + t*c2)
            const __m256d poly =
                _mm256_add_pd(c0, _mm256_mul_pd(t, _mm256_add_pd(c1, _mm256_mul_pd(t, c2))));
            const __m256d support = _mm256_cmp_pd(abs_pd(t), v_three, _CMP_LT_OQ);
            const __m256d wk = _mm256_and_pd(support, poly);

            const __m256d jk = _mm256_add_pd(j0, kd);
            __m256d g;
            if (P.table) {
                alignas(32) double jk_arr[4];
                _mm256_storeu_pd(jk_arr, jk);
                alignas(32) double g_arr[4];
                for (int l = 0; l < 4; ++l) {
                    long jr = static_cast<long>(jk_arr[l]) - P.j_min;
                    jr = jr < 0 ? 0 : (jr >= P.n_p ? P.n_p - 1 : jr);
                    g_arr[l] = P.table[static_cast<std::size_t>(i1 + l) * P.t_stride_i1 +
                                       static_cast<std::size_t>(ring) * P.n_p +
                                       static_cast<std::size_t>(jr)];
                }
                g = _mm256_loadu_pd(g_arr);
            } else {
                const __m256d pj = _mm256_mul_pd(v_eps, _mm256_add_pd(v_rho, jk));
                g = v_zero;
                for (int b = 0; b < P.n_balls; ++b) {
                    const __m256d d = _mm256_sub_pd(pj, adotc[b]);
                    const __m256d q = _mm256_sub_pd(_mm256_set1_pd(P.br2[b]), _mm256_mul_pd(d, d));
                    const __m256d pos = _mm256_cmp_pd(q, v_zero, _CMP_GT_OQ);
                    const __m256d term =
                        _mm256_and_pd(pos, _mm256_mul_pd(_mm256_set1_pd(P.brhopi[b]), q));
                    g = _mm256_add_pd(g, term);
                }
            }
            acc = _mm256_add_pd(acc, _mm256_mul_pd(g, wk));
        }

        alignas(32) double lanes[4];
        _mm256_storeu_pd(lanes, acc);
        cs.add(hw * lanes[0]);
        cs.add(hw * lanes[1]);
        cs.add(hw * lanes[2]);
        cs.add(hw * lanes[3]);
    }

    for (int i1 = blocks * 4; i1 < P.n_theta; ++i1) {
        bool ok = true;
        const double ts = tap_sum_scalar(P, ring, i1, xv, ok);
        if (!ok) {
            bad_i1 = i1;
            return 0.0;
        }
        cs.add(hw * ts);
    }
    bad_i1 = -1;
    return cs.result();
}

}  // namespace rt3d::detail
