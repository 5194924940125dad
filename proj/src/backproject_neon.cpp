// NEON (aarch64) variant of the backprojection inner loop. Two directions per
// block, same operation sequence as tap_sum_scalar in backproject_impl.hpp:
// no fused multiply-add, identical masked selects, bit-identical lanes.

#include <arm_neon.h>

#include "backproject_impl.hpp"

namespace rt3d::detail {

double ring_sum_neon(const BpProblem& P, int ring, const double xv[3], int& bad_i1) {
    CompensatedSum cs;
    const double hw = P.ring_half_w[ring];
    const std::size_t base = static_cast<std::size_t>(ring) * P.n_theta;

    const float64x2_t x0 = vdupq_n_f64(xv[0]);
    const float64x2_t x1 = vdupq_n_f64(xv[1]);
    const float64x2_t x2 = vdupq_n_f64(xv[2]);
    const float64x2_t v_inv_eps = vdupq_n_f64(P.inv_eps);
    const float64x2_t v_rho = vdupq_n_f64(P.rho);
    const float64x2_t v_eps = vdupq_n_f64(P.eps);
    const float64x2_t v_three = vdupq_n_f64(3.0);
    const float64x2_t v_zero = vdupq_n_f64(0.0);

    const int blocks = P.n_theta / 2;
    for (int blk = 0; blk < blocks; ++blk) {
        const int i1 = blk * 2;
        const float64x2_t ax = vld1q_f64(P.ax + base + i1);
        const float64x2_t ay = vld1q_f64(P.ay + base + i1);
        const float64x2_t az = vld1q_f64(P.az + base + i1);

        const float64x2_t p =
            vaddq_f64(vaddq_f64(vmulq_f64(ax, x0), vmulq_f64(ay, x1)), vmulq_f64(az, x2));

        double p_arr[2];
        vst1q_f64(p_arr, p);
        for (int l = 0; l < 2; ++l) {
            if (!(p_arr[l] >= P.p_lo) || !(p_arr[l] <= P.p_hi)) {
                bad_i1 = i1 + l;
                return 0.0;
            }
        }

        const float64x2_t w = vsubq_f64(vmulq_f64(p, v_inv_eps), v_rho);
        const float64x2_t j0 = vrndpq_f64(vsubq_f64(w, v_three));
        const float64x2_t t0 = vsubq_f64(w, j0);

        float64x2_t adotc[kMaxBalls];
        for (int b = 0; b < P.n_balls; ++b) {
            adotc[b] = vaddq_f64(vaddq_f64(vmulq_f64(ax, vdupq_n_f64(P.bcx[b])),
                                           vmulq_f64(ay, vdupq_n_f64(P.bcy[b]))),
                                 vmulq_f64(az, vdupq_n_f64(P.bcz[b])));
        }

        float64x2_t acc = v_zero;
        for (int k = 0; k < kTaps; ++k) {
            const float64x2_t kd = vdupq_n_f64(static_cast<double>(k));
            const float64x2_t t = vsubq_f64(t0, kd);

            // coefficient lookup: no gather on NEON, pull lanes out
            double t_arr[2];
            vst1q_f64(t_arr, t);
            double c0_arr[2], c1_arr[2], c2_arr[2];
            for (int l = 0; l < 2; ++l) {
                int idx = static_cast<int>(std::floor(t_arr[l])) + 3;
                idx = idx < 0 ? 0 : (idx > 7 ? 7 : idx);
                c0_arr[l] = P.c0[idx];
                c1_arr[l] = P.c1[idx];
                c2_arr[l] = P.c2[idx];
            }
            const float64x2_t c0 = vld1q_f64(c0_arr);
            const float64x2_t c1 = vld1q_f64(c1_arr);
            const float64x2_t c2 = vld1q_f64(c2_arr);
            const float64x2_t poly =
                vaddq_f64(c0, vmulq_f64(t, vaddq_f64(c1, vmulq_f64(t, c2))));
            const uint64x2_t support = vcltq_f64(vabsq_f64(t), v_three);
            const float64x2_t wk =
                vreinterpretq_f64_u64(vandq_u64(support, vreinterpretq_u64_f64(poly)));

            const float64x2_t jk = vaddq_f64(j0, kd);
            float64x2_t g;
            if (P.table) {
                double jk_arr[2], g_arr[2];
                vst1q_f64(jk_arr, jk);
                for (int l = 0; l < 2; ++l) {
                    long jr = static_cast<long>(jk_arr[l]) - P.j_min;
                    jr = jr < 0 ? 0 : (jr >= P.n_p ? P.n_p - 1 : jr);
                    g_arr[l] = P.table[static_cast<std::size_t>(i1 + l) * P.t_stride_i1 +
                                       static_cast<std::size_t>(ring) * P.n_p +
                                       static_cast<std::size_t>(jr)];
                }
                g = vld1q_f64(g_arr);
            } else {
                const float64x2_t pj = vmulq_f64(v_eps, vaddq_f64(v_rho, jk));
                g = v_zero;
                for (int b = 0; b < P.n_balls; ++b) {
                    const float64x2_t d = vsubq_f64(pj, adotc[b]);
                    const float64x2_t q = vsubq_f64(vdupq_n_f64(P.br2[b]), vmulq_f64(d, d));
                    const uint64x2_t pos = vcgtq_f64(q, v_zero);
                    const float64x2_t prod = vmulq_f64(vdupq_n_f64(P.brhopi[b]), q);
                    g = vaddq_f64(
                        g, vreinterpretq_f64_u64(vandq_u64(pos, vreinterpretq_u64_f64(prod))));
                }
            }
            acc = vaddq_f64(acc, vmulq_f64(g, wk));
        }

        double lanes[2];
        vst1q_f64(lanes, acc);
        cs.add(hw * lanes[0]);
        cs.add(hw * lanes[1]);
    }

    for (int i1 = blocks * 2; i1 < P.n_theta; ++i1) {
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
