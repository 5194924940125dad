#pragma once

// Shared problem view and the scalar per-direction reference for the
// backprojection inner loop. The SIMD translation units replicate exactly the
// operation sequence written here, lane by lane; any change to the arithmetic
// below must be mirrored there or the bit-equivalence tests will fail.

#include <cmath>
#include <cstddef>

#include "rt3d/parallel.hpp"

namespace rt3d::detail {

constexpr int kMaxBalls = 16;
constexpr int kTaps = 7;  // ceil(w-3) .. ceil(w-3)+6 covers the open support (-3,3)

struct BpProblem {
    // directions, ring-major SoA
    const double* ax = nullptr;
    const double* ay = nullptr;
    const double* az = nullptr;
    int n_theta = 0;
    int n_rings = 0;
    const double* ring_half_w = nullptr;  // c_i / 2 per ring

    double eps = 0, inv_eps = 0, rho = 0;
    double p_lo = 0, p_hi = 0;  // usable range [p_min + 3 eps, p_max - 3 eps]
    int j_min = 0, n_p = 0;

    // phi'' monomial coefficients per unit piece of [-3,3], padded to 8 so a
    // clamped index is always a valid (masked-out) load
    double c0[8] = {}, c1[8] = {}, c2[8] = {};

    // analytic source: balls as SoA
    int n_balls = 0;
    double bcx[kMaxBalls] = {}, bcy[kMaxBalls] = {}, bcz[kMaxBalls] = {};
    double br2[kMaxBalls] = {}, brhopi[kMaxBalls] = {};

    // table source: (i1, i2, j) row-major values; null for analytic
    const double* table = nullptr;
    std::size_t t_stride_i1 = 0;  // (n_gamma - 1) * n_p
};

/// Tap sum for one direction at a given plane offset p:
/// sum_k g(alpha, p_{j0+k}) * phi''(w - (j0+k)). No range check.
inline double tap_sum_at_p(const BpProblem& P, int ring, int i1, double p) {
    const std::size_t di = static_cast<std::size_t>(ring) * P.n_theta + i1;
    const double ax = P.ax[di], ay = P.ay[di], az = P.az[di];
    const double w = p * P.inv_eps - P.rho;
    const double j0 = std::ceil(w - 3.0);
    const double t0 = w - j0;

    double adotc[kMaxBalls];
    for (int b = 0; b < P.n_balls; ++b)
        adotc[b] = (ax * P.bcx[b] + ay * P.bcy[b]) + az * P.bcz[b];

    double acc = 0.0;
    for (int k = 0; k < kTaps; ++k) {
        const double kd = static_cast<double>(k);
        const double t = t0 - kd;
        int idx = static_cast<int>(std::floor(t)) + 3;
        idx = idx < 0 ? 0 : (idx > 7 ? 7 : idx);
        const double poly = P.c0[idx] + t * (P.c1[idx] + t * P.c2[idx]);
        const double wk = (std::fabs(t) < 3.0) ? poly : 0.0;

        const double jk = j0 + kd;
        double g;
        if (P.table) {
            long jr = static_cast<long>(jk) - P.j_min;
            jr = jr < 0 ? 0 : (jr >= P.n_p ? P.n_p - 1 : jr);  // masked taps may poke outside
            const std::size_t flat = static_cast<std::size_t>(i1) * P.t_stride_i1 +
                                     static_cast<std::size_t>(ring) * P.n_p +
                                     static_cast<std::size_t>(jr);
            g = P.table[flat];
        } else {
            const double pj = P.eps * (P.rho + jk);
            g = 0.0;
            for (int b = 0; b < P.n_balls; ++b) {
                const double d = pj - adotc[b];
                const double q = P.br2[b] - d * d;
                g += (q > 0.0) ? P.brhopi[b] * q : 0.0;
            }
        }
        acc = acc + g * wk;
    }
    return acc;
}

/// Same with p = alpha . x; returns 0 and clears ok outside the usable range.
inline double tap_sum_scalar(const BpProblem& P, int ring, int i1, const double xv[3], bool& ok) {
    const std::size_t di = static_cast<std::size_t>(ring) * P.n_theta + i1;
    const double p = (P.ax[di] * xv[0] + P.ay[di] * xv[1]) + P.az[di] * xv[2];
    if (!(p >= P.p_lo) || !(p <= P.p_hi)) {
        ok = false;
        return 0.0;
    }
    return tap_sum_at_p(P, ring, i1, p);
}

/// Compensated ring reduction in ascending i1 order; on a range violation
/// returns 0 with bad_i1 set to the offending index.
inline double ring_sum_scalar(const BpProblem& P, int ring, const double xv[3], int& bad_i1) {
    CompensatedSum cs;
    const double hw = P.ring_half_w[ring];
    for (int i1 = 0; i1 < P.n_theta; ++i1) {
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

#if defined(RT3D_HAVE_AVX2_BUILD)
double ring_sum_avx2(const BpProblem& P, int ring, const double xv[3], int& bad_i1);
#endif
#if defined(RT3D_HAVE_NEON_BUILD)
double ring_sum_neon(const BpProblem& P, int ring, const double xv[3], int& bad_i1);
#endif

}  // namespace rt3d::detail
