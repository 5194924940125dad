#include "rt3d/backproject.hpp"

#include <atomic>
#include <vector>

#include "backproject_impl.hpp"

namespace rt3d {

using detail::BpProblem;

const char* variant_name(SimdVariant v) {
    switch (v) {
        case SimdVariant::scalar: return "scalar";
        case SimdVariant::avx2: return "avx2";
        case SimdVariant::neon: return "neon";
    }
    return "?";
}

bool variant_available(SimdVariant v) {
    switch (v) {
        case SimdVariant::scalar:
            return true;
        case SimdVariant::avx2:
#if defined(RT3D_HAVE_AVX2_BUILD)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case SimdVariant::neon:
#if defined(RT3D_HAVE_NEON_BUILD)
            return true;
#else
            return false;
#endif
    }
    return false;
}

SimdVariant detect_variant() {
    if (variant_available(SimdVariant::avx2)) return SimdVariant::avx2;
    if (variant_available(SimdVariant::neon)) return SimdVariant::neon;
    return SimdVariant::scalar;
}

namespace {
std::atomic<SimdVariant> g_active{SimdVariant::scalar};
std::atomic<bool> g_active_set{false};
}  // namespace

SimdVariant active_variant() {
    if (!g_active_set.load()) {
        g_active.store(detect_variant());
        g_active_set.store(true);
    }
    return g_active.load();
}

void set_variant(SimdVariant v) {
    if (!variant_available(v))
        throw input_error(std::string("simd variant not available on this machine: ") + variant_name(v));
    g_active.store(v);
    g_active_set.store(true);
}

SimdVariant parse_variant(const std::string& name) {
    if (name == "auto") return detect_variant();
    if (name == "scalar") return SimdVariant::scalar;
    if (name == "avx2") return SimdVariant::avx2;
    if (name == "neon") return SimdVariant::neon;
    throw input_error("unknown simd variant: " + name);
}

struct Backprojector::Impl {
    BpProblem prob;
    std::vector<double> ring_half_w;
    const SphereGrid* grid;
    std::shared_ptr<const Sinogram> table_keepalive;
};

Backprojector::Backprojector(const DataProvider& provider, const Kernel& kernel,
                             const SphereGrid& grid)
    : impl_(new Impl) {
    Impl& im = *impl_;
    im.grid = &grid;
    BpProblem& P = im.prob;

    P.ax = grid.ax.data();
    P.ay = grid.ay.data();
    P.az = grid.az.data();
    P.n_theta = grid.n_theta;
    P.n_rings = grid.rings();
    P.eps = grid.eps;
    P.inv_eps = 1.0 / grid.eps;
    P.rho = grid.rho;
    P.p_lo = grid.p_min + 3.0 * grid.eps;
    P.p_hi = grid.p_max - 3.0 * grid.eps;
    P.j_min = grid.j_min;
    P.n_p = grid.n_p();

    im.ring_half_w.resize(P.n_rings);
    for (int r = 0; r < P.n_rings; ++r) im.ring_half_w[r] = 0.5 * grid.ring_weight(r);
    P.ring_half_w = im.ring_half_w.data();

    // phi'' as monomials per unit interval; the engine is specific to the
    // support [-3, 3] with integer knots
    const PiecewisePoly& d2 = kernel.pieces(2);
    if (kernel.support_min() != -3.0 || kernel.support_max() != 3.0)
        throw input_error("backprojection engine requires kernel support [-3, 3]");
    for (int p = 0; p < d2.piece_count(); ++p) {
        const Rational lo = d2.breaks[p];
        if (lo.den() != 1) throw input_error("backprojection engine requires integer kernel knots");
        const int idx = static_cast<int>(lo.num()) + 3;
        if (idx < 0 || idx > 5 || d2.coeffs[p].size() > 3)
            throw input_error("unsupported kernel piece layout");
        const Poly& c = d2.coeffs[p];
        P.c0[idx] = c.size() > 0 ? c[0].to_double() : 0.0;
        P.c1[idx] = c.size() > 1 ? c[1].to_double() : 0.0;
        P.c2[idx] = c.size() > 2 ? c[2].to_double() : 0.0;
    }

    if (provider.is_table()) {
        const Sinogram* s = provider.sinogram();
        if (!s->matches(grid)) throw input_error("sinogram table does not match the grid");
        P.table = s->values.data();
        P.t_stride_i1 = static_cast<std::size_t>(grid.rings()) * P.n_p;
        im.table_keepalive = provider.table_shared();
    } else {
        const Phantom& ph = provider.phantom();
        if (static_cast<int>(ph.balls.size()) > detail::kMaxBalls)
            throw input_error("analytic backprojection supports at most 16 balls");
        P.n_balls = static_cast<int>(ph.balls.size());
        for (int b = 0; b < P.n_balls; ++b) {
            const Ball& bl = ph.balls[b];
            if (bl.radius <= 0) throw input_error("ball radius must be positive");
            P.bcx[b] = bl.center.x;
            P.bcy[b] = bl.center.y;
            P.bcz[b] = bl.center.z;
            P.br2[b] = bl.radius * bl.radius;
            P.brhopi[b] = bl.density * kPi;
        }
    }
}

Backprojector::~Backprojector() { delete impl_; }

namespace {

double ring_sum_dispatch(const BpProblem& P, int ring, const double xv[3], int& bad_i1,
                         SimdVariant v) {
    switch (v) {
#if defined(RT3D_HAVE_AVX2_BUILD)
        case SimdVariant::avx2:
            return detail::ring_sum_avx2(P, ring, xv, bad_i1);
#endif
#if defined(RT3D_HAVE_NEON_BUILD)
        case SimdVariant::neon:
            return detail::ring_sum_neon(P, ring, xv, bad_i1);
#endif
        default:
            return detail::ring_sum_scalar(P, ring, xv, bad_i1);
    }
}

}  // namespace

double Backprojector::point_value(Vec3 x, int threads) const {
    const BpProblem& P = impl_->prob;
    const double xv[3] = {x.x, x.y, x.z};
    const SimdVariant v = active_variant();

    std::vector<double> partial(P.n_rings);
    parallel_for_chunks(P.n_rings, threads, [&](int ring) {
        int bad = -1;
        partial[ring] = ring_sum_dispatch(P, ring, xv, bad, v);
        if (bad >= 0)
            throw numeric_error("alpha.x outside usable affine range at direction (i1=" +
                                std::to_string(bad) + ", i2=" + std::to_string(ring + 1) + ")");
    });

    CompensatedSum cs;
    for (int r = 0; r < P.n_rings; ++r) cs.add(partial[r]);
    const double scale = -(P.inv_eps * P.inv_eps) / (4.0 * kPi * kPi);
    return scale * cs.result();
}

double Backprojector::filtered_value(int i1, int i2, double p) const {
    const BpProblem& P = impl_->prob;
    if (i1 < 0 || i1 >= P.n_theta || i2 < 1 || i2 > P.n_rings)
        throw input_error("direction index out of range");
    if (!(p >= P.p_lo) || !(p <= P.p_hi))
        throw numeric_error("p outside usable affine range at direction (i1=" +
                            std::to_string(i1) + ", i2=" + std::to_string(i2) + ")");
    return (P.inv_eps * P.inv_eps) * detail::tap_sum_at_p(P, i2 - 1, i1, p);
}

}  // namespace rt3d
