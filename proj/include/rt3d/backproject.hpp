#pragma once

#include <string>

#include "rt3d/kernel.hpp"
#include "rt3d/sinogram.hpp"
#include "rt3d/sphere_grid.hpp"

namespace rt3d {

/// Inner-loop implementation of the backprojection sum. All variants run the
/// same per-direction operation sequence and produce bit-identical results;
/// the equivalence tests assert exact equality against the scalar reference.
enum class SimdVariant { scalar, avx2, neon };

const char* variant_name(SimdVariant v);
bool variant_available(SimdVariant v);
/// Best available variant on this machine.
SimdVariant detect_variant();
/// Variant used by new evaluations (process-wide); defaults to detect_variant().
SimdVariant active_variant();
/// Throws input_error if the variant is not available on this machine.
void set_variant(SimdVariant v);
SimdVariant parse_variant(const std::string& name);  // "auto" selects detect_variant()

/// One binding of (data source, kernel, grid); evaluates the discrete
/// inversion formula
///   f_eps(x) = -1/(4 pi^2 eps^2) * sum_i (c_i / 2) * sum_j g(alpha_i, p_j)
///              * phi''((alpha_i . x - p_j) / eps)
/// summed over the full grid (the half weights use the evenness of the Radon
/// transform to avoid cutting the tessellation along a hemisphere boundary).
///
/// The reduction is deterministic for any worker count: each gamma-ring is an
/// independent chunk reduced in fixed i1 order with compensated summation,
/// and the per-ring partials are combined in ring order afterwards.
class Backprojector {
public:
    Backprojector(const DataProvider& provider, const Kernel& kernel, const SphereGrid& grid);
    ~Backprojector();
    Backprojector(const Backprojector&) = delete;
    Backprojector& operator=(const Backprojector&) = delete;

    /// f_eps(x). Throws numeric_error if some alpha_i . x falls outside the
    /// affine range shrunk by the kernel support margin 3 eps.
    double point_value(Vec3 x, int threads = 0) const;

    /// Second derivative of the interpolated data,
    /// eps^-2 sum_j g(alpha_i, p_j) phi''((p - p_j)/eps); the scalar
    /// reference path, also used tap-for-tap by point_value.
    double filtered_value(int i1, int i2, double p) const;

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace rt3d
