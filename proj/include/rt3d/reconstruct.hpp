#pragma once

#include <vector>

#include "rt3d/backproject.hpp"

namespace rt3d {

struct ProfileSample {
    double h = 0;
    double f_eps = 0;
};

/// Second derivative of the interpolated data for one direction,
/// eps^-2 sum_j g(alpha_i, eps(rho+j)) phi''((p - eps(rho+j))/eps).
/// Throws numeric_error when p is outside the range shrunk by 3 eps.
double filtered_value(const DataProvider& provider, const Kernel& kernel, const SphereGrid& grid,
                      int i1, int i2, double p);

/// Discrete inversion formula at one point.
double reconstruct_point(const DataProvider& provider, const Kernel& kernel,
                         const SphereGrid& grid, Vec3 x, int threads = 0);

/// Reconstructions along x_h = x0 + eps*h*theta0, in the order of h_values.
std::vector<ProfileSample> reconstruct_profile(const DataProvider& provider, const Kernel& kernel,
                                               const SphereGrid& grid, Vec3 x0, Vec3 theta0,
                                               const std::vector<double>& h_values,
                                               int threads = 0);

}  // namespace rt3d
