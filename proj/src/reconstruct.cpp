#include "rt3d/reconstruct.hpp"

namespace rt3d {

double filtered_value(const DataProvider& provider, const Kernel& kernel, const SphereGrid& grid,
                      int i1, int i2, double p) {
    Backprojector bp(provider, kernel, grid);
    return bp.filtered_value(i1, i2, p);
}

double reconstruct_point(const DataProvider& provider, const Kernel& kernel,
                         const SphereGrid& grid, Vec3 x, int threads) {
    Backprojector bp(provider, kernel, grid);
    return bp.point_value(x, threads);
}

std::vector<ProfileSample> reconstruct_profile(const DataProvider& provider, const Kernel& kernel,
                                               const SphereGrid& grid, Vec3 x0, Vec3 theta0,
                                               const std::vector<double>& h_values, int threads) {
    require_unit(theta0, "theta0");
    Backprojector bp(provider, kernel, grid);
    std::vector<ProfileSample> out;
    out.reserve(h_values.size());
    for (const double h : h_values) {
        const Vec3 xh = x0 + (grid.eps * h) * theta0;
        out.push_back({h, bp.point_value(xh, threads)});
    }
    return out;
}

}  // namespace rt3d
