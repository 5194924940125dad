#pragma once

#include <cstdint>
#include <vector>

#include "rt3d/common.hpp"

namespace rt3d {

/// Latitude-longitude direction set on S^2 with tessellation weights and the
/// affine sample lattice p_j = eps * (rho + j).
///
/// Directions are alpha(theta, gamma) = (cos t sin g, sin t sin g, cos g) at
/// theta = i1 * 2pi/n_theta (i1 in [0, n_theta)) and gamma = i2 * pi/n_gamma
/// (i2 in [1, n_gamma)); the poles and the duplicate theta = 2pi column are
/// dropped. Storage is ring-major: ring r = i2 - 1, fast index i1.
class SphereGrid {
public:
    static SphereGrid build(int n_theta, int n_gamma, double eps, double rho,
                            double p_min, double p_max);

    int n_theta = 0, n_gamma = 0;
    double eps = 0, rho = 0, p_min = 0, p_max = 0;
    double dtheta = 0, dgamma = 0;

    int rings() const { return n_gamma - 1; }
    std::int64_t dir_count() const { return static_cast<std::int64_t>(n_theta) * rings(); }

    /// Affine sample index range: eps*(rho+j) in [p_min, p_max].
    int j_min = 0, j_max = -1;
    int n_p() const { return j_max - j_min + 1; }
    double p_sample(int j) const { return eps * (rho + j); }

    Vec3 direction(int i1, int i2) const;
    /// Tessellation weight sin(gamma_i2) * dtheta * dgamma.
    double weight(int i1, int i2) const;
    double ring_weight(int ring) const { return ring_sin[ring] * dtheta * dgamma; }

    // direction components, SoA, index ring * n_theta + i1
    std::vector<double> ax, ay, az;
    // sin(gamma) per ring, computed from min(i2, n_gamma - i2) so the weight
    // symmetry between gamma and pi - gamma is exact
    std::vector<double> ring_sin;

private:
    void check_index(int i1, int i2) const;
};

/// Local data of the chart H(t) = alpha(t1 * dtheta/eps, t2 * dgamma/eps)
/// (so that grid directions sit at t = (eps i1, eps i2)) around a direction:
/// chart coordinates of theta0 plus the gradient and Hessian of
/// t -> H(t).x0 evaluated there.
struct GridChart {
    double t_star[2] = {0, 0};
    double grad_q[2] = {0, 0};
    double hess_q[2][2] = {{0, 0}, {0, 0}};
    /// Angle-step-normalized gradient (d/dtheta, d/dgamma of alpha.x0); this
    /// is grad_q with the dtheta/eps and dgamma/eps chart scalings divided
    /// out, i.e. the change of alpha.x0 per unit lattice step in angle units.
    double lattice_grad[2] = {0, 0};
    double lattice_hess[2][2] = {{0, 0}, {0, 0}};
    double theta_star = 0, gamma_star = 0;
};

/// Chart data at theta0; throws geometry_error near the poles
/// (sin gamma* < 1e-6), where the parametrization degenerates.
GridChart chart_at(const SphereGrid& g, Vec3 theta0, Vec3 x0);

}  // namespace rt3d
