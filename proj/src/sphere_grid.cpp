#include "rt3d/sphere_grid.hpp"

#include <algorithm>
#include <cmath>

namespace rt3d {

SphereGrid SphereGrid::build(int n_theta, int n_gamma, double eps, double rho,
                             double p_min, double p_max) {
    if (n_theta < 4 || n_gamma < 2) throw input_error("need n_theta >= 4 and n_gamma >= 2");
    if (!(eps > 0)) throw input_error("eps must be positive");
    if (!(rho >= 0 && rho < 1)) throw input_error("rho must be in [0, 1)");
    if (!(p_min < p_max)) throw input_error("p_min must be below p_max");

    SphereGrid g;
    g.n_theta = n_theta;
    g.n_gamma = n_gamma;
    g.eps = eps;
    g.rho = rho;
    g.p_min = p_min;
    g.p_max = p_max;
    g.dtheta = 2.0 * kPi / n_theta;
    g.dgamma = kPi / n_gamma;

    g.j_min = static_cast<int>(std::ceil(p_min / eps - rho));
    g.j_max = static_cast<int>(std::floor(p_max / eps - rho));
    if (g.j_max < g.j_min) throw input_error("p range holds no affine samples");

    const int nr = g.rings();
    g.ring_sin.resize(nr);
    g.ax.resize(static_cast<size_t>(nr) * n_theta);
    g.ay.resize(g.ax.size());
    g.az.resize(g.ax.size());
    for (int r = 0; r < nr; ++r) {
        const int i2 = r + 1;
        // sin(gamma) evaluated at min(i2, n_gamma - i2) keeps the weight of a
        // ring and its mirror bit-identical
        g.ring_sin[r] = std::sin(g.dgamma * std::min(i2, n_gamma - i2));
        const double cg = std::cos(g.dgamma * i2);
        const double sg = std::sin(g.dgamma * i2);
        for (int i1 = 0; i1 < n_theta; ++i1) {
            const double th = g.dtheta * i1;
            const size_t idx = static_cast<size_t>(r) * n_theta + i1;
            g.ax[idx] = std::cos(th) * sg;
            g.ay[idx] = std::sin(th) * sg;
            g.az[idx] = cg;
        }
    }
    return g;
}

void SphereGrid::check_index(int i1, int i2) const {
    if (i1 < 0 || i1 >= n_theta || i2 < 1 || i2 >= n_gamma)
        throw input_error("direction index out of range");
}

Vec3 SphereGrid::direction(int i1, int i2) const {
    check_index(i1, i2);
    const size_t idx = static_cast<size_t>(i2 - 1) * n_theta + i1;
    return {ax[idx], ay[idx], az[idx]};
}

double SphereGrid::weight(int i1, int i2) const {
    check_index(i1, i2);
    return ring_sin[i2 - 1] * dtheta * dgamma;
}

GridChart chart_at(const SphereGrid& g, Vec3 theta0, Vec3 x0) {
    require_unit(theta0, "theta0");
    const double gamma = std::acos(std::clamp(theta0.z, -1.0, 1.0));
    const double sg = std::sin(gamma);
    if (sg < 1e-6) throw geometry_error("theta0 is too close to a chart pole");
    double theta = std::atan2(theta0.y, theta0.x);
    if (theta < 0) theta += 2.0 * kPi;

    const double ct = std::cos(theta), st = std::sin(theta);
    const double cg = std::cos(gamma);

    // partial derivatives of alpha(theta, gamma) . x0
    const double q_t = (-st * sg) * x0.x + (ct * sg) * x0.y;
    const double q_g = (ct * cg) * x0.x + (st * cg) * x0.y - sg * x0.z;
    const double q_tt = (-ct * sg) * x0.x + (-st * sg) * x0.y;
    const double q_tg = (-st * cg) * x0.x + (ct * cg) * x0.y;
    const double q_gg = (-ct * sg) * x0.x + (-st * sg) * x0.y - cg * x0.z;

    const double kt = g.dtheta / g.eps;
    const double kg = g.dgamma / g.eps;

    GridChart c;
    c.theta_star = theta;
    c.gamma_star = gamma;
    c.t_star[0] = theta / kt;
    c.t_star[1] = gamma / kg;
    c.grad_q[0] = kt * q_t;
    c.grad_q[1] = kg * q_g;
    c.hess_q[0][0] = kt * kt * q_tt;
    c.hess_q[0][1] = c.hess_q[1][0] = kt * kg * q_tg;
    c.hess_q[1][1] = kg * kg * q_gg;
    c.lattice_grad[0] = q_t;
    c.lattice_grad[1] = q_g;
    c.lattice_hess[0][0] = q_tt;
    c.lattice_hess[0][1] = c.lattice_hess[1][0] = q_tg;
    c.lattice_hess[1][1] = q_gg;
    return c;
}

}  // namespace rt3d
