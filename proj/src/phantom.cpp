#include "rt3d/phantom.hpp"

#include <algorithm>
#include <cmath>

namespace rt3d {

namespace {

// Orthonormal basis (e1, e2) of the plane normal to alpha.
void plane_basis(Vec3 alpha, Vec3& e1, Vec3& e2) {
    const Vec3 seed = (std::fabs(alpha.z) < 0.9) ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 u{alpha.y * seed.z - alpha.z * seed.y, alpha.z * seed.x - alpha.x * seed.z,
           alpha.x * seed.y - alpha.y * seed.x};
    const double nu = norm(u);
    e1 = (1.0 / nu) * u;
    e2 = {alpha.y * e1.z - alpha.z * e1.y, alpha.z * e1.x - alpha.x * e1.z,
          alpha.x * e1.y - alpha.y * e1.x};
}

}  // namespace

SurfaceCurvature ball_curvature(const Ball& b) {
    if (b.radius <= 0) throw input_error("ball radius must be positive");
    return {1.0 / b.radius, 0.0, 1.0 / b.radius};
}

double ball_radon(const Ball& b, Vec3 alpha, double p) {
    require_unit(alpha, "alpha");
    if (b.radius <= 0) throw input_error("ball radius must be positive");
    const double adotc = (alpha.x * b.center.x + alpha.y * b.center.y) + alpha.z * b.center.z;
    const double d = p - adotc;
    const double q = b.radius * b.radius - d * d;
    return (q > 0) ? (b.density * kPi) * q : 0.0;
}

double phantom_radon(const Phantom& ph, Vec3 alpha, double p) {
    require_unit(alpha, "alpha");
    double g = 0;
    for (const Ball& b : ph.balls) {
        const double adotc = (alpha.x * b.center.x + alpha.y * b.center.y) + alpha.z * b.center.z;
        const double d = p - adotc;
        const double q = b.radius * b.radius - d * d;
        g += (q > 0) ? (b.density * kPi) * q : 0.0;
    }
    return g;
}

double radon_quadrature_oracle(const Phantom& ph, Vec3 alpha, double p, double grid_step) {
    require_unit(alpha, "alpha");
    if (grid_step <= 0) throw input_error("grid_step must be positive");
    Vec3 e1, e2;
    plane_basis(alpha, e1, e2);
    const Vec3 origin = p * alpha;
    const double cell = grid_step * grid_step;
    double total = 0;
    for (const Ball& b : ph.balls) {
        const Vec3 w = b.center - origin;
        const double d = dot(w, alpha);  // signed distance from the plane to the center
        const double r2 = b.radius * b.radius - d * d;
        if (r2 <= 0) continue;
        const double r = std::sqrt(r2);
        const double cx = dot(w, e1), cy = dot(w, e2);
        // midpoint grid: cells centered at ((i+1/2) step, (k+1/2) step)
        const long klo = static_cast<long>(std::ceil((cy - r) / grid_step - 0.5));
        const long khi = static_cast<long>(std::floor((cy + r) / grid_step - 0.5));
        long cells = 0;
        for (long k = klo; k <= khi; ++k) {
            const double y = (static_cast<double>(k) + 0.5) * grid_step;
            const double h2 = r2 - (y - cy) * (y - cy);
            if (h2 <= 0) continue;
            const double h = std::sqrt(h2);
            const long ilo = static_cast<long>(std::ceil((cx - h) / grid_step - 0.5));
            const long ihi = static_cast<long>(std::floor((cx + h) / grid_step - 0.5));
            if (ihi >= ilo) cells += ihi - ilo + 1;
        }
        total += b.density * cell * static_cast<double>(cells);
    }
    return total;
}

Vec3 boundary_point(const Ball& b, Vec3 theta0) {
    require_unit(theta0, "theta0");
    return b.center - b.radius * theta0;
}

std::size_t boundary_ball_index(const Phantom& ph, Vec3 x0, double boundary_tol) {
    std::size_t found = ph.balls.size();
    for (std::size_t i = 0; i < ph.balls.size(); ++i) {
        const Ball& b = ph.balls[i];
        if (std::fabs(norm(x0 - b.center) - b.radius) <= boundary_tol * b.radius) {
            if (found != ph.balls.size())
                throw geometry_error("point lies on more than one ball boundary");
            found = i;
        }
    }
    if (found == ph.balls.size()) throw geometry_error("point lies on no ball boundary");
    return found;
}

JumpParams jump_params(const Phantom& ph, Vec3 x0, Vec3 theta0, double boundary_tol) {
    require_unit(theta0, "theta0");
    const std::size_t bi = boundary_ball_index(ph, x0, boundary_tol);
    const Ball& bb = ph.balls[bi];
    // theta0 must be the inward normal of the boundary ball at x0
    const Vec3 inward = (1.0 / bb.radius) * (bb.center - x0);
    if (norm(inward - theta0) > 1e-8)
        throw geometry_error("theta0 is not the inward normal at x0");
    double interior = bb.density;  // crossing into the boundary ball
    for (std::size_t i = 0; i < ph.balls.size(); ++i) {
        if (i == bi) continue;
        const Ball& b = ph.balls[i];
        if (norm(x0 - b.center) < b.radius - boundary_tol * b.radius) interior += b.density;
    }
    return {interior, bb.density, theta0};
}

std::pair<double, double> tangency_offsets(const Ball& b, Vec3 alpha) {
    require_unit(alpha, "alpha");
    const double adotc = dot(alpha, b.center);
    return {adotc - b.radius, adotc + b.radius};
}

double local_amplitude_slope(const Phantom& ph, std::size_t ball_index, Vec3 alpha,
                             double fit_window, int n_samples) {
    require_unit(alpha, "alpha");
    if (ball_index >= ph.balls.size()) throw input_error("ball index out of range");
    if (!(fit_window > 0) || n_samples < 3) throw numeric_error("degenerate slope fit window");
    const Ball& b = ph.balls[ball_index];
    const double p0 = tangency_offsets(b, alpha).first;
    // least squares g ~ s1 u + s2 u^2 on u in (0, fit_window]; s1 estimates
    // the slope at the tangency offset
    double a11 = 0, a12 = 0, a22 = 0, r1 = 0, r2 = 0;
    for (int i = 1; i <= n_samples; ++i) {
        const double u = fit_window * static_cast<double>(i) / n_samples;
        const double g = ball_radon(b, alpha, p0 + u);
        const double u2 = u * u;
        a11 += u * u;
        a12 += u * u2;
        a22 += u2 * u2;
        r1 += g * u;
        r2 += g * u2;
    }
    const double det = a11 * a22 - a12 * a12;
    if (std::fabs(det) < 1e-30) throw numeric_error("slope fit is singular");
    return (r1 * a22 - r2 * a12) / det;
}

}  // namespace rt3d
