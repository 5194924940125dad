#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rt3d/common.hpp"

namespace rt3d {

/// Uniform-density ball.
struct Ball {
    Vec3 center;
    double radius = 1.0;
    double density = 1.0;
};

/// Finite union of balls; densities of overlapping balls add.
struct Phantom {
    std::vector<Ball> balls;
};

/// One-sided limits of the phantom across a single ball boundary.
/// theta0 is the unit normal pointing into the ball interior.
struct JumpParams {
    double f0 = 0;       // interior limit
    double f_delta = 0;  // interior minus exterior limit
    Vec3 theta0;
};

/// Second fundamental form of a boundary sphere in an orthonormal tangent
/// basis; for a ball of radius R this is I/R.
struct SurfaceCurvature {
    double q11 = 0, q12 = 0, q22 = 0;
    double det() const { return q11 * q22 - q12 * q12; }
};

SurfaceCurvature ball_curvature(const Ball& b);

/// Plane integral of one ball: density * pi * (R^2 - d^2) for d = p - alpha.center,
/// zero once |d| >= R. Throws input_error for a non-unit alpha.
double ball_radon(const Ball& b, Vec3 alpha, double p);

/// Sum of ball_radon over the phantom.
double phantom_radon(const Phantom& ph, Vec3 alpha, double p);

/// Independent check for the closed forms above: midpoint Riemann sum of the
/// phantom over the plane {x : alpha.x = p} on a Cartesian grid of the given
/// step. The per-row cell counts are evaluated in closed form, which leaves
/// the sum bit-for-bit equal to the naive double loop.
double radon_quadrature_oracle(const Phantom& ph, Vec3 alpha, double p, double grid_step);

/// center - radius * theta0; theta0 points into the interior.
Vec3 boundary_point(const Ball& b, Vec3 theta0);

/// Jump data at a point lying on exactly one ball boundary, from exact ball
/// membership (boundary tolerance boundary_tol * radius per ball).
JumpParams jump_params(const Phantom& ph, Vec3 x0, Vec3 theta0, double boundary_tol = 1e-9);

/// Index of the unique ball whose boundary contains x0; throws geometry_error
/// when zero or several boundaries match.
std::size_t boundary_ball_index(const Phantom& ph, Vec3 x0, double boundary_tol = 1e-9);

/// Both plane offsets p0 at which {alpha.x = p0} is tangent to the sphere,
/// ordered: (alpha.center - R, alpha.center + R).
std::pair<double, double> tangency_offsets(const Ball& b, Vec3 alpha);

/// Slope of the Radon data against (p - p0)_+ just inside the tangency offset
/// of one ball, fitted by least squares with a quadratic correction term.
/// Expected value for a ball: 2 pi * density * R.
double local_amplitude_slope(const Phantom& ph, std::size_t ball_index, Vec3 alpha,
                             double fit_window, int n_samples = 64);

}  // namespace rt3d
