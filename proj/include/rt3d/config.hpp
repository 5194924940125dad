#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rt3d/edge_response.hpp"
#include "rt3d/phantom.hpp"
#include "rt3d/sphere_grid.hpp"

namespace rt3d {

/// Plain `key = value` experiment description; `ball = cx cy cz radius
/// density` may repeat, `#` starts a comment. Unknown keys and malformed
/// values fail with the line number.
struct ExperimentConfig {
    std::vector<Ball> balls;

    // grid
    int n_theta = 500, n_gamma = 500;
    std::optional<double> eps;  // required
    double rho = 0;
    double p_min = -10, p_max = 10;

    // probe
    int probe_ball = 0;
    std::optional<Vec3> theta0_vec;
    std::optional<std::array<double, 2>> theta0_pi;  // multiples of pi: theta, gamma
    std::optional<Vec3> x0_explicit;
    double h_min = -5, h_max = 5, h_step = 0.25;

    // remote-check sweep
    std::vector<double> eps_list;

    GenericityOptions genericity;

    std::string source_name;
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& name = "<config>");
ExperimentConfig parse_config_file(const std::string& path);

Phantom config_phantom(const ExperimentConfig& c);       // requires >= 1 ball
SphereGrid config_grid(const ExperimentConfig& c);       // requires eps
/// theta0 from either theta0 or theta0_pi; theta0_pi = (a, b) means
/// -(cos(a pi) sin(b pi), sin(a pi) sin(b pi), cos(b pi)).
Vec3 config_theta0(const ExperimentConfig& c);
/// Explicit x0, else center - radius * theta0 of the probe ball.
Vec3 config_x0(const ExperimentConfig& c, Vec3 theta0);
std::vector<double> config_h_grid(const ExperimentConfig& c);
/// Grids for the eps sweep; the angular counts scale like 1/eps from the
/// configured (n_theta, n_gamma, eps) base so the direction density stays
/// of order eps^2.
std::vector<SphereGrid> config_grid_family(const ExperimentConfig& c);

}  // namespace rt3d
