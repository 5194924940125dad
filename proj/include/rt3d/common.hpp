#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rt3d {

inline constexpr double kPi = 3.14159265358979323846;

/// Bad arguments to an operation (non-unit direction, index out of range, ...).
struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Geometric preconditions violated (point not on a boundary, pole chart, ...).
struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numeric failure (degenerate fit, affine sample range exceeded, ...).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config file problems; carries a 1-based line number (0 = whole file).
struct config_error : std::runtime_error {
    int line = 0;
    config_error(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return s * a; }
    friend bool operator==(Vec3 a, Vec3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline void require_unit(Vec3 a, const char* what, double tol = 1e-12) {
    if (std::fabs(norm(a) - 1.0) > tol)
        throw input_error(std::string(what) + " must be a unit vector");
}

}  // namespace rt3d
