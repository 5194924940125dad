#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rt3d/kernel.hpp"
#include "rt3d/phantom.hpp"
#include "rt3d/reconstruct.hpp"
#include "rt3d/sphere_grid.hpp"

namespace rt3d {

/// Limiting profile across a jump: f0 - f_delta * integral_h^inf phi(s) ds.
double predicted_response(const Kernel& k, const JumpParams& jump, double h);

struct EdgeProfile {
    std::vector<double> h;
    std::vector<double> reconstructed;
    std::vector<double> predicted;
    double max_abs_dev = 0;
    double l2_dev = 0;  // root mean square deviation
};

/// Pairs aligned profiles and fills the deviation metrics.
EdgeProfile compare_profiles(const std::vector<double>& h, const std::vector<double>& reconstructed,
                             const std::vector<double>& predicted);

/// Reduced fraction matched by the continued-fraction scan.
struct RationalMatch {
    long long p = 0;
    long long q = 1;
    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

/// Nearest continued-fraction convergent p/q with q <= q_max and
/// |x - p/q| <= tol, if one exists. With tol * q_max^2 < 1/2 any such
/// fraction is necessarily a convergent, so scanning convergents is exact.
std::optional<RationalMatch> rational_approx(double x, long long q_max, double tol);

struct GenericityOptions {
    long long q_max = 1000;       // rationality scan denominator bound
    double tol = 1e-9;            // rationality scan tolerance
    int m_max = 5;                // integer pair bound for the curve condition
    int curve_samples = 512;
    double tol_flat_rel = 1e-6;   // flat-stretch threshold relative to max |f''|
};

enum class Cond2Verdict { generic, suspect_rational, degenerate };

struct GenericityReport {
    bool cond1_positive_curvature = false;
    std::string cond1_note;

    Cond2Verdict cond2 = Cond2Verdict::generic;
    /// Gradient of alpha(theta,gamma).x0 per angle step (the normalization in
    /// which a lattice-resonant direction shows integer components) and the
    /// chart-scaled gradient; the scan runs on the former.
    std::array<double, 2> lattice_grad{0, 0};
    std::array<double, 2> grad_q{0, 0};
    std::array<std::optional<RationalMatch>, 2> cond2_rationals;
    std::string cond2_note;

    bool cond3_remote_curvature = false;
    std::string cond3_note;

    struct Cond4Entry {
        std::size_t ball_index = 0;
        std::string branch;
        bool pass = false;
        std::string note;
    };
    std::vector<Cond4Entry> cond4;

    std::string notes;

    bool cond4_all_pass() const;
    std::string to_text() const;
};

GenericityReport genericity_report(const Phantom& ph, const SphereGrid& grid, Vec3 x0, Vec3 theta0,
                                   const GenericityOptions& opts = {});

enum class CurveBranch { lower, upper };  // smaller / larger gamma root

/// Directions whose plane through x0 is tangent to the ball from the side
/// alpha.(x0 - center) = -R, sampled as a graph t2 = A(t1) in chart units.
struct TangencyCurve {
    std::size_t ball_index = 0;
    CurveBranch branch = CurveBranch::lower;
    std::vector<double> t1;      // ascending
    std::vector<double> A;
    std::vector<double> Ap;      // dA/dt1
    std::vector<double> theta;   // angle samples backing t1/A
    std::vector<double> gamma;
    double max_residual = 0;     // max |alpha.(x0-c) + R| over the samples
};

/// Throws geometry_error when x0 is not strictly outside the ball or the
/// curve does not intersect the chart.
TangencyCurve tangency_curve(const Ball& b, const SphereGrid& grid, Vec3 x0, int n_samples,
                             CurveBranch branch = CurveBranch::lower, std::size_t ball_index = 0);

/// Sampled data for the curve condition: q(t1) = alpha.x0 along the curve and
/// A(t1), with first and second derivatives in chart units.
struct CurveSamples {
    std::vector<double> t1, q, qp, qpp, A, Ap, App;
};

CurveSamples curve_samples(const TangencyCurve& c, const SphereGrid& grid, Vec3 x0,
                           const Ball& ball);

struct Cond4Flag {
    int m1 = 0, m2 = 0;
    double t1_lo = 0, t1_hi = 0;
    double fprime = 0;
    RationalMatch rational;
};

struct Cond4Result {
    bool pass = true;
    std::vector<Cond4Flag> flags;
    std::string note;
};

/// For every integer pair (M1, M2), 0 < M1^2 + M2^2 <= m_max^2, scans
/// f = M1 q + M2 A for stretches with f'' ~ 0 and tests f' there for
/// small-denominator rationality. Stretches need >= 3 consecutive samples;
/// isolated zeros of f'' are allowed.
Cond4Result condition4_scan(const CurveSamples& s, int m_max, long long q_max, double tol_rational,
                            double tol_flat_rel);

/// Convenience wrapper building the samples from (curve, grid, x0, ball).
Cond4Result condition4_check(const TangencyCurve& c, const SphereGrid& grid, Vec3 x0,
                             const Ball& ball, int m_max, const GenericityOptions& opts = {});

struct RemoteCheckRow {
    double eps = 0;
    double max_abs = 0;
};

/// Reconstructs profiles of a phantom with only remote singularities near x0
/// on each grid (one per eps) and reports max_h |f_eps(x_h)|; decay across
/// the rows is the evidence that remote pieces do not contribute.
std::vector<RemoteCheckRow> remote_convergence_check(const Phantom& remote_only,
                                                     const std::vector<SphereGrid>& grids,
                                                     const Kernel& kernel, Vec3 x0, Vec3 theta0,
                                                     const std::vector<double>& h_values,
                                                     int threads = 0);

}  // namespace rt3d
