#pragma once

#include <array>
#include <string>
#include <vector>

#include "rt3d/piecewise_poly.hpp"

namespace rt3d {

/// Interpolating kernel phi with exact rational pieces, centered so that the
/// support is [-W/2, W/2] and phi(n) = delta_{n,0} on the integers.
/// Derivatives up to order 3 are materialized at construction; doubles enter
/// only at evaluation time.
class Kernel {
public:
    /// The production kernel: degree 4, support [-3,3], C^2, unit integral,
    /// built from cardinal B-splines as
    ///   raw(t) = 1/2 (B3(t) + B3(t-2)) + 4 B3(t-1) - 2 (B4(t) + B4(t-1)),
    ///   phi(t) = raw(t + 3).
    static Kernel build();

    /// Wrap an arbitrary centered piecewise polynomial (used by the axiom
    /// checker on deliberately broken kernels).
    static Kernel from_pieces(PiecewisePoly phi);

    /// m-th derivative at t, 0 <= m <= 3; zero outside the support.
    double eval(double t, int m) const;

    /// Integral of phi over [h, +inf); 1 below the support, 0 above it.
    double tail_integral(double h) const;

    Rational integral_exact() const;

    /// psi(q, s) = sum_j (j - q + s)_+ phi''(q - j); finite sum over the taps
    /// with q - j inside the support. Periodic in q with period 1.
    double psi(double q, double s) const;

    /// Integral of psi(t, s) over t in [0, 1] by composite Gauss quadrature
    /// split at the kink of the (.)_+ factor.
    double psi_unit_time_integral(double s) const;

    /// -Integral over s in [h, +inf) of psi_unit_time_integral(s).
    double psi_tail_double_integral(double h) const;

    double support_min() const { return phi_.breaks.front().to_double(); }
    double support_max() const { return phi_.breaks.back().to_double(); }

    const PiecewisePoly& pieces(int m = 0) const { return pw_[m]; }

private:
    Kernel() = default;
    void finish();

    PiecewisePoly phi_;
    std::array<PiecewisePoly, 4> pw_;  // phi and derivatives 1..3

    // double mirror of the rational pieces, for evaluation
    struct Mirror {
        std::vector<double> breaks;
        std::vector<std::array<double, 5>> c;  // monomial coefficients per piece
        double eval(double t) const;
    };
    std::array<Mirror, 4> mirror_;
};

struct AxiomCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_pass() const;
    const AxiomCheck* find(const std::string& name) const;
    std::string to_text() const;
};

/// Checks the kernel axioms: order-2 polynomial exactness, compact support,
/// C^2 smoothness at the knots (exact one-sided rational limits), bounded
/// third derivative, exact unit integral, interpolation, symmetry.
/// Failures come back as report entries, never as exceptions.
AxiomReport verify_assumptions(const Kernel& k);

/// Piecewise coefficients as CSV: break_lo,break_hi,c0,c1,c2,c3,c4 per piece.
std::string kernel_coeff_csv(const Kernel& k);

}  // namespace rt3d
