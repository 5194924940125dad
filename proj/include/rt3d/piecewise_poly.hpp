#pragma once

#include <vector>

#include "rt3d/common.hpp"
#include "rt3d/rational.hpp"

namespace rt3d {

/// Polynomial with exact rational coefficients in the global variable t,
/// c[0] + c[1] t + c[2] t^2 + ...
using Poly = std::vector<Rational>;

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& s);
/// p(t + s) expanded back into monomials of t.
Poly poly_translate_arg(const Poly& p, const Rational& s);
Poly poly_derivative(const Poly& p);
Rational poly_eval_exact(const Poly& p, const Rational& t);
double poly_eval(const Poly& p, double t);
/// Exact integral of p over [a, b].
Rational poly_integral(const Poly& p, const Rational& a, const Rational& b);

/// Piecewise polynomial with exact rational coefficients. The value is
/// coeffs[k] on [breaks[k], breaks[k+1]) and identically zero outside
/// [breaks.front(), breaks.back()].
struct PiecewisePoly {
    std::vector<Rational> breaks;      // strictly increasing
    std::vector<Poly> coeffs;          // size breaks.size() - 1

    int piece_count() const { return static_cast<int>(coeffs.size()); }
    int max_degree() const;

    double eval(double t) const;
    Rational eval_exact(const Rational& t) const;             // right-continuous at breaks
    Rational eval_piece_exact(int piece, const Rational& t) const;

    PiecewisePoly derivative() const;
    /// The function t -> f(t - s); shifts the support right by s.
    PiecewisePoly shift(const Rational& s) const;
    PiecewisePoly scale(const Rational& s) const;
    Rational integral_exact() const;
    /// Integral over [h, +inf) in double precision.
    double integral_from(double h) const;

    friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b);
    /// Multiply by a global polynomial factor.
    PiecewisePoly mul_poly(const Poly& m) const;

    /// Drops zero-width pieces and trims identically-zero edge pieces.
    void normalize();
};

/// Cardinal B-spline of degree n supported on [0, n+1], built by the
/// degree-raising recursion, exact rational coefficients.
/// Throws input_error unless 0 <= n <= 4.
PiecewisePoly bspline(int n);

}  // namespace rt3d
