#include <doctest.h>

#include <cmath>
#include <random>

#include "rt3d/kernel.hpp"

using namespace rt3d;

namespace {

// Cox-de Boor recursion on the uniform integer knots, evaluated recursively;
// independent of the exact piecewise-polynomial construction under test.
double cdb(int degree, double t) {
    if (degree == 0) return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
    return (t * cdb(degree - 1, t) + (degree + 1 - t) * cdb(degree - 1, t - 1)) / degree;
}

// second derivative of B_n via the difference recursion B_n' = B_{n-1}(t) - B_{n-1}(t-1)
double cdb_d2(int degree, double t) {
    return cdb(degree - 2, t) - 2.0 * cdb(degree - 2, t - 1) + cdb(degree - 2, t - 2);
}

// the centered production kernel's phi'' through the oracle route
double phi_d2_oracle(double tc) {
    const double t = tc + 3.0;
    return 0.5 * (cdb_d2(3, t) + cdb_d2(3, t - 2)) + 4.0 * cdb_d2(3, t - 1) -
           2.0 * (cdb_d2(4, t) + cdb_d2(4, t - 1));
}

double psi_oracle(double q, double s) {
    double sum = 0;
    for (int j = -8; j <= 8; ++j) {
        const double plus = j - q + s;
        if (plus > 0) sum += plus * phi_d2_oracle(q - j);
    }
    return sum;
}

}  // namespace

TEST_CASE("cardinal B-splines: base case and exact knot values") {
    const PiecewisePoly b0 = bspline(0);
    CHECK(b0.eval_exact(Rational(0)) == Rational(1));
    CHECK(b0.eval_exact(Rational(1, 2)) == Rational(1));
    CHECK(b0.eval_exact(Rational(1)) == Rational(0));
    CHECK(b0.eval_exact(Rational(-1, 10)) == Rational(0));

    const PiecewisePoly b3 = bspline(3);
    CHECK(b3.eval_exact(Rational(1)) == Rational(1, 6));
    CHECK(b3.eval_exact(Rational(2)) == Rational(2, 3));
    CHECK(b3.eval_exact(Rational(3)) == Rational(1, 6));

    const PiecewisePoly b4 = bspline(4);
    CHECK(b4.eval_exact(Rational(1)) == Rational(1, 24));
    CHECK(b4.eval_exact(Rational(2)) == Rational(11, 24));
    CHECK(b4.eval_exact(Rational(3)) == Rational(11, 24));
    CHECK(b4.eval_exact(Rational(4)) == Rational(1, 24));

    CHECK_THROWS_AS(bspline(5), input_error);
    CHECK_THROWS_AS(bspline(-1), input_error);
}

TEST_CASE("cardinal B-splines match the recursive oracle") {
    for (int n = 0; n <= 4; ++n) {
        const PiecewisePoly b = bspline(n);
        CHECK(b.integral_exact() == Rational(1));
        for (int i = 0; i <= 600; ++i) {
            const double t = -0.5 + 6.5 * i / 600.0;
            CHECK(std::fabs(b.eval(t) - cdb(n, t)) < 1e-13);
            CHECK(b.eval(t) >= -1e-15);
        }
    }
}

TEST_CASE("production kernel: interpolation, integral, sample value") {
    const Kernel k = Kernel::build();
    const PiecewisePoly& phi = k.pieces(0);
    CHECK(phi.eval_exact(Rational(0)) == Rational(1));
    for (int n : {-3, -2, -1, 1, 2, 3}) CHECK(phi.eval_exact(Rational(n)) == Rational(0));
    CHECK(k.integral_exact() == Rational(1));

    const double want = 0.5 * (cdb(3, 3.5) + cdb(3, 1.5)) + 4.0 * cdb(3, 2.5) -
                        2.0 * (cdb(4, 3.5) + cdb(4, 2.5));
    CHECK(k.eval(0.5, 0) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("kernel evaluation: orders, support, derivative consistency") {
    const Kernel k = Kernel::build();
    CHECK(k.eval(0.0, 1) == 0.0);
    for (int m = 0; m <= 3; ++m) {
        CHECK(k.eval(4.0, m) == 0.0);
        CHECK(k.eval(-3.5, m) == 0.0);
    }
    CHECK_THROWS_AS(k.eval(0.0, 4), input_error);
    CHECK_THROWS_AS(k.eval(0.0, -1), input_error);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-2.9, 2.9);
    const double d = 1e-5;
    for (int it = 0; it < 200; ++it) {
        double t = dist(rng);
        if (std::fabs(t - std::round(t)) < 0.05) continue;  // stay away from knots
        for (int m = 0; m <= 2; ++m) {
            const double fd = (k.eval(t + d, m) - k.eval(t - d, m)) / (2 * d);
            CHECK(fd == doctest::Approx(k.eval(t, m + 1)).epsilon(1e-4).scale(1.0));
        }
    }
}

TEST_CASE("tail integral: endpoints, symmetry point, quadrature oracle") {
    const Kernel k = Kernel::build();
    CHECK(k.tail_integral(-3.0) == 1.0);
    CHECK(k.tail_integral(3.0) == 0.0);
    CHECK(k.tail_integral(-5.0) == 1.0);
    CHECK(k.tail_integral(0.0) == doctest::Approx(0.5).epsilon(1e-14));

    // midpoint-sum oracle for the interval [h, 3]
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int it = 0; it < 20; ++it) {
        const double h = dist(rng);
        const int n = 200000;
        double s = 0;
        const double step = (3.0 - h) / n;
        for (int i = 0; i < n; ++i) s += k.eval(h + (i + 0.5) * step, 0);
        s *= step;
        CHECK(k.tail_integral(h) == doctest::Approx(s).epsilon(5e-9).scale(1.0));
    }
}

TEST_CASE("psi: locality, periodicity, independent oracle") {
    const Kernel k = Kernel::build();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> qd(-5.0, 5.0);
    std::uniform_real_distribution<double> sd(-3.5, 3.5);
    for (int it = 0; it < 100; ++it) {
        const double q = qd(rng);
        CHECK(k.psi(q, -5.0) == 0.0);
        CHECK(k.psi(q, -4.0) == 0.0);
        // for s >= 4 the sum cancels through the order-2 exactness, so it is
        // zero only up to roundoff
        CHECK(std::fabs(k.psi(q, 4.0)) < 1e-13);
        CHECK(std::fabs(k.psi(q, 5.5)) < 1e-13);
        const double s = sd(rng);
        CHECK(k.psi(q + 1.0, s) == doctest::Approx(k.psi(q, s)).epsilon(1e-12).scale(1.0));
        CHECK(k.psi(q, s) == doctest::Approx(psi_oracle(q, s)).epsilon(1e-12).scale(1.0));
    }
    CHECK(k.psi(0.25, 0.5) == doctest::Approx(psi_oracle(0.25, 0.5)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("psi time integral reproduces phi; tail limits") {
    const Kernel k = Kernel::build();
    for (int i = 0; i < 100; ++i) {
        const double s = -4.0 + 8.0 * i / 99.0;
        CHECK(k.psi_unit_time_integral(s) ==
              doctest::Approx(k.eval(s, 0)).epsilon(1e-8).scale(1.0));
    }
    CHECK(k.psi_tail_double_integral(4.0) == doctest::Approx(0.0).epsilon(1e-8).scale(1.0));
    CHECK(k.psi_tail_double_integral(-4.0) == doctest::Approx(-1.0).epsilon(1e-8).scale(1.0));
}

TEST_CASE("axiom report: production kernel passes, broken kernels fail") {
    const AxiomReport good = verify_assumptions(Kernel::build());
    CHECK(good.all_pass());

    // centered cubic B-spline: partition of unity but not order-2 exact, and
    // not interpolating
    const Kernel b3c = Kernel::from_pieces(bspline(3).shift(Rational(-2)));
    const AxiomReport r1 = verify_assumptions(b3c);
    CHECK_FALSE(r1.find("exactness_order2")->pass);
    CHECK_FALSE(r1.find("interpolating")->pass);
    CHECK(r1.find("unit_integral")->pass);
    CHECK(r1.find("symmetric")->pass);

    // doubled kernel: integral breaks
    const Kernel doubled = Kernel::from_pieces(Kernel::build().pieces(0).scale(Rational(2)));
    const AxiomReport r2 = verify_assumptions(doubled);
    CHECK_FALSE(r2.find("unit_integral")->pass);
    CHECK_FALSE(r2.all_pass());

    // off-center cubic B-spline: asymmetric
    const Kernel skew = Kernel::from_pieces(bspline(3).shift(Rational(-1)));
    const AxiomReport r3 = verify_assumptions(skew);
    CHECK_FALSE(r3.find("symmetric")->pass);
    CHECK(r3.find("unit_integral")->pass);
}
