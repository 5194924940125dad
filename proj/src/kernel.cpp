#include "rt3d/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "rt3d/common.hpp"

namespace rt3d {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1]; exact through degree 31, far more
// than the piecewise-polynomial integrands here need.
constexpr int kGaussN = 16;
constexpr double kGaussX[kGaussN] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGaussW[kGaussN] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss_segment(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < kGaussN; ++i) s += kGaussW[i] * f(mid + half * kGaussX[i]);
    return s * half;
}

}  // namespace

double Kernel::Mirror::eval(double t) const {
    if (breaks.empty() || t < breaks.front() || t >= breaks.back()) return 0.0;
    int k = 0;
    while (k + 1 < static_cast<int>(breaks.size()) - 1 && t >= breaks[k + 1]) ++k;
    const auto& p = c[k];
    return p[0] + t * (p[1] + t * (p[2] + t * (p[3] + t * p[4])));
}

Kernel Kernel::build() {
    const PiecewisePoly b3 = bspline(3);
    const PiecewisePoly b4 = bspline(4);
    PiecewisePoly raw = (b3 + b3.shift(Rational(2))).scale(Rational(1, 2)) +
                        b3.shift(Rational(1)).scale(Rational(4)) +
                        (b4 + b4.shift(Rational(1))).scale(Rational(-2));
    return from_pieces(raw.shift(Rational(-3)));
}

Kernel Kernel::from_pieces(PiecewisePoly phi) {
    phi.normalize();
    if (phi.breaks.size() < 2) throw input_error("kernel needs at least one piece");
    Kernel k;
    k.phi_ = std::move(phi);
    k.finish();
    return k;
}

void Kernel::finish() {
    pw_[0] = phi_;
    for (int m = 1; m <= 3; ++m) pw_[m] = pw_[m - 1].derivative();
    for (int m = 0; m <= 3; ++m) {
        Mirror& mir = mirror_[m];
        mir.breaks.clear();
        mir.c.clear();
        for (const auto& b : pw_[m].breaks) mir.breaks.push_back(b.to_double());
        for (const auto& poly : pw_[m].coeffs) {
            std::array<double, 5> a{};
            for (size_t i = 0; i < poly.size() && i < 5; ++i) a[i] = poly[i].to_double();
            mir.c.push_back(a);
        }
    }
}

double Kernel::eval(double t, int m) const {
    if (m < 0 || m > 3) throw input_error("derivative order must be in [0, 3]");
    return mirror_[m].eval(t);
}

double Kernel::tail_integral(double h) const {
    if (h <= support_min()) return 1.0;
    if (h >= support_max()) return 0.0;
    return phi_.integral_from(h);
}

Rational Kernel::integral_exact() const { return phi_.integral_exact(); }

double Kernel::psi(double q, double s) const {
    const double lo = support_min(), hi = support_max();
    // phi''(q - j) != 0 requires q - j in (lo, hi)
    const long jlo = static_cast<long>(std::ceil(q - hi));
    const long jhi = static_cast<long>(std::floor(q - lo));
    double sum = 0;
    for (long j = jlo; j <= jhi; ++j) {
        const double plus = static_cast<double>(j) - q + s;
        if (plus <= 0) continue;
        sum += plus * mirror_[2].eval(q - static_cast<double>(j));
    }
    return sum;
}

double Kernel::psi_unit_time_integral(double s) const {
    // The integrand t -> psi(t, s) is piecewise polynomial on [0, 1] with
    // possible kinks at the fractional parts of the knots and of s.
    std::set<double> cuts{0.0, 1.0};
    auto frac = [](double v) {
        double f = v - std::floor(v);
        return (f >= 1.0) ? 0.0 : f;
    };
    for (const auto& b : pw_[2].breaks) cuts.insert(frac(b.to_double()));
    cuts.insert(frac(s));
    double total = 0;
    auto f = [&](double t) { return psi(t, s); };
    double prev = -1;
    for (double c : cuts) {
        if (prev >= 0 && c > prev + 1e-15) total += gauss_segment(f, prev, c);
        prev = c;
    }
    return total;
}

double Kernel::psi_tail_double_integral(double h) const {
    // psi(t, s) vanishes once s is outside the kernel support widened by 1.
    const double top = support_max() + 1.5;
    if (h >= top) return 0.0;
    double total = 0;
    double a = h;
    while (a < top) {
        double b = std::min(std::floor(a) + 1.0, top);
        if (b <= a + 1e-15) b = std::min(a + 1.0, top);
        total += gauss_segment([&](double s) { return psi_unit_time_integral(s); }, a, b);
        a = b;
    }
    return -total;
}

bool AxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string AxiomReport::to_text() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.pass ? "pass" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    return os.str();
}

AxiomReport verify_assumptions(const Kernel& k) {
    AxiomReport rep;
    const PiecewisePoly& phi = k.pieces(0);

    // order-2 polynomial exactness at random points
    {
        std::mt19937 rng(0x5eed);
        std::uniform_real_distribution<double> dist(-10.0, 10.0);
        double worst = 0;
        const double lo = k.support_min(), hi = k.support_max();
        for (int it = 0; it < 1000; ++it) {
            const double t = dist(rng);
            const long jlo = static_cast<long>(std::ceil(t - hi));
            const long jhi = static_cast<long>(std::floor(t - lo));
            double s[3] = {0, 0, 0};
            for (long j = jlo; j <= jhi; ++j) {
                const double v = k.eval(t - static_cast<double>(j), 0);
                const double jd = static_cast<double>(j);
                s[0] += v;
                s[1] += jd * v;
                s[2] += jd * jd * v;
            }
            worst = std::max(worst, std::fabs(s[0] - 1.0));
            worst = std::max(worst, std::fabs(s[1] - t));
            worst = std::max(worst, std::fabs(s[2] - t * t));
        }
        rep.checks.push_back({"exactness_order2", worst < 1e-10,
                              "max |sum_j j^m phi(t-j) - t^m| = " + std::to_string(worst)});
    }

    // compact support
    rep.checks.push_back({"compact_support", phi.breaks.size() >= 2,
                          "[" + phi.breaks.front().str() + ", " + phi.breaks.back().str() + "]"});

    // C^2: one-sided polynomial limits agree exactly at every knot,
    // including the support endpoints where the outside value is 0.
    {
        bool ok = true;
        std::string bad;
        for (int m = 0; m <= 2 && ok; ++m) {
            const PiecewisePoly d = (m == 0) ? phi : k.pieces(m);
            const int n = d.piece_count();
            for (int kn = 0; kn <= n; ++kn) {
                const Rational left = (kn == 0) ? Rational(0) : d.eval_piece_exact(kn - 1, d.breaks[kn]);
                const Rational right = (kn == n) ? Rational(0) : d.eval_piece_exact(kn, d.breaks[kn]);
                if (left != right) {
                    ok = false;
                    bad = "derivative " + std::to_string(m) + " jumps at t = " + d.breaks[kn].str();
                    break;
                }
            }
        }
        rep.checks.push_back({"smoothness_c2", ok, ok ? "phi, phi', phi'' continuous at all knots" : bad});
    }

    // third derivative piecewise continuous and bounded
    {
        const PiecewisePoly& d3 = k.pieces(3);
        double mx = 0;
        for (int p = 0; p < d3.piece_count(); ++p) {
            mx = std::max(mx, std::fabs(d3.eval_piece_exact(p, d3.breaks[p]).to_double()));
            mx = std::max(mx, std::fabs(d3.eval_piece_exact(p, d3.breaks[p + 1]).to_double()));
        }
        rep.checks.push_back({"third_derivative_bounded", std::isfinite(mx),
                              "max |phi'''| = " + std::to_string(mx)});
    }

    // exact unit integral
    {
        const Rational I = k.integral_exact();
        rep.checks.push_back({"unit_integral", I == Rational(1), "integral = " + I.str()});
    }

    // interpolation: phi(n) = delta_{n,0} exactly on the integers
    {
        bool ok = true;
        std::string bad;
        const long nlo = static_cast<long>(std::ceil(k.support_min()));
        const long nhi = static_cast<long>(std::floor(k.support_max()));
        for (long n = nlo; n <= nhi; ++n) {
            const Rational v = phi.eval_exact(Rational(n));
            const Rational want = (n == 0) ? Rational(1) : Rational(0);
            if (v != want) {
                ok = false;
                bad = "phi(" + std::to_string(n) + ") = " + v.str();
                break;
            }
        }
        rep.checks.push_back({"interpolating", ok, ok ? "phi(n) = delta_{n,0}" : bad});
    }

    // symmetry: piece polynomials mirror exactly under t -> -t
    {
        bool ok = true;
        const int n = phi.piece_count();
        for (int p = 0; p < n && ok; ++p) {
            const int q = n - 1 - p;
            if (phi.breaks[p] != -phi.breaks[q + 1] || phi.breaks[p + 1] != -phi.breaks[q]) {
                ok = false;
                break;
            }
            const Poly& a = phi.coeffs[p];
            const Poly& b = phi.coeffs[q];
            const size_t deg = std::max(a.size(), b.size());
            for (size_t m = 0; m < deg; ++m) {
                const Rational am = (m < a.size()) ? a[m] : Rational(0);
                const Rational bm = (m < b.size()) ? b[m] : Rational(0);
                if (am != ((m % 2) ? -bm : bm)) {
                    ok = false;
                    break;
                }
            }
        }
        rep.checks.push_back({"symmetric", ok, ok ? "phi(t) = phi(-t)" : "asymmetric pieces"});
    }

    return rep;
}

std::string kernel_coeff_csv(const Kernel& k) {
    std::ostringstream os;
    os << "break_lo,break_hi,c0,c1,c2,c3,c4\n";
    const PiecewisePoly& phi = k.pieces(0);
    for (int p = 0; p < phi.piece_count(); ++p) {
        os << phi.breaks[p].str() << "," << phi.breaks[p + 1].str();
        for (int m = 0; m < 5; ++m) {
            const Rational c = (m < static_cast<int>(phi.coeffs[p].size())) ? phi.coeffs[p][m] : Rational(0);
            os << "," << c.str();
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace rt3d
