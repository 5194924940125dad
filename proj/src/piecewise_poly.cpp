#include "rt3d/piecewise_poly.hpp"

#include <algorithm>
#include <set>

#include "rt3d/common.hpp"

namespace rt3d {

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_scale(const Poly& a, const Rational& s) {
    Poly r = a;
    for (auto& c : r) c *= s;
    return r;
}

Poly poly_translate_arg(const Poly& p, const Rational& s) {
    // p(t + s) via repeated Horner: result = ((c_n (t+s) + c_{n-1})(t+s) + ...)
    Poly r;
    for (size_t i = p.size(); i-- > 0;) {
        // r = r * (t + s) + c_i
        Poly shifted(r.size() + 1);
        for (size_t k = 0; k < r.size(); ++k) {
            shifted[k + 1] += r[k];
            shifted[k] += r[k] * s;
        }
        r = std::move(shifted);
        if (r.empty()) r.resize(1);
        r[0] += p[i];
    }
    return r;
}

Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<std::int64_t>(i));
    return r;
}

Rational poly_eval_exact(const Poly& p, const Rational& t) {
    Rational r;
    for (size_t i = p.size(); i-- > 0;) r = r * t + p[i];
    return r;
}

double poly_eval(const Poly& p, double t) {
    double r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * t + p[i].to_double();
    return r;
}

Rational poly_integral(const Poly& p, const Rational& a, const Rational& b) {
    Rational r;
    Rational an = a, bn = b;  // running powers a^{m+1}, b^{m+1}
    for (size_t m = 0; m < p.size(); ++m) {
        r += p[m] * (bn - an) / Rational(static_cast<std::int64_t>(m + 1));
        an *= a;
        bn *= b;
    }
    return r;
}

int PiecewisePoly::max_degree() const {
    int d = 0;
    for (const auto& c : coeffs) d = std::max(d, static_cast<int>(c.size()) - 1);
    return d;
}

double PiecewisePoly::eval(double t) const {
    if (breaks.empty()) return 0.0;
    if (t < breaks.front().to_double() || t >= breaks.back().to_double()) return 0.0;
    // breaks are few (<= 8 in practice); linear scan is fine
    int k = 0;
    while (k + 1 < static_cast<int>(breaks.size()) - 1 && t >= breaks[k + 1].to_double()) ++k;
    return poly_eval(coeffs[k], t);
}

Rational PiecewisePoly::eval_exact(const Rational& t) const {
    if (breaks.empty() || t < breaks.front() || t >= breaks.back()) return Rational(0);
    int k = 0;
    while (k + 1 < static_cast<int>(breaks.size()) - 1 && t >= breaks[k + 1]) ++k;
    return poly_eval_exact(coeffs[k], t);
}

Rational PiecewisePoly::eval_piece_exact(int piece, const Rational& t) const {
    return poly_eval_exact(coeffs.at(piece), t);
}

PiecewisePoly PiecewisePoly::derivative() const {
    PiecewisePoly r;
    r.breaks = breaks;
    r.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) r.coeffs.push_back(poly_derivative(c));
    return r;
}

PiecewisePoly PiecewisePoly::shift(const Rational& s) const {
    PiecewisePoly r;
    r.breaks.reserve(breaks.size());
    for (const auto& b : breaks) r.breaks.push_back(b + s);
    r.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) r.coeffs.push_back(poly_translate_arg(c, -s));
    return r;
}

PiecewisePoly PiecewisePoly::scale(const Rational& s) const {
    PiecewisePoly r;
    r.breaks = breaks;
    for (const auto& c : coeffs) r.coeffs.push_back(poly_scale(c, s));
    return r;
}

Rational PiecewisePoly::integral_exact() const {
    Rational r;
    for (size_t k = 0; k < coeffs.size(); ++k) r += poly_integral(coeffs[k], breaks[k], breaks[k + 1]);
    return r;
}

double PiecewisePoly::integral_from(double h) const {
    if (breaks.empty()) return 0.0;
    double r = 0;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        const double a = breaks[k].to_double();
        const double b = breaks[k + 1].to_double();
        if (b <= h) continue;
        if (a >= h) {
            r += poly_integral(coeffs[k], breaks[k], breaks[k + 1]).to_double();
        } else {
            // partial piece [h, b] via the double antiderivative
            double fa = 0, fb = 0, ph = h, pb = b;
            for (size_t m = 0; m < coeffs[k].size(); ++m) {
                const double c = coeffs[k][m].to_double() / static_cast<double>(m + 1);
                fa += c * ph;
                fb += c * pb;
                ph *= h;
                pb *= b;
            }
            r += fb - fa;
        }
    }
    return r;
}

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    if (a.breaks.empty()) return b;
    if (b.breaks.empty()) return a;
    std::set<Rational> bs(a.breaks.begin(), a.breaks.end());
    bs.insert(b.breaks.begin(), b.breaks.end());
    PiecewisePoly r;
    r.breaks.assign(bs.begin(), bs.end());
    auto piece_at = [](const PiecewisePoly& p, const Rational& t) -> Poly {
        if (t < p.breaks.front() || t >= p.breaks.back()) return {};
        int k = 0;
        while (k + 1 < static_cast<int>(p.breaks.size()) - 1 && t >= p.breaks[k + 1]) ++k;
        return p.coeffs[k];
    };
    for (size_t k = 0; k + 1 < r.breaks.size(); ++k) {
        const Rational& lo = r.breaks[k];
        r.coeffs.push_back(poly_add(piece_at(a, lo), piece_at(b, lo)));
    }
    r.normalize();
    return r;
}

PiecewisePoly PiecewisePoly::mul_poly(const Poly& m) const {
    PiecewisePoly r;
    r.breaks = breaks;
    for (const auto& c : coeffs) r.coeffs.push_back(poly_mul(c, m));
    return r;
}

void PiecewisePoly::normalize() {
    auto is_zero = [](const Poly& p) {
        for (const auto& c : p)
            if (c != Rational(0)) return false;
        return true;
    };
    // trim zero pieces at either edge
    while (!coeffs.empty() && is_zero(coeffs.front())) {
        coeffs.erase(coeffs.begin());
        breaks.erase(breaks.begin());
    }
    while (!coeffs.empty() && is_zero(coeffs.back())) {
        coeffs.pop_back();
        breaks.pop_back();
    }
    for (auto& c : coeffs) {
        while (!c.empty() && c.back() == Rational(0)) c.pop_back();
    }
}

PiecewisePoly bspline(int n) {
    if (n < 0 || n > 4) throw input_error("bspline degree must be in [0, 4]");
    PiecewisePoly b;
    b.breaks = {Rational(0), Rational(1)};
    b.coeffs = {Poly{Rational(1)}};
    for (int d = 1; d <= n; ++d) {
        // B_d(t) = ( t * B_{d-1}(t) + (d+1-t) * B_{d-1}(t-1) ) / d
        const Rational inv_d{1, d};
        PiecewisePoly left = b.mul_poly(Poly{Rational(0), Rational(1)});
        PiecewisePoly right = b.shift(Rational(1)).mul_poly(Poly{Rational(d + 1), Rational(-1)});
        b = left.scale(inv_d) + right.scale(inv_d);
    }
    return b;
}

}  // namespace rt3d
