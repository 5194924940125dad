#include "rt3d/edge_response.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rt3d {

double predicted_response(const Kernel& k, const JumpParams& jump, double h) {
    return jump.f0 - jump.f_delta * k.tail_integral(h);
}

EdgeProfile compare_profiles(const std::vector<double>& h, const std::vector<double>& reconstructed,
                             const std::vector<double>& predicted) {
    if (h.size() != reconstructed.size() || h.size() != predicted.size())
        throw input_error("profile lists must have equal lengths");
    EdgeProfile p;
    p.h = h;
    p.reconstructed = reconstructed;
    p.predicted = predicted;
    double sq = 0;
    for (size_t i = 0; i < h.size(); ++i) {
        const double d = std::fabs(reconstructed[i] - predicted[i]);
        p.max_abs_dev = std::max(p.max_abs_dev, d);
        sq += d * d;
    }
    p.l2_dev = h.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(h.size()));
    return p;
}

std::optional<RationalMatch> rational_approx(double x, long long q_max, double tol) {
    if (!std::isfinite(x) || q_max < 1) return std::nullopt;
    long long p_prev = 1, q_prev = 0;
    long long p = static_cast<long long>(std::floor(x)), q = 1;
    double frac = x - std::floor(x);
    for (int it = 0; it < 64; ++it) {
        if (std::fabs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol)
            return RationalMatch{p, q};
        if (frac < 1e-15) break;
        const double v = 1.0 / frac;
        const double af = std::floor(v);
        if (af > 4.0e18) break;
        const long long a = static_cast<long long>(af);
        frac = v - af;
        const __int128 pn = static_cast<__int128>(a) * p + p_prev;
        const __int128 qn = static_cast<__int128>(a) * q + q_prev;
        if (qn > q_max) break;
        p_prev = p;
        q_prev = q;
        p = static_cast<long long>(pn);
        q = static_cast<long long>(qn);
    }
    return std::nullopt;
}

namespace {

// First and second partial derivatives of alpha(theta, gamma) . v.
struct SphereDotDerivs {
    double f, ft, fg, ftt, ftg, fgg;
};

SphereDotDerivs sphere_dot_derivs(double theta, double gamma, Vec3 v) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    SphereDotDerivs d;
    d.f = ct * sg * v.x + st * sg * v.y + cg * v.z;
    d.ft = -st * sg * v.x + ct * sg * v.y;
    d.fg = ct * cg * v.x + st * cg * v.y - sg * v.z;
    d.ftt = -ct * sg * v.x - st * sg * v.y;
    d.ftg = -st * cg * v.x + ct * cg * v.y;
    d.fgg = -ct * sg * v.x - st * sg * v.y - cg * v.z;
    return d;
}

}  // namespace

bool GenericityReport::cond4_all_pass() const {
    return std::all_of(cond4.begin(), cond4.end(), [](const Cond4Entry& e) { return e.pass; });
}

std::string GenericityReport::to_text() const {
    std::ostringstream os;
    os << "cond1_positive_curvature: " << (cond1_positive_curvature ? "true" : "false") << " ("
       << cond1_note << ")\n";
    os << "cond2_irrational_gradient: ";
    switch (cond2) {
        case Cond2Verdict::generic: os << "generic"; break;
        case Cond2Verdict::degenerate: os << "degenerate"; break;
        case Cond2Verdict::suspect_rational:
            os << "suspect_rational(" << (cond2_rationals[0] ? cond2_rationals[0]->str() : "?")
               << ", " << (cond2_rationals[1] ? cond2_rationals[1]->str() : "?") << ")";
            break;
    }
    os << " (" << cond2_note << ")\n";
    os << "cond3_remote_curvature: " << (cond3_remote_curvature ? "true" : "false") << " ("
       << cond3_note << ")\n";
    if (cond4.empty()) {
        os << "cond4_curve_check: pass (no remote tangent pieces)\n";
    } else {
        for (const auto& e : cond4)
            os << "cond4_curve_check: ball " << e.ball_index << " " << e.branch << ": "
               << (e.pass ? "pass" : "suspect") << " (" << e.note << ")\n";
    }
    if (!notes.empty()) os << "notes: " << notes << "\n";
    return os.str();
}

GenericityReport genericity_report(const Phantom& ph, const SphereGrid& grid, Vec3 x0, Vec3 theta0,
                                   const GenericityOptions& opts) {
    require_unit(theta0, "theta0");
    GenericityReport rep;

    // condition 1: local surface piece has positive principal curvatures
    std::size_t local_ball = ph.balls.size();
    int boundary_hits = 0;
    for (std::size_t i = 0; i < ph.balls.size(); ++i) {
        const Ball& b = ph.balls[i];
        if (std::fabs(norm(x0 - b.center) - b.radius) <= 1e-9 * b.radius) {
            ++boundary_hits;
            local_ball = i;
        }
    }
    if (boundary_hits == 1) {
        const Ball& b = ph.balls[local_ball];
        rep.cond1_positive_curvature = true;
        rep.cond1_note = "x0 on the boundary sphere of ball " + std::to_string(local_ball) +
                         "; principal curvatures 1/R = " + std::to_string(1.0 / b.radius);
    } else if (boundary_hits == 0) {
        rep.cond1_positive_curvature = true;
        rep.cond1_note = "x0 off the singular support; the local condition is vacuous";
        local_ball = ph.balls.size();
    } else {
        rep.cond1_positive_curvature = false;
        rep.cond1_note = "x0 lies on several ball boundaries; the surface self-intersects there";
    }

    // condition 2: rationality scan of the lattice-step gradient of alpha.x0.
    // The scan runs on the per-angle-step normalization: a resonance of the
    // direction lattice with the tangent plane shows up as rational
    // components there regardless of the (typically irrational) ratio of the
    // angular steps to eps.
    const GridChart chart = chart_at(grid, theta0, x0);
    rep.lattice_grad = {chart.lattice_grad[0], chart.lattice_grad[1]};
    rep.grad_q = {chart.grad_q[0], chart.grad_q[1]};
    const double scale = std::max(1.0, norm(x0));
    double hess_norm = 0, grad_norm = 0;
    for (int a = 0; a < 2; ++a) {
        grad_norm = std::max(grad_norm, std::fabs(chart.lattice_grad[a]));
        for (int b = 0; b < 2; ++b)
            hess_norm = std::max(hess_norm, std::fabs(chart.lattice_hess[a][b]));
    }
    if (grad_norm < 1e-12 * scale && hess_norm < 1e-12 * scale) {
        rep.cond2 = Cond2Verdict::degenerate;
        rep.cond2_note = "alpha.x0 is locally constant (zero gradient)";
    } else {
        rep.cond2_rationals[0] = rational_approx(chart.lattice_grad[0], opts.q_max, opts.tol);
        rep.cond2_rationals[1] = rational_approx(chart.lattice_grad[1], opts.q_max, opts.tol);
        if (rep.cond2_rationals[0] && rep.cond2_rationals[1]) {
            rep.cond2 = Cond2Verdict::suspect_rational;
            rep.cond2_note = "all gradient components match rationals with q <= " +
                             std::to_string(opts.q_max);
        } else {
            rep.cond2 = Cond2Verdict::generic;
            rep.cond2_note = "no rational match within tol for at least one component "
                             "(q <= " + std::to_string(opts.q_max) + ")";
        }
    }

    // condition 3: every remote piece is a sphere
    rep.cond3_remote_curvature = true;
    rep.cond3_note = "all boundary pieces are spheres; principal curvatures 1/R > 0";

    // condition 4: tangency curves of the remote balls
    for (std::size_t i = 0; i < ph.balls.size(); ++i) {
        if (i == local_ball) continue;
        const Ball& b = ph.balls[i];
        const double dist = norm(x0 - b.center);
        if (dist <= b.radius * (1.0 + 1e-12)) {
            rep.notes += "ball " + std::to_string(i) + ": x0 inside or on it, no tangent planes; ";
            continue;
        }
        for (CurveBranch br : {CurveBranch::lower, CurveBranch::upper}) {
            TangencyCurve curve;
            try {
                curve = tangency_curve(b, grid, x0, opts.curve_samples, br, i);
            } catch (const geometry_error&) {
                continue;  // branch does not intersect the chart
            }
            if (curve.t1.size() < 8) continue;
            const Cond4Result res =
                condition4_check(curve, grid, x0, b, opts.m_max, opts);
            GenericityReport::Cond4Entry e;
            e.ball_index = i;
            e.branch = (br == CurveBranch::lower) ? "lower" : "upper";
            e.pass = res.pass;
            e.note = res.note;
            rep.cond4.push_back(e);
        }
    }
    return rep;
}

TangencyCurve tangency_curve(const Ball& b, const SphereGrid& grid, Vec3 x0, int n_samples,
                             CurveBranch branch, std::size_t ball_index) {
    if (n_samples < 2) throw input_error("need at least 2 curve samples");
    const Vec3 w = x0 - b.center;
    const double dist = norm(w);
    if (dist <= b.radius * (1.0 + 1e-12))
        throw geometry_error("x0 is not strictly outside the ball; no tangency curve");

    const double R = b.radius;
    const double kt = grid.dtheta / grid.eps;
    const double kg = grid.dgamma / grid.eps;
    constexpr double kPoleSin = 1e-6;

    TangencyCurve c;
    c.ball_index = ball_index;
    c.branch = branch;

    const int fine = std::max(n_samples * 4, 1024);
    std::vector<double> cand_theta, cand_gamma;
    for (int i = 0; i < fine; ++i) {
        const double theta = 2.0 * kPi * (static_cast<double>(i) + 0.5) / fine;
        const double B = w.x * std::cos(theta) + w.y * std::sin(theta);
        const double C = w.z;
        const double K2 = B * B + C * C;
        const double disc = K2 - R * R;
        if (disc <= 0) continue;
        // cos(gamma) roots of B sin(g) + C cos(g) = -R
        const double root = std::fabs(B) * std::sqrt(disc);
        const double c_hi = (-R * C + root) / K2;
        const double c_lo = (-R * C - root) / K2;
        const double cg = (branch == CurveBranch::lower) ? c_hi : c_lo;  // smaller gamma = larger cos
        if (!(cg > -1.0 && cg < 1.0)) continue;
        double gamma = std::acos(cg);
        // squaring may introduce a spurious root; verify and Newton-polish
        auto f = [&](double g) { return B * std::sin(g) + C * std::cos(g) + R; };
        auto fp = [&](double g) { return B * std::cos(g) - C * std::sin(g); };
        if (std::fabs(f(gamma)) > 1e-6 * std::max(1.0, dist)) continue;
        for (int it = 0; it < 4; ++it) {
            const double d = fp(gamma);
            if (std::fabs(d) < 1e-12) break;
            gamma -= f(gamma) / d;
        }
        if (!(std::sin(gamma) > kPoleSin) || !(gamma > 0 && gamma < kPi)) continue;
        if (std::fabs(f(gamma)) > 1e-10) continue;
        cand_theta.push_back(theta);
        cand_gamma.push_back(gamma);
    }
    if (cand_theta.empty())
        throw geometry_error("tangency curve branch does not intersect the chart");

    const int stride = std::max(1, static_cast<int>(cand_theta.size()) / n_samples);
    for (std::size_t i = 0; i < cand_theta.size(); i += stride) {
        const double theta = cand_theta[i], gamma = cand_gamma[i];
        const SphereDotDerivs v = sphere_dot_derivs(theta, gamma, w);
        if (std::fabs(v.fg) < 1e-8) continue;  // fold point: not graph-representable
        const double dgdt = -v.ft / v.fg;
        c.theta.push_back(theta);
        c.gamma.push_back(gamma);
        c.t1.push_back(theta / kt);
        c.A.push_back(gamma / kg);
        c.Ap.push_back(dgdt * kt / kg);
        c.max_residual = std::max(c.max_residual, std::fabs(v.f + R));
    }
    if (c.t1.empty()) throw geometry_error("tangency curve branch has no graph samples");
    return c;
}

CurveSamples curve_samples(const TangencyCurve& c, const SphereGrid& grid, Vec3 x0,
                           const Ball& ball) {
    const Vec3 w = x0 - ball.center;
    const double kt = grid.dtheta / grid.eps;
    const double kg = grid.dgamma / grid.eps;
    CurveSamples s;
    const std::size_t n = c.theta.size();
    s.t1.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = c.theta[i], gamma = c.gamma[i];
        const SphereDotDerivs v = sphere_dot_derivs(theta, gamma, w);
        const SphereDotDerivs q = sphere_dot_derivs(theta, gamma, x0);
        if (std::fabs(v.fg) < 1e-8) continue;
        const double g1 = -v.ft / v.fg;  // d gamma / d theta on the curve
        const double g2 = -(v.ftt + 2.0 * v.ftg * g1 + v.fgg * g1 * g1) / v.fg;
        const double s1 = q.ft + q.fg * g1;
        const double s2 = q.ftt + 2.0 * q.ftg * g1 + q.fgg * g1 * g1 + q.fg * g2;
        s.t1.push_back(theta / kt);
        s.q.push_back(q.f);
        s.qp.push_back(kt * s1);
        s.qpp.push_back(kt * kt * s2);
        s.A.push_back(gamma / kg);
        s.Ap.push_back(g1 * kt / kg);
        s.App.push_back(g2 * kt * kt / kg);
    }
    return s;
}

Cond4Result condition4_scan(const CurveSamples& s, int m_max, long long q_max, double tol_rational,
                            double tol_flat_rel) {
    Cond4Result res;
    const std::size_t n = s.t1.size();
    if (n < 3) {
        res.pass = true;
        res.note = "too few samples for a flat-stretch scan";
        return res;
    }
    int pairs = 0, flagged_pairs = 0;
    for (int m1 = -m_max; m1 <= m_max; ++m1) {
        for (int m2 = -m_max; m2 <= m_max; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            if (m1 * m1 + m2 * m2 > m_max * m_max) continue;
            // (m1, m2) and (-m1, -m2) flag together
            if (m1 < 0 || (m1 == 0 && m2 < 0)) continue;
            ++pairs;
            std::vector<double> fpp(n), fp(n);
            double mx = 0;
            for (std::size_t i = 0; i < n; ++i) {
                fpp[i] = m1 * s.qpp[i] + m2 * s.App[i];
                fp[i] = m1 * s.qp[i] + m2 * s.Ap[i];
                mx = std::max(mx, std::fabs(fpp[i]));
            }
            const double tol_flat = tol_flat_rel * std::max(1.0, mx);
            std::size_t i = 0;
            bool pair_flagged = false;
            while (i < n) {
                if (std::fabs(fpp[i]) >= tol_flat) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j < n && std::fabs(fpp[j]) < tol_flat) ++j;
                if (j - i >= 3) {  // isolated zeros of f'' are allowed
                    std::vector<double> run(fp.begin() + i, fp.begin() + j);
                    std::nth_element(run.begin(), run.begin() + run.size() / 2, run.end());
                    const double fp_med = run[run.size() / 2];
                    if (auto match = rational_approx(fp_med, q_max, tol_rational)) {
                        Cond4Flag fl;
                        fl.m1 = m1;
                        fl.m2 = m2;
                        fl.t1_lo = s.t1[i];
                        fl.t1_hi = s.t1[j - 1];
                        fl.fprime = fp_med;
                        fl.rational = *match;
                        res.flags.push_back(fl);
                        pair_flagged = true;
                    }
                }
                i = j;
            }
            if (pair_flagged) ++flagged_pairs;
        }
    }
    res.pass = res.flags.empty();
    std::ostringstream os;
    if (res.pass) {
        os << "no rational flat stretch over " << pairs << " integer pairs";
    } else {
        os << flagged_pairs << " of " << pairs << " integer pairs flagged;";
        for (const auto& fl : res.flags) {
            os << " (M1=" << fl.m1 << ",M2=" << fl.m2 << ") f'=" << fl.fprime << "~"
               << fl.rational.str() << " on t1 in [" << fl.t1_lo << ", " << fl.t1_hi << "];";
        }
    }
    res.note = os.str();
    return res;
}

Cond4Result condition4_check(const TangencyCurve& c, const SphereGrid& grid, Vec3 x0,
                             const Ball& ball, int m_max, const GenericityOptions& opts) {
    const CurveSamples s = curve_samples(c, grid, x0, ball);
    return condition4_scan(s, m_max, opts.q_max, opts.tol, opts.tol_flat_rel);
}

std::vector<RemoteCheckRow> remote_convergence_check(const Phantom& remote_only,
                                                     const std::vector<SphereGrid>& grids,
                                                     const Kernel& kernel, Vec3 x0, Vec3 theta0,
                                                     const std::vector<double>& h_values,
                                                     int threads) {
    require_unit(theta0, "theta0");
    const DataProvider provider = DataProvider::analytic(remote_only);
    std::vector<RemoteCheckRow> rows;
    rows.reserve(grids.size());
    for (const SphereGrid& g : grids) {
        const auto prof = reconstruct_profile(provider, kernel, g, x0, theta0, h_values, threads);
        double mx = 0;
        for (const auto& s : prof) mx = std::max(mx, std::fabs(s.f_eps));
        rows.push_back({g.eps, mx});
    }
    return rows;
}

}  // namespace rt3d
