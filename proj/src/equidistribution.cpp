#include "rt3d/equidistribution.hpp"

#include <algorithm>
#include <cmath>

namespace rt3d {

namespace {

double frac01(double v) {
    double f = v - std::floor(v);
    return (f >= 1.0) ? 0.0 : f;
}

// index range of {i : eps*i in [a, b]}, tolerant to roundoff at the ends
void index_range(double a, double b, double eps, long long& i_lo, long long& i_hi) {
    if (!(eps > 0)) throw input_error("eps must be positive");
    if (!(b > a)) throw input_error("need b > a");
    const double tol = 1e-9;
    i_lo = static_cast<long long>(std::ceil(a / eps - tol));
    i_hi = static_cast<long long>(std::floor(b / eps + tol));
    if (i_hi < i_lo) throw input_error("no lattice points eps*i inside [a, b]");
}

}  // namespace

FracSequence frac_points(const std::function<double(double)>& f, double a, double b, double eps,
                         std::string descriptor) {
    long long i_lo, i_hi;
    index_range(a, b, eps, i_lo, i_hi);
    FracSequence s;
    s.eps = eps;
    s.descriptor = std::move(descriptor);
    s.points.reserve(static_cast<std::size_t>(i_hi - i_lo + 1));
    for (long long i = i_lo; i <= i_hi; ++i)
        s.points.push_back(frac01(f(eps * static_cast<double>(i)) / eps));
    return s;
}

FracSequence2D frac_points_2d(const std::function<double(double)>& f,
                              const std::function<double(double)>& g, double a, double b,
                              double eps, std::string descriptor) {
    long long i_lo, i_hi;
    index_range(a, b, eps, i_lo, i_hi);
    FracSequence2D s;
    s.eps = eps;
    s.descriptor = std::move(descriptor);
    s.points.reserve(static_cast<std::size_t>(i_hi - i_lo + 1));
    for (long long i = i_lo; i <= i_hi; ++i) {
        const double t = eps * static_cast<double>(i);
        s.points.push_back({frac01(f(t) / eps), frac01(g(t) / eps)});
    }
    return s;
}

double weyl_sum(const FracSequence& seq, long long M) {
    if (M == 0) throw input_error("Weyl frequency M must be nonzero");
    if (seq.points.empty()) throw input_error("empty sequence");
    double re = 0, im = 0;
    const double f = 2.0 * kPi * static_cast<double>(M);
    for (const double x : seq.points) {
        re += std::cos(f * x);
        im += std::sin(f * x);
    }
    return std::sqrt(re * re + im * im) / static_cast<double>(seq.points.size());
}

double star_discrepancy_1d(const FracSequence& seq) {
    if (seq.points.empty()) throw input_error("empty sequence");
    std::vector<double> x = seq.points;
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0;
    for (std::size_t k = 1; k <= x.size(); ++k) {
        const double xk = x[k - 1];
        d = std::max(d, static_cast<double>(k) / n - xk);
        d = std::max(d, xk - (static_cast<double>(k) - 1.0) / n);
    }
    return d;
}

Discrepancy2D discrepancy_2d(const FracSequence2D& seq, int grid_resolution) {
    if (grid_resolution < 2) throw input_error("grid resolution must be >= 2");
    if (seq.points.empty()) throw input_error("empty sequence");
    const int r = grid_resolution;
    // counts[iu][iv]: points with x in [iu/r, (iu+1)/r), y likewise
    std::vector<std::vector<long long>> cell(r, std::vector<long long>(r, 0));
    for (const auto& p : seq.points) {
        int iu = static_cast<int>(p[0] * r);
        int iv = static_cast<int>(p[1] * r);
        iu = std::min(iu, r - 1);
        iv = std::min(iv, r - 1);
        ++cell[iu][iv];
    }
    // prefix[iu][iv] = #points in [0, iu/r) x [0, iv/r)
    std::vector<std::vector<long long>> pre(r + 1, std::vector<long long>(r + 1, 0));
    for (int iu = 1; iu <= r; ++iu)
        for (int iv = 1; iv <= r; ++iv)
            pre[iu][iv] = cell[iu - 1][iv - 1] + pre[iu - 1][iv] + pre[iu][iv - 1] -
                          pre[iu - 1][iv - 1];
    const double n = static_cast<double>(seq.points.size());
    double d = 0;
    for (int iu = 1; iu <= r; ++iu) {
        for (int iv = 1; iv <= r; ++iv) {
            const double area =
                (static_cast<double>(iu) / r) * (static_cast<double>(iv) / r);
            d = std::max(d, std::fabs(static_cast<double>(pre[iu][iv]) / n - area));
        }
    }
    return {d, 2.0 / r};
}

FracSequence2D shear_map(const FracSequence2D& seq, double a) {
    FracSequence2D out = seq;
    for (auto& p : out.points) p[0] = frac01(p[0] + a * p[1]);
    return out;
}

}  // namespace rt3d
