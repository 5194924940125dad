#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "rt3d/common.hpp"

namespace rt3d {

/// Fractional-part sequence {f(eps i)/eps}, eps i in [a, b].
struct FracSequence {
    std::vector<double> points;  // in [0, 1)
    double eps = 0;
    std::string descriptor;
};

struct FracSequence2D {
    std::vector<std::array<double, 2>> points;  // in [0, 1)^2
    double eps = 0;
    std::string descriptor;
};

FracSequence frac_points(const std::function<double(double)>& f, double a, double b, double eps,
                         std::string descriptor = {});

/// Pairs ({f(eps i)/eps}, {g(eps i)/eps}) over the same index set.
FracSequence2D frac_points_2d(const std::function<double(double)>& f,
                              const std::function<double(double)>& g, double a, double b,
                              double eps, std::string descriptor = {});

/// |sum_i e(M x_i)| / N with e(t) = exp(2 pi i t); 0 for equidistributed
/// sequences, 1 at exact resonance. M must be nonzero.
double weyl_sum(const FracSequence& seq, long long M);

/// Exact star discrepancy by sorting:
/// D*_N = max_k max(k/N - x_(k), x_(k) - (k-1)/N).
double star_discrepancy_1d(const FracSequence& seq);

struct Discrepancy2D {
    double value = 0;
    double bound = 0;  // grid-resolution error bound 2/r
};

/// Star discrepancy over anchored boxes [0,u) x [0,v) with corners restricted
/// to an r x r grid; exact up to the reported bound.
Discrepancy2D discrepancy_2d(const FracSequence2D& seq, int grid_resolution);

/// (x, y) -> ({x + a y}, y).
FracSequence2D shear_map(const FracSequence2D& seq, double a);

}  // namespace rt3d
