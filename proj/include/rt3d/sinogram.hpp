#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rt3d/phantom.hpp"
#include "rt3d/sphere_grid.hpp"

namespace rt3d {

/// Sampled Radon data g(alpha_i, p_j) on a sphere grid. Values are stored in
/// (i1, i2, j) row-major order, matching the RSG1 file layout.
struct Sinogram {
    int n_theta = 0, n_gamma = 0, n_p = 0;
    double eps = 0, rho = 0, p_min = 0;
    int j_min = 0;
    std::vector<double> values;

    std::size_t index(int i1, int i2, int j) const {
        return (static_cast<std::size_t>(i1) * (n_gamma - 1) + (i2 - 1)) * n_p + (j - j_min);
    }
    double at(int i1, int i2, int j) const { return values[index(i1, i2, j)]; }

    bool matches(const SphereGrid& g) const {
        return n_theta == g.n_theta && n_gamma == g.n_gamma && n_p == g.n_p() &&
               eps == g.eps && rho == g.rho && j_min == g.j_min;
    }
};

/// Evaluates the phantom's Radon transform at every grid sample.
Sinogram build_sinogram(const Phantom& ph, const SphereGrid& g, int threads = 0);

/// RSG1 file: one text header line "RSG1 n_theta n_gamma n_p eps rho p_min\n"
/// followed by the values as little-endian IEEE 64-bit floats in (i1, i2, j)
/// row-major order.
void write_rsg(const Sinogram& s, const std::string& path);
Sinogram read_rsg(const std::string& path);

/// Radon data source for the reconstruction: either the phantom's closed form
/// evaluated on demand, or a stored sinogram table. On-grid queries of the
/// two modes agree bit-for-bit when the table was built from the phantom.
class DataProvider {
public:
    static DataProvider analytic(Phantom ph);
    static DataProvider table(std::shared_ptr<const Sinogram> s);

    bool is_table() const { return table_ != nullptr; }
    const Sinogram* sinogram() const { return table_.get(); }
    std::shared_ptr<const Sinogram> table_shared() const { return table_; }
    const Phantom& phantom() const { return phantom_; }

    /// g(alpha_{i1,i2}, eps*(rho+j))
    double sample(const SphereGrid& g, int i1, int i2, int j) const;

private:
    Phantom phantom_;
    std::shared_ptr<const Sinogram> table_;
};

}  // namespace rt3d
