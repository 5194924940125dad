#include "rt3d/sinogram.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "rt3d/parallel.hpp"

namespace rt3d {

Sinogram build_sinogram(const Phantom& ph, const SphereGrid& g, int threads) {
    Sinogram s;
    s.n_theta = g.n_theta;
    s.n_gamma = g.n_gamma;
    s.n_p = g.n_p();
    s.eps = g.eps;
    s.rho = g.rho;
    s.p_min = g.p_min;
    s.j_min = g.j_min;
    s.values.resize(static_cast<std::size_t>(g.dir_count()) * s.n_p);

    const int nr = g.rings();
    parallel_for_chunks(nr, resolve_thread_count(threads), [&](int ring) {
        const int i2 = ring + 1;
        for (int i1 = 0; i1 < g.n_theta; ++i1) {
            const size_t didx = static_cast<size_t>(ring) * g.n_theta + i1;
            const Vec3 alpha{g.ax[didx], g.ay[didx], g.az[didx]};
            double* row = s.values.data() + s.index(i1, i2, g.j_min);
            for (int j = g.j_min; j <= g.j_max; ++j) row[j - g.j_min] = phantom_radon(ph, alpha, g.p_sample(j));
        }
    });
    return s;
}

void write_rsg(const Sinogram& s, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw numeric_error("cannot open sinogram file for writing: " + path);
    std::fprintf(f, "RSG1 %d %d %d %.17g %.17g %.17g\n", s.n_theta, s.n_gamma, s.n_p, s.eps,
                 s.rho, s.p_min);
    // vector<double> holds little-endian IEEE doubles on every supported target
    const size_t n = s.values.size();
    if (n && std::fwrite(s.values.data(), sizeof(double), n, f) != n) {
        std::fclose(f);
        throw numeric_error("short write to sinogram file: " + path);
    }
    std::fclose(f);
}

Sinogram read_rsg(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw numeric_error("cannot open sinogram file: " + path);
    char magic[5] = {0};
    Sinogram s;
    if (std::fscanf(f, "%4s %d %d %d %lg %lg %lg", magic, &s.n_theta, &s.n_gamma, &s.n_p, &s.eps,
                    &s.rho, &s.p_min) != 7 ||
        std::strcmp(magic, "RSG1") != 0) {
        std::fclose(f);
        throw numeric_error("not an RSG1 sinogram file: " + path);
    }
    std::fgetc(f);  // the newline terminating the header
    if (s.n_theta < 1 || s.n_gamma < 2 || s.n_p < 1) {
        std::fclose(f);
        throw numeric_error("bad sinogram dimensions in " + path);
    }
    s.j_min = static_cast<int>(std::ceil(s.p_min / s.eps - s.rho));
    const size_t n = static_cast<size_t>(s.n_theta) * (s.n_gamma - 1) * s.n_p;
    s.values.resize(n);
    if (std::fread(s.values.data(), sizeof(double), n, f) != n) {
        std::fclose(f);
        throw numeric_error("truncated sinogram file: " + path);
    }
    std::fclose(f);
    return s;
}

DataProvider DataProvider::analytic(Phantom ph) {
    DataProvider p;
    p.phantom_ = std::move(ph);
    return p;
}

DataProvider DataProvider::table(std::shared_ptr<const Sinogram> s) {
    if (!s) throw input_error("null sinogram table");
    DataProvider p;
    p.table_ = std::move(s);
    return p;
}

double DataProvider::sample(const SphereGrid& g, int i1, int i2, int j) const {
    if (table_) {
        if (!table_->matches(g)) throw input_error("sinogram table does not match the grid");
        if (j < g.j_min || j > g.j_max) throw input_error("affine sample index out of range");
        return table_->at(i1, i2, j);
    }
    return phantom_radon(phantom_, g.direction(i1, i2), g.p_sample(j));
}

}  // namespace rt3d
