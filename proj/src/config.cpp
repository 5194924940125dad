#include "rt3d/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rt3d {

namespace {

std::vector<double> parse_numbers(const std::string& value, int line) {
    std::istringstream is(value);
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    std::string rest;
    if (is.fail() && !is.eof()) {
        is.clear();
        is >> rest;
        throw config_error("expected a number, got '" + rest + "'", line);
    }
    return out;
}

double parse_one(const std::string& value, int line) {
    const auto v = parse_numbers(value, line);
    if (v.size() != 1) throw config_error("expected exactly one number", line);
    return v[0];
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& name) {
    ExperimentConfig c;
    c.source_name = name;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw config_error("expected 'key = value'", line);
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t\r");
            const auto e = t.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
        };
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw config_error("empty key", line);
        if (value.empty()) throw config_error("empty value for key '" + key + "'", line);

        if (key == "ball") {
            const auto v = parse_numbers(value, line);
            if (v.size() != 5)
                throw config_error("ball needs 'cx cy cz radius density'", line);
            if (!(v[3] > 0)) throw config_error("ball radius must be positive", line);
            if (!std::isfinite(v[4])) throw config_error("ball density must be finite", line);
            c.balls.push_back({{v[0], v[1], v[2]}, v[3], v[4]});
        } else if (key == "n_theta") {
            c.n_theta = static_cast<int>(parse_one(value, line));
        } else if (key == "n_gamma") {
            c.n_gamma = static_cast<int>(parse_one(value, line));
        } else if (key == "eps") {
            c.eps = parse_one(value, line);
            if (!(*c.eps > 0)) throw config_error("eps must be positive", line);
        } else if (key == "rho") {
            c.rho = parse_one(value, line);
        } else if (key == "p_min") {
            c.p_min = parse_one(value, line);
        } else if (key == "p_max") {
            c.p_max = parse_one(value, line);
        } else if (key == "probe_ball") {
            c.probe_ball = static_cast<int>(parse_one(value, line));
        } else if (key == "theta0") {
            const auto v = parse_numbers(value, line);
            if (v.size() != 3) throw config_error("theta0 needs three components", line);
            c.theta0_vec = Vec3{v[0], v[1], v[2]};
        } else if (key == "theta0_pi") {
            const auto v = parse_numbers(value, line);
            if (v.size() != 2) throw config_error("theta0_pi needs two angles", line);
            c.theta0_pi = std::array<double, 2>{v[0], v[1]};
        } else if (key == "x0") {
            const auto v = parse_numbers(value, line);
            if (v.size() != 3) throw config_error("x0 needs three components", line);
            c.x0_explicit = Vec3{v[0], v[1], v[2]};
        } else if (key == "h_min") {
            c.h_min = parse_one(value, line);
        } else if (key == "h_max") {
            c.h_max = parse_one(value, line);
        } else if (key == "h_step") {
            c.h_step = parse_one(value, line);
            if (!(c.h_step > 0)) throw config_error("h_step must be positive", line);
        } else if (key == "eps_list") {
            c.eps_list = parse_numbers(value, line);
            for (double e : c.eps_list)
                if (!(e > 0)) throw config_error("eps_list entries must be positive", line);
        } else if (key == "q_max") {
            c.genericity.q_max = static_cast<long long>(parse_one(value, line));
        } else if (key == "rational_tol") {
            c.genericity.tol = parse_one(value, line);
        } else if (key == "m_max") {
            c.genericity.m_max = static_cast<int>(parse_one(value, line));
        } else if (key == "curve_samples") {
            c.genericity.curve_samples = static_cast<int>(parse_one(value, line));
        } else {
            throw config_error("unknown key '" + key + "'", line);
        }
    }
    return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config_text(os.str(), path);
}

Phantom config_phantom(const ExperimentConfig& c) {
    if (c.balls.empty()) throw config_error("config defines no 'ball' lines");
    return Phantom{c.balls};
}

SphereGrid config_grid(const ExperimentConfig& c) {
    if (!c.eps) throw config_error("missing required key 'eps'");
    return SphereGrid::build(c.n_theta, c.n_gamma, *c.eps, c.rho, c.p_min, c.p_max);
}

Vec3 config_theta0(const ExperimentConfig& c) {
    if (c.theta0_vec && c.theta0_pi)
        throw config_error("give either 'theta0' or 'theta0_pi', not both");
    if (c.theta0_vec) {
        Vec3 v = *c.theta0_vec;
        const double n = norm(v);
        if (!(n > 0)) throw config_error("theta0 must be nonzero");
        if (std::fabs(n - 1.0) > 1e-6)
            throw config_error("theta0 must be a unit vector");
        return (1.0 / n) * v;
    }
    if (c.theta0_pi) {
        const double a = (*c.theta0_pi)[0] * kPi;
        const double b = (*c.theta0_pi)[1] * kPi;
        return {-std::cos(a) * std::sin(b), -std::sin(a) * std::sin(b), -std::cos(b)};
    }
    throw config_error("missing probe direction: set 'theta0' or 'theta0_pi'");
}

Vec3 config_x0(const ExperimentConfig& c, Vec3 theta0) {
    if (c.x0_explicit) return *c.x0_explicit;
    if (c.probe_ball < 0 || c.probe_ball >= static_cast<int>(c.balls.size()))
        throw config_error("probe_ball index out of range");
    return boundary_point(c.balls[c.probe_ball], theta0);
}

std::vector<double> config_h_grid(const ExperimentConfig& c) {
    if (!(c.h_max >= c.h_min)) throw config_error("need h_max >= h_min");
    std::vector<double> h;
    const int n = static_cast<int>(std::floor((c.h_max - c.h_min) / c.h_step + 1e-9));
    h.reserve(n + 1);
    for (int k = 0; k <= n; ++k) h.push_back(c.h_min + c.h_step * k);
    return h;
}

std::vector<SphereGrid> config_grid_family(const ExperimentConfig& c) {
    if (!c.eps) throw config_error("missing required key 'eps'");
    if (c.eps_list.empty()) throw config_error("missing required key 'eps_list'");
    std::vector<SphereGrid> out;
    out.reserve(c.eps_list.size());
    for (const double e : c.eps_list) {
        const double scale = *c.eps / e;
        const int nt = std::max(4, static_cast<int>(std::lround(c.n_theta * scale)));
        const int ng = std::max(2, static_cast<int>(std::lround(c.n_gamma * scale)));
        out.push_back(SphereGrid::build(nt, ng, e, c.rho, c.p_min, c.p_max));
    }
    return out;
}

}  // namespace rt3d
