#include "rt3d/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rt3d/backproject.hpp"
#include "rt3d/equidistribution.hpp"
#include "rt3d/expr.hpp"
#include "rt3d/svg_plot.hpp"

namespace rt3d {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw numeric_error("cannot open output file: " + path);
    f << text;
}

}  // namespace

std::string profile_csv_text(const ExperimentConfig& cfg, int threads,
                             const std::string& sinogram_path) {
    const Phantom ph = config_phantom(cfg);
    const SphereGrid grid = config_grid(cfg);
    const Kernel kernel = Kernel::build();
    const Vec3 theta0 = config_theta0(cfg);
    const Vec3 x0 = config_x0(cfg, theta0);
    const JumpParams jump = jump_params(ph, x0, theta0);
    const std::vector<double> h = config_h_grid(cfg);

    DataProvider provider = DataProvider::analytic(ph);
    if (!sinogram_path.empty()) {
        auto sino = std::make_shared<Sinogram>(read_rsg(sinogram_path));
        provider = DataProvider::table(std::move(sino));
    }

    const auto prof = reconstruct_profile(provider, kernel, grid, x0, theta0, h, threads);
    std::string out = "h,f_eps,predicted,abs_err\n";
    for (const auto& s : prof) {
        const double pred = predicted_response(kernel, jump, s.h);
        out += num(s.h) + "," + num(s.f_eps) + "," + num(pred) + "," +
               num(std::fabs(s.f_eps - pred)) + "\n";
    }
    return out;
}

std::string genericity_text(const ExperimentConfig& cfg) {
    const Phantom ph = config_phantom(cfg);
    const SphereGrid grid = config_grid(cfg);
    const Vec3 theta0 = config_theta0(cfg);
    const Vec3 x0 = config_x0(cfg, theta0);
    const GenericityReport rep = genericity_report(ph, grid, x0, theta0, cfg.genericity);
    std::string out;
    out += "x0 = " + num(x0.x) + " " + num(x0.y) + " " + num(x0.z) + "\n";
    out += "theta0 = " + num(theta0.x) + " " + num(theta0.y) + " " + num(theta0.z) + "\n";
    out += rep.to_text();
    return out;
}

std::string remote_check_csv_text(const ExperimentConfig& cfg, int threads) {
    const Phantom ph = config_phantom(cfg);
    const Kernel kernel = Kernel::build();
    const Vec3 theta0 = config_theta0(cfg);
    const Vec3 x0 = config_x0(cfg, theta0);
    const std::vector<SphereGrid> grids = config_grid_family(cfg);
    const auto rows =
        remote_convergence_check(ph, grids, kernel, x0, theta0, config_h_grid(cfg), threads);
    std::string out = "eps,max_abs\n";
    for (const auto& r : rows) out += num(r.eps) + "," + num(r.max_abs) + "\n";
    return out;
}

int rt3d_cli_main(const std::vector<std::string>& args) {
    CLI::App app{"3D Radon transform simulation and edge-response laboratory"};
    app.require_subcommand(1);

    int threads = 0;
    std::string config_path, out_path, simd = "auto";
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--config", config_path, "experiment config file");
    app.add_option("--out", out_path, "output file");
    app.add_option("--simd", simd, "inner-loop variant: auto|scalar|avx2|neon");

    auto* c_kernel = app.add_subcommand("kernel-check", "verify kernel axioms, emit coefficients");
    auto* c_sim = app.add_subcommand("simulate", "write the sampled sinogram (RSG1)");
    auto* c_prof = app.add_subcommand("profile", "edge-response profile CSV");
    std::string sinogram_in;
    c_prof->add_option("--sinogram", sinogram_in, "read data from an RSG1 file instead of the closed form");
    auto* c_gen = app.add_subcommand("genericity", "genericity report for the probe point");
    auto* c_rem = app.add_subcommand("remote-check", "remote-singularity decay across eps_list");
    auto* c_ud = app.add_subcommand("ud", "uniform-distribution diagnostics");
    std::string ud_f, ud_g;
    double ud_a = 0, ud_b = 1;
    std::vector<double> ud_eps;
    long long ud_weyl = 0;
    bool ud_d2 = false;
    double ud_shear = 0;
    c_ud->add_option("--f", ud_f, "expression in t, e.g. 'golden*t'")->required();
    c_ud->add_option("--g", ud_g, "second expression for the 2D diagnostics");
    c_ud->add_option("--a", ud_a, "interval start");
    c_ud->add_option("--b", ud_b, "interval end");
    c_ud->add_option("--eps", ud_eps, "one or more eps values (one CSV row each)")->required();
    c_ud->add_option("--weyl", ud_weyl, "also report |Weyl sum| at this frequency");
    c_ud->add_flag("--d2", ud_d2, "also report the 2D box discrepancy (needs --g)");
    c_ud->add_option("--shear", ud_shear, "apply (x,y)->({x+a y},y) before the 2D discrepancy");
    auto* c_plot = app.add_subcommand("plot", "render a profile CSV as SVG");
    std::string plot_in;
    c_plot->add_option("csv", plot_in, "profile CSV path")->required();

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        set_variant(parse_variant(simd));

        auto need_config = [&]() {
            if (config_path.empty()) throw config_error("missing --config");
            return parse_config_file(config_path);
        };

        if (c_kernel->parsed()) {
            const Kernel k = Kernel::build();
            const AxiomReport rep = verify_assumptions(k);
            std::cout << rep.to_text();
            const std::string csv = kernel_coeff_csv(k);
            if (!out_path.empty())
                write_text_file(out_path, csv);
            else
                std::cout << csv;
            return rep.all_pass() ? 0 : 3;
        }

        if (c_sim->parsed()) {
            if (out_path.empty()) throw config_error("simulate needs --out");
            const ExperimentConfig cfg = need_config();
            const Sinogram s = build_sinogram(config_phantom(cfg), config_grid(cfg), threads);
            write_rsg(s, out_path);
            std::cout << "wrote " << out_path << " (" << s.values.size() << " samples)\n";
            return 0;
        }

        if (c_prof->parsed()) {
            const ExperimentConfig cfg = need_config();
            const std::string csv = profile_csv_text(cfg, threads, sinogram_in);
            if (out_path.empty())
                std::cout << csv;
            else
                write_text_file(out_path, csv);
            return 0;
        }

        if (c_gen->parsed()) {
            const ExperimentConfig cfg = need_config();
            const std::string text = genericity_text(cfg);
            if (out_path.empty())
                std::cout << text;
            else
                write_text_file(out_path, text);
            return 0;
        }

        if (c_rem->parsed()) {
            const ExperimentConfig cfg = need_config();
            const std::string csv = remote_check_csv_text(cfg, threads);
            if (out_path.empty())
                std::cout << csv;
            else
                write_text_file(out_path, csv);
            return 0;
        }

        if (c_ud->parsed()) {
            const Expr f = Expr::parse(ud_f);
            std::optional<Expr> g;
            if (!ud_g.empty()) g = Expr::parse(ud_g);
            if (ud_d2 && !g) throw config_error("--d2 needs --g");
            std::string header = "eps,n,dstar";
            if (ud_weyl != 0) header += ",weyl";
            if (ud_d2) header += ",d2,d2_bound";
            std::string out = header + "\n";
            for (const double e : ud_eps) {
                const FracSequence seq = frac_points(f.fn(), ud_a, ud_b, e, ud_f);
                out += num(e) + "," + std::to_string(seq.points.size()) + "," +
                       num(star_discrepancy_1d(seq));
                if (ud_weyl != 0) out += "," + num(weyl_sum(seq, ud_weyl));
                if (ud_d2) {
                    FracSequence2D s2 = frac_points_2d(f.fn(), g->fn(), ud_a, ud_b, e);
                    if (ud_shear != 0) s2 = shear_map(s2, ud_shear);
                    const Discrepancy2D d = discrepancy_2d(s2, 100);
                    out += "," + num(d.value) + "," + num(d.bound);
                }
                out += "\n";
            }
            if (out_path.empty())
                std::cout << out;
            else
                write_text_file(out_path, out);
            return 0;
        }

        if (c_plot->parsed()) {
            if (out_path.empty()) throw config_error("plot needs --out");
            emit_plot(plot_in, out_path);
            return 0;
        }

        throw config_error("no subcommand given");
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace rt3d
