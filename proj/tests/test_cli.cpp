#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rt3d/cli.hpp"
#include "rt3d/svg_plot.hpp"

using namespace rt3d;

namespace {

const char* kSmallConfig = R"(# compact two-ball setup for fast tests
ball = 0 0 -5 4 1
ball = -5.52 0 -7.36 4 1
n_theta = 60
n_gamma = 60
eps = 0.04
rho = 0
p_min = -10
p_max = 10
probe_ball = 0
theta0_pi = 0.7 0.2
h_min = -2
h_max = 2
h_step = 1
)";

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

}  // namespace

TEST_CASE("config parsing: happy path") {
    const ExperimentConfig c = parse_config_text(kSmallConfig);
    CHECK(c.balls.size() == 2);
    CHECK(c.balls[1].center.x == doctest::Approx(-5.52));
    CHECK(c.n_theta == 60);
    REQUIRE(c.eps.has_value());
    CHECK(*c.eps == 0.04);
    CHECK(config_h_grid(c).size() == 5);

    const Vec3 th0 = config_theta0(c);
    CHECK(norm(th0) == doctest::Approx(1.0).epsilon(1e-14));
    const Vec3 x0 = config_x0(c, th0);
    CHECK(norm(x0 - c.balls[0].center) == doctest::Approx(4.0).epsilon(1e-13));

    // theta0_pi = (0, 0.5) is the -x axis
    const ExperimentConfig c2 = parse_config_text("ball = 0 0 0 1 1\neps = 0.04\ntheta0_pi = 0 0.5\n");
    const Vec3 t2 = config_theta0(c2);
    CHECK(t2.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::fabs(t2.y) < 1e-15);
    CHECK(std::fabs(t2.z) < 1e-15);
}

TEST_CASE("config parsing: line-numbered failures") {
    try {
        parse_config_text("ball = 0 0 0 1 1\nball = 1 2 3\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_WITH_AS(parse_config_text("mystery = 1\n"), doctest::Contains("mystery"),
                         config_error);
    CHECK_THROWS_AS(parse_config_text("eps\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("eps = -1\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("ball = 0 0 0 0 1\n"), config_error);

    // missing eps surfaces with the key name when the grid is built
    const ExperimentConfig no_eps = parse_config_text("ball = 0 0 0 1 1\n");
    CHECK_THROWS_WITH_AS(config_grid(no_eps), doctest::Contains("eps"), config_error);

    // probe direction required; the two forms are exclusive
    const ExperimentConfig no_th = parse_config_text("ball = 0 0 0 1 1\neps = 0.1\n");
    CHECK_THROWS_WITH_AS(config_theta0(no_th), doctest::Contains("theta0"), config_error);
    const ExperimentConfig both =
        parse_config_text("eps = 0.1\ntheta0 = 1 0 0\ntheta0_pi = 0 0.5\n");
    CHECK_THROWS_AS(config_theta0(both), config_error);

    // remote-check sweep needs eps_list
    const ExperimentConfig no_sweep = parse_config_text("ball = 0 0 0 1 1\neps = 0.1\n");
    CHECK_THROWS_WITH_AS(config_grid_family(no_sweep), doctest::Contains("eps_list"),
                         config_error);
    const ExperimentConfig sweep =
        parse_config_text("eps = 0.04\nn_theta = 500\nn_gamma = 500\neps_list = 0.08 0.02\n");
    const auto fam = config_grid_family(sweep);
    REQUIRE(fam.size() == 2);
    CHECK(fam[0].n_theta == 250);
    CHECK(fam[1].n_theta == 1000);
}

TEST_CASE("profile artifact is byte-identical across worker counts and reruns") {
    const ExperimentConfig cfg = parse_config_text(kSmallConfig);
    const std::string a = profile_csv_text(cfg, 1);
    const std::string b = profile_csv_text(cfg, 4);
    const std::string c = profile_csv_text(cfg, 8);
    const std::string d = profile_csv_text(cfg, 1);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a == d);
    CHECK(a.substr(0, 29) == "h,f_eps,predicted,abs_err\n-2,");
}

TEST_CASE("plot rendering: deterministic, degenerate inputs") {
    const std::string csv = "h,f_eps,predicted,abs_err\n-1,0.1,0,0.1\n0,0.5,0.5,0\n1,0.9,1,0.1\n";
    const ProfileCsv parsed = parse_profile_csv(csv);
    REQUIRE(parsed.h.size() == 3);
    const std::string svg1 = render_profile_svg(parsed);
    const std::string svg2 = render_profile_svg(parse_profile_csv(csv));
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<polyline") != std::string::npos);

    CHECK_THROWS_AS(parse_profile_csv(""), config_error);
    CHECK_THROWS_AS(parse_profile_csv("h,f_eps,predicted,abs_err\n"), config_error);
    CHECK_THROWS_AS(parse_profile_csv("h,f_eps,predicted,abs_err\n0,bad,1,1\n"), config_error);

    // single-row CSV still renders
    const std::string one = render_profile_svg(parse_profile_csv("h,f,p,e\n0,0.5,0.5,0\n"));
    CHECK(one.find("<svg") != std::string::npos);
}

TEST_CASE("CLI: exit codes and artifacts") {
    const std::string cfg_path = temp_file("rt3d_cli_small.cfg");
    write_file(cfg_path, kSmallConfig);
    const std::string csv_path = temp_file("rt3d_cli_profile.csv");
    const std::string svg_path = temp_file("rt3d_cli_profile.svg");

    CHECK(rt3d_cli_main({"profile", "--config", cfg_path, "--out", csv_path, "--threads", "2"}) == 0);
    CHECK(std::filesystem::exists(csv_path));
    CHECK(rt3d_cli_main({"plot", csv_path, "--out", svg_path}) == 0);
    CHECK(std::filesystem::exists(svg_path));
    CHECK(rt3d_cli_main({"genericity", "--config", cfg_path}) == 0);
    CHECK(rt3d_cli_main({"kernel-check", "--out", temp_file("rt3d_cli_kernel.csv")}) == 0);

    // config errors exit 2
    CHECK(rt3d_cli_main({"profile"}) == 2);
    const std::string bad_cfg = temp_file("rt3d_cli_bad.cfg");
    write_file(bad_cfg, "ball = 0 0 0 1 1\n");  // no eps
    CHECK(rt3d_cli_main({"profile", "--config", bad_cfg, "--out", csv_path}) == 2);
    CHECK(rt3d_cli_main({"plot", temp_file("rt3d_cli_nothere.csv"), "--out", svg_path}) == 2);

    // geometry/numeric errors exit 3: x0 away from every boundary
    const std::string geo_cfg = temp_file("rt3d_cli_geo.cfg");
    write_file(geo_cfg, "ball = 0 0 0 1 1\neps = 0.04\ntheta0 = -1 0 0\nx0 = 3 0 0\n"
                        "n_theta = 16\nn_gamma = 8\n");
    CHECK(rt3d_cli_main({"profile", "--config", geo_cfg, "--out", csv_path}) == 3);

    // simulate writes a loadable file on a tiny grid
    const std::string sino_cfg = temp_file("rt3d_cli_sino.cfg");
    write_file(sino_cfg, "ball = 0 0 0 1 1\neps = 0.2\nn_theta = 8\nn_gamma = 6\n"
                         "p_min = -2\np_max = 2\ntheta0 = -1 0 0\nh_min = -1\nh_max = 1\nh_step = 1\n");
    const std::string sino_path = temp_file("rt3d_cli.rsg");
    CHECK(rt3d_cli_main({"simulate", "--config", sino_cfg, "--out", sino_path}) == 0);
    const std::string prof_a = temp_file("rt3d_cli_pa.csv");
    const std::string prof_b = temp_file("rt3d_cli_pb.csv");
    CHECK(rt3d_cli_main({"profile", "--config", sino_cfg, "--out", prof_a}) == 0);
    CHECK(rt3d_cli_main({"profile", "--config", sino_cfg, "--out", prof_b, "--sinogram", sino_path}) == 0);
    std::ifstream fa(prof_a), fb(prof_b);
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);  // table provider reproduces the closed form bit for bit

    // ud subcommand
    CHECK(rt3d_cli_main({"ud", "--f", "golden*t", "--a", "0", "--b", "1000", "--eps", "1",
                         "--weyl", "1", "--out", temp_file("rt3d_cli_ud.csv")}) == 0);
    CHECK(rt3d_cli_main({"ud", "--f", "t*(", "--a", "0", "--b", "1", "--eps", "0.01"}) == 2);

    // help exits clean; impossible simd variant is an input problem
    CHECK(rt3d_cli_main({"--help"}) == 0);
    CHECK(rt3d_cli_main({"--simd", "sse9", "kernel-check"}) == 3);

    for (const auto& p : {cfg_path, csv_path, svg_path, bad_cfg, geo_cfg, sino_cfg, sino_path,
                          prof_a, prof_b})
        std::filesystem::remove(p);
}
