#include "rt3d/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rt3d/common.hpp"

namespace rt3d {

ProfileCsv parse_profile_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw config_error("empty profile CSV");
    // header assumed; tolerate any column naming as long as there are >= 3 columns
    ProfileCsv out;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double h, f, p;
        if (!(row >> h >> f >> p))
            throw config_error("bad profile CSV row", line_no);
        out.h.push_back(h);
        out.f_eps.push_back(f);
        out.predicted.push_back(p);
    }
    if (out.h.empty()) throw config_error("profile CSV has no data rows");
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                     double x0, double x1, double y0, double y1, double px, double py,
                     double pw, double ph) {
    std::string pts;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double fx = (x1 > x0) ? (xs[i] - x0) / (x1 - x0) : 0.5;
        const double fy = (y1 > y0) ? (ys[i] - y0) / (y1 - y0) : 0.5;
        pts += fmt(px + fx * pw) + "," + fmt(py + (1.0 - fy) * ph) + " ";
    }
    if (!pts.empty()) pts.pop_back();
    return pts;
}

}  // namespace

std::string render_profile_svg(const ProfileCsv& data) {
    const double W = 800, H = 520;
    const double px = 70, py = 30, pw = W - px - 30, ph = H - py - 60;

    double x0 = data.h.front(), x1 = data.h.front();
    double y0 = 0, y1 = 1;
    for (const double v : data.h) {
        x0 = std::min(x0, v);
        x1 = std::max(x1, v);
    }
    for (const double v : data.f_eps) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
    }
    for (const double v : data.predicted) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
    }
    const double ypad = 0.05 * (y1 - y0 + 1e-12);
    y0 -= ypad;
    y1 += ypad;
    if (x1 <= x0) x1 = x0 + 1;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(pw)
       << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks
    for (int i = 0; i <= 10; ++i) {
        const double fx = static_cast<double>(i) / 10.0;
        const double gx = px + fx * pw;
        os << "<line x1=\"" << fmt(gx) << "\" y1=\"" << fmt(py + ph) << "\" x2=\"" << fmt(gx)
           << "\" y2=\"" << fmt(py + ph + 5) << "\" stroke=\"black\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "%.3g", x0 + fx * (x1 - x0));
        os << "<text x=\"" << fmt(gx) << "\" y=\"" << fmt(py + ph + 18)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << lab << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double fy = static_cast<double>(i) / 5.0;
        const double gy = py + (1.0 - fy) * ph;
        os << "<line x1=\"" << fmt(px - 5) << "\" y1=\"" << fmt(gy) << "\" x2=\"" << fmt(px)
           << "\" y2=\"" << fmt(gy) << "\" stroke=\"black\"/>\n";
        char lab[32];
        std::snprintf(lab, sizeof lab, "%.3g", y0 + fy * (y1 - y0));
        os << "<text x=\"" << fmt(px - 8) << "\" y=\"" << fmt(gy + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << lab << "</text>\n";
    }

    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\""
       << polyline(data.h, data.f_eps, x0, x1, y0, y1, px, py, pw, ph) << "\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" "
          "stroke-dasharray=\"6,4\" points=\""
       << polyline(data.h, data.predicted, x0, x1, y0, y1, px, py, pw, ph) << "\"/>\n";

    os << "<text x=\"" << fmt(px + pw / 2) << "\" y=\"" << fmt(H - 8)
       << "\" font-size=\"13\" text-anchor=\"middle\">h</text>\n";
    os << "<text x=\"" << fmt(px + 14) << "\" y=\"" << fmt(py + 18)
       << "\" font-size=\"12\" fill=\"#1f77b4\">reconstructed</text>\n";
    os << "<text x=\"" << fmt(px + 14) << "\" y=\"" << fmt(py + 34)
       << "\" font-size=\"12\" fill=\"#d62728\">predicted</text>\n";
    os << "</svg>\n";
    return os.str();
}

void emit_plot(const std::string& csv_path, const std::string& svg_path) {
    std::ifstream f(csv_path);
    if (!f) throw config_error("cannot open profile CSV: " + csv_path);
    std::ostringstream os;
    os << f.rdbuf();
    const std::string svg = render_profile_svg(parse_profile_csv(os.str()));
    std::ofstream o(svg_path, std::ios::binary);
    if (!o) throw config_error("cannot open SVG output: " + svg_path);
    o << svg;
}

}  // namespace rt3d
