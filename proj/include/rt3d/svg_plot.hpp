#pragma once

#include <string>
#include <vector>

namespace rt3d {

/// Rows of a profile CSV (h, f_eps, predicted, abs_err).
struct ProfileCsv {
    std::vector<double> h, f_eps, predicted;
};

ProfileCsv parse_profile_csv(const std::string& text);

/// Overlay of the reconstructed and predicted transition curves as a
/// self-contained SVG; byte-deterministic for identical input.
std::string render_profile_svg(const ProfileCsv& data);

/// Reads the CSV file and writes the SVG file.
void emit_plot(const std::string& csv_path, const std::string& svg_path);

}  // namespace rt3d
