#pragma once

#include <string>
#include <vector>

namespace dpp::tas {

struct PlotArtifacts {
  std::vector<std::string> scripts;
  std::vector<std::string> data_files;
};

/// Reads a spectrum CSV and writes, next to it (or into `out_dir`), one
/// gnuplot script and data file per diagram: DoA vs DoS, DoF/s vs time
/// (log-log) and DoE vs time. Scripts render to SVG without a display.
/// Throws std::invalid_argument on a malformed or empty CSV before writing
/// anything.
PlotArtifacts emit_plots(const std::string& csv_path, const std::string& out_dir = "");

}  // namespace dpp::tas
