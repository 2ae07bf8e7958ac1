#include "dpp/plots.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dpp/spectrum.hpp"

namespace dpp::tas {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

const char* kFields[] = {"u1", "p1", "u2", "p2"};

}  // namespace

PlotArtifacts emit_plots(const std::string& csv_path, const std::string& out_dir) {
  std::ifstream in(csv_path);
  if (!in) throw std::invalid_argument("cannot open " + csv_path);
  const std::vector<SpectrumRecord> records = read_csv(in);
  if (records.empty()) throw std::invalid_argument(csv_path + ": no data rows");

  const fs::path csv(csv_path);
  const fs::path dir = out_dir.empty() ? csv.parent_path() : fs::path(out_dir);
  if (!dir.empty()) fs::create_directories(dir);
  const std::string stem = csv.stem().string();
  const std::string title = to_string(records.front().formulation) + " " + to_string(records.front().cell);

  PlotArtifacts art;
  auto emit = [&](const std::string& kind, const std::string& columns, const std::string& rows,
                  const std::string& setup, const std::string& plot) {
    const fs::path dat = dir / (stem + "_" + kind + ".dat");
    const fs::path gp = dir / (stem + "_" + kind + ".gp");
    write_file(dat, "# " + columns + "\n" + rows);
    std::string script = "set terminal svg size 800,600\n";
    script += "set output '" + (stem + "_" + kind + ".svg") + "'\n";
    script += "set title '" + title + "'\nset key outside right\nset grid\n" + setup;
    script += "data = '" + dat.filename().string() + "'\n" + plot;
    write_file(gp, script);
    art.data_files.push_back(dat.string());
    art.scripts.push_back(gp.string());
  };

  std::string rows;
  for (const auto& r : records) {
    rows += num(r.dos);
    for (double v : r.doa) rows += " " + num(v);
    rows += "\n";
  }
  std::string plot = "plot ";
  for (int f = 0; f < 4; ++f)
    plot += std::string(f ? ", \\\n     " : "") + "data using 1:" + std::to_string(f + 2) + " with linespoints title '" +
            kFields[f] + "'";
  emit("doa_dos", "dos doa_u1 doa_p1 doa_u2 doa_p2", rows, "set xlabel 'DoS'\nset ylabel 'DoA'\n", plot + "\n");

  rows.clear();
  for (const auto& r : records) rows += num(r.total_s) + " " + num(r.dof_per_s_total) + "\n";
  emit("rate_time", "total_s dof_per_s_total", rows,
       "set logscale xy\nset xlabel 'time (s)'\nset ylabel 'DoF/s'\n",
       "plot data using 1:2 with linespoints title 'total'\n");

  rows.clear();
  for (const auto& r : records) {
    rows += num(r.total_s);
    for (double v : r.doe) rows += " " + num(v);
    rows += "\n";
  }
  plot = "plot ";
  for (int f = 0; f < 4; ++f)
    plot += std::string(f ? ", \\\n     " : "") + "data using 1:" + std::to_string(f + 2) + " with linespoints title '" +
            kFields[f] + "'";
  emit("doe_time", "total_s doe_u1 doe_p1 doe_u2 doe_p2", rows,
       "set logscale x\nset xlabel 'time (s)'\nset ylabel 'DoE'\n", plot + "\n");
  return art;
}

}  // namespace dpp::tas
