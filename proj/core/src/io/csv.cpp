#include "seeding/io/csv.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "seeding/errors.hpp"

namespace seeding::io {
namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_state_row(std::ostream& out, double t, const OdeState& y) {
  out << format_double(t) << ',' << format_double(y.c1) << ',' << format_double(y.c2) << ','
      << format_double(y.chi) << ',' << format_double(y.h) << ',' << format_double(y.tau)
      << '\n';
}

}  // namespace

std::string format_double(double value) { return fmt::format("{}", value); }

std::string state_header() {
  std::string header = "t [h]";
  for (std::size_t c = 0; c < kComponentNames.size(); ++c) {
    header += fmt::format(",{} [{}]", kComponentNames[c], kComponentUnits[c]);
  }
  return header;
}

void write_trajectory_csv(const std::filesystem::path& path, const ode::Trajectory& trajectory) {
  std::ofstream out = open_for_writing(path);
  out << state_header() << '\n';
  auto event = trajectory.events.begin();
  for (const ode::Sample& s : trajectory.samples) {
    while (event != trajectory.events.end() && event->t <= s.t) {
      write_state_row(out, event->t, event->before);
      if (event->t < s.t) write_state_row(out, event->t, event->after);
      ++event;
    }
    write_state_row(out, s.t, s.y);
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_probe_csv(const std::filesystem::path& path,
                     const std::vector<pde::ProbeSample>& samples) {
  std::ofstream out = open_for_writing(path);
  out << state_header() << '\n';
  for (const pde::ProbeSample& s : samples) write_state_row(out, s.t, s.y);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_snapshot_csv(const std::filesystem::path& path, const pde::ScaffoldGrid& grid,
                        const pde::Field& field, Component component) {
  std::ofstream out = open_for_writing(path);
  out << fmt::format("x_index,y_index,x [um],y [um],value [{}]\n", kComponentUnits[component]);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto [i, j] = grid.cells()[k];
    const pde::Point p = grid.center(k);
    out << i << ',' << j << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(field[static_cast<Eigen::Index>(k)]) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Eigen::Matrix3d read_matrix3(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file " + path.string());
  Eigen::Matrix3d m;
  int row = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v[3];
    int count = 0;
    double x = 0.0;
    while (ss >> x) {
      if (count == 3) {
        throw ConfigError(fmt::format("{}:{}: expected 3 values per row", path.string(), line_no));
      }
      v[count++] = x;
    }
    if (!ss.eof()) {
      throw ConfigError(fmt::format("{}:{}: not a number", path.string(), line_no));
    }
    if (count == 0) continue;
    if (count != 3 || row == 3) {
      throw ConfigError(fmt::format("{}:{}: expected 3 rows of 3 values", path.string(), line_no));
    }
    m.row(row++) << v[0], v[1], v[2];
  }
  if (row != 3) throw ConfigError(path.string() + ": expected 3 rows of 3 values");
  return m;
}

}  // namespace seeding::io
