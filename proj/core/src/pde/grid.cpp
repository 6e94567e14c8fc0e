#include "seeding/pde/grid.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "seeding/parameters.hpp"

namespace seeding::pde {

ScaffoldGrid::ScaffoldGrid(int nx, int ny, double dx, Point origin, std::vector<std::uint8_t> mask)
    : nx_(nx), ny_(ny), dx_(dx), origin_(origin) {
  if (nx <= 0 || ny <= 0) throw ConfigError("grid dimensions must be positive");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw ConfigError("grid spacing must be > 0");
  if (mask.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw ConfigError("mask size does not match grid dimensions");
  }
  index_.assign(mask.size(), -1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t flat = static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                               static_cast<std::size_t>(i);
      if (mask[flat] != 0) {
        index_[flat] = static_cast<std::ptrdiff_t>(cells_.size());
        cells_.push_back({i, j});
      }
    }
  }
  if (cells_.empty()) throw ConfigError("grid mask has no interior cells");
  if (cells_.size() > 1) {
    for (const Cell& c : cells_) {
      const bool connected = index(c.i + 1, c.j) >= 0 || index(c.i - 1, c.j) >= 0 ||
                             index(c.i, c.j + 1) >= 0 || index(c.i, c.j - 1) >= 0;
      if (!connected) {
        throw ConfigError(fmt::format("interior cell ({}, {}) has no interior neighbour", c.i, c.j));
      }
    }
  }
}

ScaffoldGrid ScaffoldGrid::disk(Point center, double radius, double dx) {
  if (!(radius > 0.0)) throw ConfigError("disk radius must be > 0");
  if (!(dx > 0.0) || dx > radius) throw ConfigError("grid spacing must be in (0, radius]");
  const int half = static_cast<int>(std::ceil(radius / dx - 1e-12));
  const int n = 2 * half + 1;
  const Point origin{center.x - (half + 0.5) * dx, center.y - (half + 0.5) * dx};
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  // Integer offsets keep the mask exactly symmetric under reflections.
  const double r_cells = radius / dx;
  const double limit = r_cells * r_cells * (1.0 + 1e-12);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double di = i - half;
      const double dj = j - half;
      if (di * di + dj * dj <= limit) {
        mask[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = 1;
      }
    }
  }
  return ScaffoldGrid(n, n, dx, origin, std::move(mask));
}

ScaffoldGrid ScaffoldGrid::from_mask(int nx, int ny, double dx, Point origin,
                                     std::vector<std::uint8_t> mask) {
  return ScaffoldGrid(nx, ny, dx, origin, std::move(mask));
}

std::optional<std::size_t> ScaffoldGrid::locate(Point p) const noexcept {
  const int i = static_cast<int>(std::floor((p.x - origin_.x) / dx_));
  const int j = static_cast<int>(std::floor((p.y - origin_.y) / dx_));
  const std::ptrdiff_t k = index(i, j);
  if (k < 0) return std::nullopt;
  return static_cast<std::size_t>(k);
}

}  // namespace seeding::pde
