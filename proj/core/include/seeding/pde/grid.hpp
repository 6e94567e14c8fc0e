#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace seeding::pde {

struct Point {
  double x = 0.0;  // um
  double y = 0.0;  // um
};

/// Uniform Cartesian grid of square cells with an inside/outside mask.
/// Interior cells are numbered row by row (y outer, x inner); that order is
/// the layout of every field vector.
class ScaffoldGrid {
 public:
  struct Cell {
    int i;
    int j;
  };

  /// Disk of the given radius. Cells are laid out so that one cell is centred
  /// exactly on `center`; a cell is inside when its centre lies in the disk.
  [[nodiscard]] static ScaffoldGrid disk(Point center, double radius, double dx);

  /// Default scaffold: disk of radius 2500 um centred at (2500, 2500) um.
  [[nodiscard]] static ScaffoldGrid scaffold(double dx) { return disk({2500.0, 2500.0}, 2500.0, dx); }

  /// Arbitrary mask, `mask[j * nx + i]` non-zero for inside cells. `origin`
  /// is the lower-left corner of cell (0, 0).
  [[nodiscard]] static ScaffoldGrid from_mask(int nx, int ny, double dx, Point origin,
                                              std::vector<std::uint8_t> mask);

  [[nodiscard]] int nx() const noexcept { return nx_; }
  [[nodiscard]] int ny() const noexcept { return ny_; }
  [[nodiscard]] double dx() const noexcept { return dx_; }
  [[nodiscard]] double cell_area() const noexcept { return dx_ * dx_; }
  [[nodiscard]] Point origin() const noexcept { return origin_; }
  [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
  [[nodiscard]] const std::vector<Cell>& cells() const noexcept { return cells_; }

  /// Interior index of cell (i, j), or -1 when outside the mask or the grid.
  [[nodiscard]] std::ptrdiff_t index(int i, int j) const noexcept {
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
    return index_[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
                  static_cast<std::size_t>(i)];
  }

  [[nodiscard]] Point center(int i, int j) const noexcept {
    return {origin_.x + (i + 0.5) * dx_, origin_.y + (j + 0.5) * dx_};
  }
  [[nodiscard]] Point center(std::size_t k) const noexcept { return center(cells_[k].i, cells_[k].j); }

  /// Interior cell containing p, if any.
  [[nodiscard]] std::optional<std::size_t> locate(Point p) const noexcept;

 private:
  ScaffoldGrid(int nx, int ny, double dx, Point origin, std::vector<std::uint8_t> mask);

  int nx_;
  int ny_;
  double dx_;
  Point origin_;
  std::vector<std::ptrdiff_t> index_;
  std::vector<Cell> cells_;
};

}  // namespace seeding::pde
