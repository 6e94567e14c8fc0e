#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "seeding/pde/grid.hpp"
#include "seeding/state.hpp"

namespace seeding::pde {

using Field = Eigen::VectorXd;

/// The five model fields over the interior cells of a grid, in grid order.
struct FieldState {
  double t = 0.0;  // h
  Field c1;
  Field c2;
  Field chi;
  Field h;
  Field tau;

  [[nodiscard]] Field& operator[](Component c);
  [[nodiscard]] const Field& operator[](Component c) const;

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(c1.size()); }
  [[nodiscard]] OdeState at(std::size_t k) const;
  void set(std::size_t k, const OdeState& y);
  [[nodiscard]] bool all_finite() const;
};

/// Every cell set to `y`.
[[nodiscard]] FieldState uniform_fields(const ScaffoldGrid& grid, const OdeState& y, double t = 0.0);

/// Seeding initial data on the scaffold: a Gaussian hMSC bump
///   c1 = 1e-3 exp(-15 ((x - 2500)/1000)^2 - 15 ((y - 2500)/1000)^2),
/// c2 = tau = 0, chi = 1e-3 and h = 995 + r with r ~ U[0, 1) drawn once per
/// interior cell, in grid order, from mt19937_64(seed) as (bits >> 11) * 2^-53.
[[nodiscard]] FieldState init_fields(const ScaffoldGrid& grid, std::uint64_t seed);

/// Cell-area-weighted sum of a field.
[[nodiscard]] double total_mass(const Field& f, const ScaffoldGrid& grid);

}  // namespace seeding::pde
