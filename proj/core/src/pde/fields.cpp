#include "seeding/pde/fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace seeding::pde {

Field& FieldState::operator[](Component c) {
  switch (c) {
    case kC1: return c1;
    case kC2: return c2;
    case kChi: return chi;
    case kH: return h;
    case kTau: return tau;
  }
  throw std::out_of_range("FieldState component");
}

const Field& FieldState::operator[](Component c) const {
  return const_cast<FieldState&>(*this)[c];
}

OdeState FieldState::at(std::size_t k) const {
  const auto i = static_cast<Eigen::Index>(k);
  return {c1[i], c2[i], chi[i], h[i], tau[i]};
}

void FieldState::set(std::size_t k, const OdeState& y) {
  const auto i = static_cast<Eigen::Index>(k);
  c1[i] = y.c1;
  c2[i] = y.c2;
  chi[i] = y.chi;
  h[i] = y.h;
  tau[i] = y.tau;
}

bool FieldState::all_finite() const {
  return c1.allFinite() && c2.allFinite() && chi.allFinite() && h.allFinite() && tau.allFinite();
}

FieldState uniform_fields(const ScaffoldGrid& grid, const OdeState& y, double t) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  FieldState s;
  s.t = t;
  s.c1 = Field::Constant(n, y.c1);
  s.c2 = Field::Constant(n, y.c2);
  s.chi = Field::Constant(n, y.chi);
  s.h = Field::Constant(n, y.h);
  s.tau = Field::Constant(n, y.tau);
  return s;
}

FieldState init_fields(const ScaffoldGrid& grid, std::uint64_t seed) {
  FieldState s = uniform_fields(grid, {0.0, 0.0, 1e-3, 995.0, 0.0});
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point p = grid.center(k);
    const double u = (p.x - 2500.0) / 1000.0;
    const double v = (p.y - 2500.0) / 1000.0;
    const auto i = static_cast<Eigen::Index>(k);
    s.c1[i] = 1e-3 * std::exp(-15.0 * u * u - 15.0 * v * v);
    const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    s.h[i] = 995.0 + r;
  }
  return s;
}

double total_mass(const Field& f, const ScaffoldGrid& grid) { return f.sum() * grid.cell_area(); }

}  // namespace seeding::pde
