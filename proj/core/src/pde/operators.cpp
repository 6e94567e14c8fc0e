#include "seeding/pde/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "seeding/rates.hpp"

namespace seeding::pde {

SparseMatrix diffusion_operator(const ScaffoldGrid& grid, const Tensor2& D) {
  const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
  const double dxy = 0.5 * (D(0, 1) + D(1, 0));
  const double cross = std::abs(dxy);
  const double w_x = (D(0, 0) - cross) * inv_dx2;
  const double w_y = (D(1, 1) - cross) * inv_dx2;
  const double w_d = cross * inv_dx2;
  // Forward half of the stencil; each link is visited once.
  const int diag_di = dxy >= 0.0 ? 1 : -1;
  const std::array<std::array<int, 2>, 3> offsets{{{1, 0}, {0, 1}, {diag_di, 1}}};
  const std::array<double, 3> weights{w_x, w_y, w_d};

  const auto n = static_cast<Eigen::Index>(grid.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(grid.size() * 7);
  std::vector<double> diagonal(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto [i, j] = grid.cells()[k];
    for (std::size_t l = 0; l < offsets.size(); ++l) {
      if (weights[l] == 0.0) continue;
      const std::ptrdiff_t m = grid.index(i + offsets[l][0], j + offsets[l][1]);
      if (m < 0) continue;
      const auto kk = static_cast<Eigen::Index>(k);
      const auto mm = static_cast<Eigen::Index>(m);
      triplets.emplace_back(kk, mm, weights[l]);
      triplets.emplace_back(mm, kk, weights[l]);
      diagonal[k] -= weights[l];
      diagonal[static_cast<std::size_t>(m)] -= weights[l];
    }
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    triplets.emplace_back(kk, kk, diagonal[k]);
  }
  SparseMatrix L(n, n);
  L.setFromTriplets(triplets.begin(), triplets.end());
  L.makeCompressed();
  return L;
}

Field diffusion_flux(const Field& c, const Tensor2& D, const ScaffoldGrid& grid) {
  return diffusion_operator(grid, D) * c;
}

void TaxisCoefficient::validate(const ParameterSet& p) const {
  if (mode == TaxisMode::kFull && (!p.k_minus || !p.lambda11)) {
    throw ConfigError("full taxis mode requires k_minus and lambda11");
  }
}

namespace {

// Cell-centred derivative of B along one axis: central where both
// neighbours exist, one-sided where one does, zero otherwise.
double centred_gradient(const std::vector<double>& B, const ScaffoldGrid& grid, int i, int j,
                        int di, int dj) {
  const std::ptrdiff_t k = grid.index(i, j);
  const std::ptrdiff_t plus = grid.index(i + di, j + dj);
  const std::ptrdiff_t minus = grid.index(i - di, j - dj);
  const double dx = grid.dx();
  const auto at = [&](std::ptrdiff_t m) { return B[static_cast<std::size_t>(m)]; };
  if (plus >= 0 && minus >= 0) return (at(plus) - at(minus)) / (2.0 * dx);
  if (plus >= 0) return (at(plus) - at(k)) / dx;
  if (minus >= 0) return (at(k) - at(minus)) / dx;
  return 0.0;
}

}  // namespace

void for_each_taxis_face(const Field& h, const Field& tau, const TaxisCoefficient& coeff,
                         const ScaffoldGrid& grid, const ParameterSet& p,
                         const std::function<void(const FaceVelocity&)>& visit) {
  if (coeff.mode == TaxisMode::kOff) return;
  coeff.validate(p);
  std::vector<double> B(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    B[k] = adhesion_B(std::max(h[i], 0.0), std::max(tau[i], 0.0), p);
  }
  const double dx = grid.dx();
  const bool full = coeff.mode == TaxisMode::kFull;
  const double k_lambda = full ? *p.k_minus * *p.lambda11 : 0.0;

  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto [i, j] = grid.cells()[k];
    for (int axis = 0; axis < 2; ++axis) {
      const int di = axis == 0 ? 1 : 0;
      const int dj = axis == 0 ? 0 : 1;
      const std::ptrdiff_t m = grid.index(i + di, j + dj);
      if (m < 0) continue;
      const double Bk = B[k];
      const double Bm = B[static_cast<std::size_t>(m)];
      const double normal_grad = (Bm - Bk) / dx;
      double u = normal_grad;
      if (full) {
        const double Bf = 0.5 * (Bk + Bm);
        const double mobility = k_lambda / (Bf * Bf * (Bf + p.lambda10));
        const double transverse =
            0.5 * (centred_gradient(B, grid, i, j, dj, di) +
                   centred_gradient(B, grid, i + di, j + dj, dj, di));
        const double Tnn = coeff.D1(axis, axis);
        const double Tnt = coeff.D1(axis, 1 - axis);
        u = mobility * (Tnn * normal_grad + Tnt * transverse);
      }
      visit({static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m), u});
    }
  }
}

Field taxis_flux(const Field& c1, const Field& h, const Field& tau, const TaxisCoefficient& coeff,
                 const ScaffoldGrid& grid, const ParameterSet& p) {
  Field out = Field::Zero(static_cast<Eigen::Index>(grid.size()));
  const double inv_dx = 1.0 / grid.dx();
  for_each_taxis_face(h, tau, coeff, grid, p, [&](const FaceVelocity& f) {
    const double upwind = f.u > 0.0 ? c1[f.from] : c1[f.to];
    const double flux = f.u * upwind * inv_dx;
    out[f.from] -= flux;
    out[f.to] += flux;
  });
  return out;
}

double taxis_max_outflow_rate(const Field& h, const Field& tau, const TaxisCoefficient& coeff,
                              const ScaffoldGrid& grid, const ParameterSet& p) {
  std::vector<double> outflow(grid.size(), 0.0);
  const double inv_dx = 1.0 / grid.dx();
  for_each_taxis_face(h, tau, coeff, grid, p, [&](const FaceVelocity& f) {
    if (f.u > 0.0) {
      outflow[static_cast<std::size_t>(f.from)] += f.u * inv_dx;
    } else {
      outflow[static_cast<std::size_t>(f.to)] -= f.u * inv_dx;
    }
  });
  return outflow.empty() ? 0.0 : *std::max_element(outflow.begin(), outflow.end());
}

}  // namespace seeding::pde
