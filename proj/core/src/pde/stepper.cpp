#include "seeding/pde/stepper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "seeding/errors.hpp"
#include "seeding/ode/integrator.hpp"

namespace seeding::pde {

namespace {

constexpr int kSpecies = 3;  // c1, c2, chi diffuse
constexpr std::array<Component, kSpecies> kDiffusing{kC1, kC2, kChi};

}  // namespace

struct PdeStepper::Solvers {
  std::array<SparseMatrix, kSpecies> L;  // div(D grad .)
  std::array<SparseMatrix, kSpecies> A;  // I - dt L
  std::array<Eigen::SimplicialLDLT<SparseMatrix>, kSpecies> ldlt;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> coupled;
  bool coupled_analyzed = false;
};

void StepperSettings::validate() const {
  if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("pde dt must be > 0");
  if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be > 0");
  if (max_newton_iterations < 1) throw ConfigError("max_newton_iterations must be >= 1");
  if (!(linear_residual_tol > 0.0)) throw ConfigError("linear_residual_tol must be > 0");
}

PdeStepper::PdeStepper(ScaffoldGrid grid, SeedingModel model, const Tensor2& D1,
                       const Tensor2& D2, TaxisCoefficient taxis, StepperSettings settings)
    : grid_(std::move(grid)),
      model_(std::move(model)),
      taxis_(std::move(taxis)),
      settings_(settings),
      solvers_(std::make_unique<Solvers>()) {
  settings_.validate();
  model_.params.validate();
  taxis_.validate(model_.params);
  const std::array<Tensor2, kSpecies> tensors{D1, D2,
                                              model_.params.D_chi * Tensor2::Identity()};
  const auto n = static_cast<Eigen::Index>(grid_.size());
  SparseMatrix I(n, n);
  I.setIdentity();
  for (int s = 0; s < kSpecies; ++s) {
    const Tensor2& D = tensors[static_cast<std::size_t>(s)];
    if (!D.allFinite() || std::abs(D(0, 1) - D(1, 0)) > 1e-12 * D.cwiseAbs().maxCoeff()) {
      throw ConfigError("diffusion tensor must be finite and symmetric");
    }
    auto& L = solvers_->L[static_cast<std::size_t>(s)];
    auto& A = solvers_->A[static_cast<std::size_t>(s)];
    auto& ldlt = solvers_->ldlt[static_cast<std::size_t>(s)];
    L = diffusion_operator(grid_, D);
    A = I - settings_.dt * L;
    A.makeCompressed();
    ldlt.compute(A);
    if (ldlt.info() != Eigen::Success) {
      throw ConfigError(fmt::format("implicit diffusion matrix of {} is not positive definite",
                                    kComponentNames[kDiffusing[static_cast<std::size_t>(s)]]));
    }
  }
}

PdeStepper::~PdeStepper() = default;
PdeStepper::PdeStepper(PdeStepper&&) noexcept = default;
PdeStepper& PdeStepper::operator=(PdeStepper&&) noexcept = default;

void PdeStepper::step(FieldState& state) {
  if (state.size() != grid_.size()) throw ConfigError("field size does not match grid");
  const double t_next = state.t + settings_.dt;
  if (settings_.scheme == TimeScheme::kImex) {
    step_imex(state, t_next);
  } else {
    step_fully_implicit(state, t_next);
  }
  if (!state.all_finite()) throw SolverError("non-finite field value", t_next);
  state.t = t_next;
  ++stats_.steps;
}

void PdeStepper::solve_diffusion(int species, Field& field, double t_next) const {
  const auto s = static_cast<std::size_t>(species);
  const Field rhs = field;
  field = solvers_->ldlt[s].solve(rhs);
  const double residual = (solvers_->A[s] * field - rhs).norm();
  const double scale = rhs.norm();
  if (solvers_->ldlt[s].info() != Eigen::Success ||
      residual > settings_.linear_residual_tol * std::max(scale, 1e-300)) {
    throw SolverError(fmt::format("diffusion solve for {} failed (residual {})",
                                  kComponentNames[kDiffusing[s]], residual),
                      t_next);
  }
}

void PdeStepper::step_imex(FieldState& state, double t_next) {
  const double dt = settings_.dt;
  if (settings_.reactions) {
    for (std::size_t k = 0; k < state.size(); ++k) {
      const StateVector y = state.at(k).vector();
      const StateVector next =
          ode::implicit_euler_step(model_, t_next, y, dt, &stats_.reaction_newton_iterations);
      state.set(k, OdeState::from_vector(next));
    }
  }

  if (taxis_.mode != TaxisMode::kOff) {
    const double rate = taxis_max_outflow_rate(state.h, state.tau, taxis_, grid_, model_.params);
    const auto substeps = static_cast<int>(std::max(1.0, std::ceil(2.0 * dt * rate)));
    const double sub_dt = dt / substeps;
    for (int i = 0; i < substeps; ++i) {
      state.c1 += sub_dt * taxis_flux(state.c1, state.h, state.tau, taxis_, grid_, model_.params);
    }
    stats_.taxis_substeps += static_cast<std::size_t>(substeps);
  }

  for (int s = 0; s < kSpecies; ++s) {
    solve_diffusion(s, state[kDiffusing[static_cast<std::size_t>(s)]], t_next);
  }
}

void PdeStepper::step_fully_implicit(FieldState& state, double t_next) {
  const double dt = settings_.dt;
  const std::size_t n_cells = grid_.size();
  const auto n = static_cast<Eigen::Index>(5 * n_cells);
  const auto idx = [](std::size_t cell, std::size_t comp) {
    return static_cast<Eigen::Index>(5 * cell + comp);
  };

  Eigen::VectorXd old_u(n);
  for (std::size_t k = 0; k < n_cells; ++k) old_u.segment<5>(idx(k, 0)) = state.at(k).vector();
  Eigen::VectorXd u = old_u;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n_cells * 64);

  for (int it = 1; it <= settings_.max_newton_iterations; ++it) {
    ++stats_.global_newton_iterations;
    FieldState current = state;
    for (std::size_t k = 0; k < n_cells; ++k) {
      current.set(k, OdeState::from_vector(u.segment<5>(idx(k, 0))));
    }

    Eigen::VectorXd F = Eigen::VectorXd::Zero(n);
    triplets.clear();
    // Reaction blocks; every entry is inserted so the sparsity pattern never changes.
    for (std::size_t k = 0; k < n_cells; ++k) {
      const StateVector y = u.segment<5>(idx(k, 0));
      StateMatrix J = StateMatrix::Zero();
      if (settings_.reactions) {
        F.segment<5>(idx(k, 0)) = model_.rhs(t_next, y);
        J = model_.jacobian(t_next, y);
      }
      for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t c = 0; c < 5; ++c) {
          const double identity = r == c ? 1.0 : 0.0;
          triplets.emplace_back(idx(k, r), idx(k, c),
                                identity - dt * J(static_cast<Eigen::Index>(r),
                                                  static_cast<Eigen::Index>(c)));
        }
      }
    }
    for (int s = 0; s < kSpecies; ++s) {
      const auto comp = static_cast<std::size_t>(kDiffusing[static_cast<std::size_t>(s)]);
      const SparseMatrix& L = solvers_->L[static_cast<std::size_t>(s)];
      const Field div = L * current[kDiffusing[static_cast<std::size_t>(s)]];
      for (std::size_t k = 0; k < n_cells; ++k) F[idx(k, comp)] += div[static_cast<Eigen::Index>(k)];
      for (Eigen::Index col = 0; col < L.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator e(L, col); e; ++e) {
          triplets.emplace_back(idx(static_cast<std::size_t>(e.row()), comp),
                                idx(static_cast<std::size_t>(e.col()), comp), -dt * e.value());
        }
      }
    }
    if (taxis_.mode != TaxisMode::kOff) {
      const double inv_dx = 1.0 / grid_.dx();
      // Linearised in c1 only; the dependence of the velocity on h and tau is
      // left to the Newton iteration.
      for_each_taxis_face(current.h, current.tau, taxis_, grid_, model_.params,
                          [&](const FaceVelocity& f) {
                            const auto from = static_cast<std::size_t>(f.from);
                            const auto to = static_cast<std::size_t>(f.to);
                            const bool forward = f.u > 0.0;
                            const double c_up = forward ? current.c1[f.from] : current.c1[f.to];
                            const double flux = f.u * c_up * inv_dx;
                            F[idx(from, kC1)] -= flux;
                            F[idx(to, kC1)] += flux;
                            const double g = f.u * inv_dx;
                            // d(F_from)/dc_up = -g, d(F_to)/dc_up = +g
                            triplets.emplace_back(idx(from, kC1), idx(from, kC1), forward ? dt * g : 0.0);
                            triplets.emplace_back(idx(from, kC1), idx(to, kC1), forward ? 0.0 : dt * g);
                            triplets.emplace_back(idx(to, kC1), idx(from, kC1), forward ? -dt * g : 0.0);
                            triplets.emplace_back(idx(to, kC1), idx(to, kC1), forward ? 0.0 : -dt * g);
                          });
    }

    const Eigen::VectorXd residual = u - old_u - dt * F;
    SparseMatrix G(n, n);
    G.setFromTriplets(triplets.begin(), triplets.end());
    G.makeCompressed();
    auto& lu = solvers_->coupled;
    if (!solvers_->coupled_analyzed) {
      lu.analyzePattern(G);
      solvers_->coupled_analyzed = true;
    }
    lu.factorize(G);
    if (lu.info() != Eigen::Success) {
      throw SolverError("coupled implicit step: sparse LU factorisation failed", t_next);
    }
    const Eigen::VectorXd delta = lu.solve(residual);
    const double lin_res = (G * delta - residual).norm();
    if (lin_res > settings_.linear_residual_tol * std::max(residual.norm(), 1e-300)) {
      throw SolverError(fmt::format("coupled implicit step: linear residual {}", lin_res), t_next);
    }
    u -= delta;

    bool converged = true;
    for (std::size_t comp = 0; comp < 5 && converged; ++comp) {
      double scale = 0.0;
      double change = 0.0;
      for (std::size_t k = 0; k < n_cells; ++k) {
        scale = std::max(scale, std::abs(u[idx(k, comp)]));
        change = std::max(change, std::abs(delta[idx(k, comp)]));
      }
      converged = change <= settings_.newton_tol * scale || change == 0.0;
    }
    if (converged) {
      for (std::size_t k = 0; k < n_cells; ++k) {
        state.set(k, OdeState::from_vector(u.segment<5>(idx(k, 0))));
      }
      return;
    }
  }
  throw SolverError(fmt::format("coupled implicit step: Newton did not converge in {} iterations",
                                settings_.max_newton_iterations),
                    t_next);
}

}  // namespace seeding::pde
