#pragma once

#include <functional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "seeding/parameters.hpp"
#include "seeding/pde/fields.hpp"
#include "seeding/pde/grid.hpp"

namespace seeding::pde {

using Tensor2 = Eigen::Matrix2d;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discrete div(D grad c) for a constant symmetric tensor D on the masked
/// grid, written as pairwise exchanges between neighbouring cells:
///
///   axis links (E/W)      weight (Dxx - |Dxy|) / dx^2
///   axis links (N/S)      weight (Dyy - |Dxy|) / dx^2
///   diagonal links        weight |Dxy| / dx^2, along NE-SW if Dxy > 0,
///                         along NW-SE if Dxy < 0
///
/// Links with a cell outside the mask carry no flux, so the operator is
/// symmetric, its columns sum to zero and total mass is conserved. For
/// |Dxy| <= min(Dxx, Dyy) it is an M-matrix and implicit steps keep fields
/// nonnegative.
[[nodiscard]] SparseMatrix diffusion_operator(const ScaffoldGrid& grid, const Tensor2& D);

/// div(D grad c) per cell.
[[nodiscard]] Field diffusion_flux(const Field& c, const Tensor2& D, const ScaffoldGrid& grid);

enum class TaxisMode {
  kOff,
  kIdentity,  // mobility replaced by the identity matrix
  kFull,      // k- lambda11 / (B^2 (B + lambda10)) D1
};

struct TaxisCoefficient {
  TaxisMode mode = TaxisMode::kIdentity;
  Tensor2 D1 = Tensor2::Identity();  // um^2/h, used in full mode

  /// Full mode needs k_minus and lambda11; throws ConfigError otherwise.
  void validate(const ParameterSet& p) const;
};

/// Normal velocity (um/h) at one interior face between cells `from` and `to`,
/// oriented from -> to.
struct FaceVelocity {
  Eigen::Index from;
  Eigen::Index to;
  double u;
};

/// Face velocities of the tactic drift T grad B on all interior axis faces.
/// B is evaluated on max(h, 0) and max(tau, 0); the face mobility in full mode
/// uses the face average of B. Transverse gradients at a face average the
/// cell-centred differences of its two cells (one-sided at the mask edge).
void for_each_taxis_face(const Field& h, const Field& tau, const TaxisCoefficient& coeff,
                         const ScaffoldGrid& grid, const ParameterSet& p,
                         const std::function<void(const FaceVelocity&)>& visit);

/// -div(c1 T grad B) per cell with first-order upwinding of c1; zero flux
/// through faces on the mask boundary.
[[nodiscard]] Field taxis_flux(const Field& c1, const Field& h, const Field& tau,
                               const TaxisCoefficient& coeff, const ScaffoldGrid& grid,
                               const ParameterSet& p);

/// Largest total outflow rate (1/h) over all cells; explicit upwind steps
/// are positivity preserving for dt * rate <= 1.
[[nodiscard]] double taxis_max_outflow_rate(const Field& h, const Field& tau,
                                            const TaxisCoefficient& coeff,
                                            const ScaffoldGrid& grid, const ParameterSet& p);

}  // namespace seeding::pde
