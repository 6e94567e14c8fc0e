#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "seeding/parameters.hpp"

namespace seeding::fiber {

using Matrix3 = Eigen::Matrix3d;
using Matrix2 = Eigen::Matrix2d;
using Vector3 = Eigen::Vector3d;

/// Symmetric positive-definite parameter matrix A of an angular central
/// Gaussian fiber orientation distribution. The constructor rejects
/// asymmetric (beyond 1e-12 relative) or non-positive-definite input.
class OrientationMatrix {
 public:
  explicit OrientationMatrix(const Matrix3& A);

  [[nodiscard]] const Matrix3& matrix() const noexcept { return A_; }
  [[nodiscard]] bool is_diagonal() const noexcept;

 private:
  Matrix3 A_;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  [[nodiscard]] double error_estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;  // on each moment entry
  unsigned max_depth = 20;
};

/// Diagonal second moments E[u_i^2] of the ACG distribution whose A^-1 has
/// eigenvalues b (A diagonal in this basis):
///
///   M_ii = sqrt(b1 b2 b3) / 2 * int_0^inf (b_i + z)^(-3/2) prod_{j != i} (b_j + z)^(-1/2) dz
///
/// evaluated by adaptive Gauss-Kronrod after z = g tan^2(theta), g the
/// geometric mean of b, which makes the integrand smooth on [0, pi/2].
[[nodiscard]] Vector3 acg_moment_diag(const Vector3& b, const QuadratureOptions& opts = {});

/// Full second-moment matrix E[u u^T]: moments are computed in the
/// eigenbasis of A and rotated back. Symmetric with unit trace.
[[nodiscard]] Matrix3 acg_moment(const OrientationMatrix& A, const QuadratureOptions& opts = {});

struct DiffusionTensors {
  Matrix3 M;   // dimensionless second moment
  Matrix3 D1;  // um^2/h, hMSCs
  Matrix3 D2;  // um^2/h, chondrocytes
};

/// D2 / D1 = lambda10 s2^2 / (lambda2 s1^2), exactly 1 for the published values.
[[nodiscard]] double chondrocyte_factor(const ParameterSet& p);

/// D1 = s1^2 / lambda10 * M and D2 = lambda10 s2^2 / (lambda2 s1^2) * D1.
[[nodiscard]] DiffusionTensors build_tensors(const Matrix3& M, const ParameterSet& p);

/// Leading 2x2 principal block, used for planar simulations.
[[nodiscard]] Matrix2 restrict_2d(const Matrix3& D);

/// Published second-moment block of the scaffold (D1 = s1^2/lambda10 times this).
[[nodiscard]] Matrix3 scaffold_moment();

}  // namespace seeding::fiber
