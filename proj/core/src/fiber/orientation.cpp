#include "seeding/fiber/orientation.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

namespace seeding::fiber {

OrientationMatrix::OrientationMatrix(const Matrix3& A) : A_(A) {
  if (!A.allFinite()) throw ConfigError("orientation matrix has non-finite entries");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ConfigError("orientation matrix must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix3> eig(A, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw ConfigError("orientation matrix must be positive definite");
  }
}

bool OrientationMatrix::is_diagonal() const noexcept {
  return A_(0, 1) == 0.0 && A_(0, 2) == 0.0 && A_(1, 2) == 0.0 && A_(1, 0) == 0.0 &&
         A_(2, 0) == 0.0 && A_(2, 1) == 0.0;
}

Vector3 acg_moment_diag(const Vector3& b, const QuadratureOptions& opts) {
  if (!(b.allFinite() && b.minCoeff() > 0.0)) {
    throw std::domain_error("acg_moment_diag: eigenvalues of A^-1 must be positive");
  }
  using boost::math::quadrature::gauss_kronrod;
  const double half_pi = boost::math::constants::half_pi<double>();
  const double g = std::cbrt(b[0] * b[1] * b[2]);
  const double prefactor = 0.5 * std::sqrt(b[0] * b[1] * b[2]);

  Vector3 m;
  for (int i = 0; i < 3; ++i) {
    // z = g tan^2(theta), dz = 2 g tan(theta) sec^2(theta) dtheta
    auto integrand = [&](double theta) {
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      if (c <= 0.0) return 0.0;
      const double t = s / c;
      const double z = g * t * t;
      double f = 2.0 * g * t / (c * c);
      for (int j = 0; j < 3; ++j) {
        const double x = b[j] + z;
        f /= (j == i) ? x * std::sqrt(x) : std::sqrt(x);
      }
      return f;
    };
    double err = 0.0;
    // A relative target near machine precision makes the recursion chase
    // roundoff and inflate the summed estimate; 1e-12 is well inside abs_tol.
    const double integral =
        gauss_kronrod<double, 15>::integrate(integrand, 0.0, half_pi, opts.max_depth, 1e-12, &err);
    const double entry_err = prefactor * err;
    if (!(entry_err <= opts.abs_tol) || !std::isfinite(integral)) {
      throw QuadratureError(
          fmt::format("ACG moment quadrature did not converge (error estimate {})", entry_err),
          entry_err);
    }
    m[i] = prefactor * integral;
  }
  return m;
}

Matrix3 acg_moment(const OrientationMatrix& A, const QuadratureOptions& opts) {
  const Matrix3& a = A.matrix();
  if (A.is_diagonal()) {
    const Vector3 b(1.0 / a(0, 0), 1.0 / a(1, 1), 1.0 / a(2, 2));
    return acg_moment_diag(b, opts).asDiagonal();
  }
  const Eigen::SelfAdjointEigenSolver<Matrix3> eig(a);
  const Matrix3& R = eig.eigenvectors();
  const Vector3 b = eig.eigenvalues().cwiseInverse();
  const Matrix3 M = R * acg_moment_diag(b, opts).asDiagonal() * R.transpose();
  return 0.5 * (M + M.transpose());
}

double chondrocyte_factor(const ParameterSet& p) {
  // Grouped so that published values give a factor of exactly 1.
  return (p.lambda10 * p.s2 * p.s2) / (p.lambda2 * p.s1 * p.s1);
}

DiffusionTensors build_tensors(const Matrix3& M, const ParameterSet& p) {
  DiffusionTensors out;
  out.M = M;
  out.D1 = (p.s1 * p.s1 / p.lambda10) * M;
  out.D2 = chondrocyte_factor(p) * out.D1;
  return out;
}

Matrix2 restrict_2d(const Matrix3& D) { return D.topLeftCorner<2, 2>(); }

Matrix3 scaffold_moment() {
  Matrix3 M;
  M << 0.204, 0.189, 0.169,
       0.189, 0.447, 0.251,
       0.169, 0.251, 0.349;
  return M;
}

}  // namespace seeding::fiber
