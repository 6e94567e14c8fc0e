#include <doctest.h>

#include <random>

#include <boost/math/special_functions/ellint_rd.hpp>

#include "oracles.hpp"
#include "seeding/errors.hpp"
#include "seeding/fiber/orientation.hpp"

using namespace seeding;
using namespace seeding::fiber;

TEST_CASE("isotropic A gives M = I/3") {
  const Matrix3 M = acg_moment(OrientationMatrix(Matrix3::Identity()));
  CHECK((M - Matrix3::Identity() / 3.0).cwiseAbs().maxCoeff() < 1e-8);
  const Matrix3 M2 = acg_moment(OrientationMatrix(4.2 * Matrix3::Identity()));
  CHECK((M2 - Matrix3::Identity() / 3.0).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("diagonal moments agree with Carlson's R_D") {
  // M_ii = sqrt(b1 b2 b3) / 3 * R_D(b_j, b_k, b_i)
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int n = 0; n < 50; ++n) {
    const Vector3 b(u(rng), u(rng), u(rng));
    const Vector3 m = acg_moment_diag(b);
    const double s = std::sqrt(b.prod());
    CHECK(m[0] == doctest::Approx(s / 3 * boost::math::ellint_rd(b[1], b[2], b[0])).epsilon(1e-9));
    CHECK(m[1] == doctest::Approx(s / 3 * boost::math::ellint_rd(b[0], b[2], b[1])).epsilon(1e-9));
    CHECK(m[2] == doctest::Approx(s / 3 * boost::math::ellint_rd(b[0], b[1], b[2])).epsilon(1e-9));
    CHECK(m.sum() == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("general A agrees with brute-force sphere quadrature") {
  std::mt19937_64 rng(33);
  for (int n = 0; n < 5; ++n) {
    const Matrix3 A = oracle::random_spd(rng);
    const Matrix3 M = acg_moment(OrientationMatrix(A));
    const Matrix3 ref = oracle::sphere_moment(A);
    CHECK((M - ref).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(M.trace() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("scale invariance and permutation equivariance") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> c(0.01, 100.0);
  for (int n = 0; n < 20; ++n) {
    const Matrix3 A = oracle::random_spd(rng);
    const Matrix3 M = acg_moment(OrientationMatrix(A));
    const Matrix3 Mc = acg_moment(OrientationMatrix(c(rng) * A));
    CHECK((M - Mc).cwiseAbs().maxCoeff() < 1e-9);
  }
  const Vector3 b(0.5, 2.0, 7.0);
  const Vector3 m = acg_moment_diag(b);
  const Vector3 mp = acg_moment_diag(Vector3(b[2], b[0], b[1]));
  CHECK(mp[0] == doctest::Approx(m[2]).epsilon(1e-12));
  CHECK(mp[1] == doctest::Approx(m[0]).epsilon(1e-12));
  CHECK(mp[2] == doctest::Approx(m[1]).epsilon(1e-12));
}

TEST_CASE("larger A eigenvalue means more fibers along that axis") {
  const Matrix3 M = acg_moment(OrientationMatrix(Vector3(1.0, 2.0, 4.0).asDiagonal()));
  CHECK(M(0, 0) < M(1, 1));
  CHECK(M(1, 1) < M(2, 2));
}

TEST_CASE("rotation covariance") {
  std::mt19937_64 rng(4);
  const Matrix3 A = oracle::random_spd(rng);
  const Matrix3 Q = Eigen::AngleAxisd(0.7, Vector3(1, 2, 3).normalized()).toRotationMatrix();
  const Matrix3 M = acg_moment(OrientationMatrix(A));
  const Matrix3 Mr = acg_moment(OrientationMatrix(Q * A * Q.transpose()));
  CHECK((Mr - Q * M * Q.transpose()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("published tensors") {
  const ParameterSet p = table1_parameters();
  CHECK(chondrocyte_factor(p) == 1.0);
  const DiffusionTensors t = build_tensors(scaffold_moment(), p);
  CHECK(t.D2 == t.D1);
  CHECK(t.D1(0, 0) == doctest::Approx(0.204e6).epsilon(1e-14));
  CHECK(t.D1(1, 2) == doctest::Approx(0.251e6).epsilon(1e-14));
  const Matrix2 D = restrict_2d(t.D1);
  CHECK(D(0, 0) == doctest::Approx(0.204e6).epsilon(1e-14));
  CHECK(D(0, 1) == doctest::Approx(0.189e6).epsilon(1e-14));
  CHECK(D(1, 0) == doctest::Approx(0.189e6).epsilon(1e-14));
  CHECK(D(1, 1) == doctest::Approx(0.447e6).epsilon(1e-14));
  CHECK(restrict_2d(Matrix3::Identity()) == Matrix2::Identity());
  const Eigen::SelfAdjointEigenSolver<Matrix3> eig(t.D1);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("invalid orientation matrices") {
  Matrix3 asym = Matrix3::Identity();
  asym(0, 1) = 0.1;
  CHECK_THROWS_AS(OrientationMatrix{asym}, ConfigError);
  CHECK_THROWS_AS(OrientationMatrix{Vector3(1.0, -1.0, 1.0).asDiagonal()}, ConfigError);
  CHECK_THROWS_AS(OrientationMatrix{Matrix3::Zero()}, ConfigError);
  Matrix3 nan = Matrix3::Identity();
  nan(2, 2) = std::nan("");
  CHECK_THROWS_AS(OrientationMatrix{nan}, ConfigError);
}

TEST_CASE("an unreachable tolerance raises a quadrature error") {
  QuadratureOptions opts;
  opts.abs_tol = 1e-30;
  opts.max_depth = 1;
  CHECK_THROWS_AS((void)acg_moment_diag(Vector3(1e-4, 1.0, 1e4), opts), QuadratureError);
}
