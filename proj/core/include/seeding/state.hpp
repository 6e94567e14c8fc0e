#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Core>

namespace seeding {

using StateVector = Eigen::Matrix<double, 5, 1>;
using StateMatrix = Eigen::Matrix<double, 5, 5>;

/// Component order used by StateVector, Jacobians and CSV columns.
enum Component : std::size_t { kC1 = 0, kC2 = 1, kChi = 2, kH = 3, kTau = 4 };

inline constexpr std::array<const char*, 5> kComponentNames{"c1", "c2", "chi", "h", "tau"};
inline constexpr std::array<const char*, 5> kComponentUnits{"1/um^2", "1/um^2", "mol/um^2",
                                                            "mol/um^2", "mol/um^2"};

/// Spatially homogeneous state of the seeding system at one time point.
struct OdeState {
  double c1 = 0.0;   // hMSC density, 1/um^2
  double c2 = 0.0;   // chondrocyte density, 1/um^2
  double chi = 0.0;  // differentiation medium, mol/um^2
  double h = 0.0;    // hyaluron, mol/um^2
  double tau = 0.0;  // ECM density, mol/um^2

  [[nodiscard]] StateVector vector() const {
    StateVector v;
    v << c1, c2, chi, h, tau;
    return v;
  }

  [[nodiscard]] static OdeState from_vector(const StateVector& v) {
    return {v[kC1], v[kC2], v[kChi], v[kH], v[kTau]};
  }

  [[nodiscard]] double operator[](std::size_t i) const {
    switch (i) {
      case kC1: return c1;
      case kC2: return c2;
      case kChi: return chi;
      case kH: return h;
      case kTau: return tau;
      default: throw std::out_of_range("OdeState component index");
    }
  }

  friend bool operator==(const OdeState&, const OdeState&) = default;
};

/// Initial data of the homogeneous seeding experiment.
[[nodiscard]] inline OdeState seeding_initial_state() { return {1e-3, 0.0, 1e-3, 1000.0, 0.0}; }

}  // namespace seeding
