#pragma once

#include <optional>

#include "seeding/errors.hpp"

namespace seeding {

/// Model constants for the seeding system. Units are fixed: hours, micrometres
/// and mol, with the spatial dimension d = 2 throughout.
///
/// Defaults are the published benchmark values, except `chi_c` which is not
/// published and defaults to half the initial medium concentration. `k_minus`
/// and `lambda11` have no published values and stay unset unless configured.
struct ParameterSet {
  double beta = 0.5 / 3.0;    // 1/h
  double s1 = 30.0;           // um/h
  double s2 = 12.0;           // um/h
  double omega1 = 30.0;       // (um/h)^(d-1)
  double omega2 = 12.0;       // (um/h)^(d-1)
  double delta1 = 3.3;        // 1/h
  double delta2 = 330.0;      // mol/h
  double S_min = 1.0;
  double S_max = 3.0;
  double alpha1_min = 0.025;  // 1/h
  double alpha1_max = 0.05;   // 1/h
  double alpha2_max = 0.05;   // 1/h
  double a_chi = 3.18;        // 1/h
  double gamma1 = 3.3;        // 1/h
  double gamma2 = 1.0;        // 1/h
  double gamma3 = 3.307e-3;   // 1/h
  double D_chi = 1e6;         // um^2/h
  double k1p_over_H = 5.0;    // um^2/(h mol)
  double k2p_over_K = 1.0;    // um^2/h
  double C1_star = 3.024e-3;  // 1/um^2
  double C2_star = 3.024e-3;  // 1/um^2
  double lambda10 = 9e-4;     // 1/h
  double lambda2 = 1.44e-4;   // 1/h
  double chi_c = 5e-4;        // mol/um^2, assumed
  std::optional<double> k_minus;   // 1/h
  std::optional<double> lambda11;  // 1/h

  /// Width of the Hermite ramps of alpha1_S, (S_max - S_min) / 10.
  [[nodiscard]] double S_d() const noexcept { return (S_max - S_min) / 10.0; }

  /// omega1 / omega2; the only way the velocity weights enter the model.
  [[nodiscard]] double omega_ratio() const noexcept { return omega1 / omega2; }

  /// k_minus if configured, otherwise 0 (no detachment offset in B).
  [[nodiscard]] double detachment() const noexcept { return k_minus.value_or(0.0); }

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

/// Published benchmark parameter set (same as a default-constructed one).
[[nodiscard]] inline ParameterSet table1_parameters() { return {}; }

}  // namespace seeding
