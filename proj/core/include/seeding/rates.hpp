#pragma once

#include "seeding/parameters.hpp"

namespace seeding {

// Nonlinear rate functions. alpha1 = alpha1_S(S) * alpha1_chi(chi) is the
// hMSC -> chondrocyte conversion rate; alpha2 = alpha2_S(S) * alpha2_chi(chi)
// the reverse one.

/// Smoothed indicator of the stimulus window [S_min, S_max]: alpha1_min
/// outside, alpha1_max inside, joined by C1 cubic Hermite ramps of half-width
/// S_d centred on S_min and S_max.
[[nodiscard]] double alpha1_S(double S, const ParameterSet& p) noexcept;
[[nodiscard]] double alpha1_S_derivative(double S, const ParameterSet& p) noexcept;

/// chi^2 / (chi_c^2 + chi^2). Throws std::domain_error for chi < 0.
[[nodiscard]] double alpha1_chi(double chi, const ParameterSet& p);
[[nodiscard]] double alpha1_chi_derivative(double chi, const ParameterSet& p);

/// alpha2_max for S <= S_min, alpha2_max * S_min / S above.
[[nodiscard]] double alpha2_S(double S, const ParameterSet& p) noexcept;
[[nodiscard]] double alpha2_S_derivative(double S, const ParameterSet& p) noexcept;

/// chi_c^2 / (chi_c^2 + chi^2). Throws std::domain_error for chi < 0.
[[nodiscard]] double alpha2_chi(double chi, const ParameterSet& p);
[[nodiscard]] double alpha2_chi_derivative(double chi, const ParameterSet& p);

/// Adhesion function B(h, tau) = (k1+/H) h + (k2+/K) tau + k-, in 1/h.
/// Throws std::domain_error on negative h or tau.
[[nodiscard]] double adhesion_B(double h, double tau, const ParameterSet& p);

}  // namespace seeding
