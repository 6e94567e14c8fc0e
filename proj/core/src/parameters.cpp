#include "seeding/parameters.hpp"

#include <cmath>
#include <string_view>

namespace seeding {
namespace {

void require_positive(double value, std::string_view name) {
  if (!(std::isfinite(value) && value > 0.0)) {
    throw ConfigError(std::string(name) + " must be finite and > 0");
  }
}

void require_nonnegative(double value, std::string_view name) {
  if (!(std::isfinite(value) && value >= 0.0)) {
    throw ConfigError(std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

void ParameterSet::validate() const {
  // Reaction rates may be switched off individually (zero); scales may not.
  require_nonnegative(beta, "beta");
  require_positive(s1, "s1");
  require_positive(s2, "s2");
  require_positive(omega1, "omega1");
  require_positive(omega2, "omega2");
  require_nonnegative(delta1, "delta1");
  require_nonnegative(delta2, "delta2");
  require_positive(S_min, "S_min");
  require_positive(S_max, "S_max");
  require_nonnegative(alpha1_min, "alpha1_min");
  require_nonnegative(alpha1_max, "alpha1_max");
  require_nonnegative(alpha2_max, "alpha2_max");
  require_nonnegative(a_chi, "a_chi");
  require_nonnegative(gamma1, "gamma1");
  require_nonnegative(gamma2, "gamma2");
  require_nonnegative(gamma3, "gamma3");
  require_nonnegative(D_chi, "D_chi");
  require_nonnegative(k1p_over_H, "k1p_over_H");
  require_nonnegative(k2p_over_K, "k2p_over_K");
  require_positive(C1_star, "C1_star");
  require_positive(C2_star, "C2_star");
  require_positive(lambda10, "lambda10");
  require_positive(lambda2, "lambda2");
  require_positive(chi_c, "chi_c");
  if (k_minus) require_positive(*k_minus, "k_minus");
  if (lambda11) require_positive(*lambda11, "lambda11");
  if (!(S_min < S_max)) throw ConfigError("S_min must be < S_max");
  if (!(alpha1_min < alpha1_max)) throw ConfigError("alpha1_min must be < alpha1_max");
}

}  // namespace seeding
