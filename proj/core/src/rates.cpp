#include "seeding/rates.hpp"

#include <stdexcept>

namespace seeding {
namespace {

void require_nonnegative(double value, const char* what) {
  if (value < 0.0) throw std::domain_error(std::string(what) + " must be >= 0");
}

}  // namespace

double alpha1_S(double S, const ParameterSet& p) noexcept {
  const double lo = p.alpha1_min;
  const double hi = p.alpha1_max;
  const double sd = p.S_d();
  const double mid = 0.5 * (hi + lo);
  if (S <= p.S_min - sd) return lo;
  if (S <= p.S_min + sd) {
    const double x = (S - p.S_min) / sd;
    return 0.25 * (lo - hi) * x * x * x + 0.75 * (hi - lo) * x + mid;
  }
  if (S <= p.S_max - sd) return hi;
  if (S <= p.S_max + sd) {
    const double x = (S - p.S_max) / sd;
    return 0.25 * (hi - lo) * x * x * x + 0.75 * (lo - hi) * x + mid;
  }
  return lo;
}

double alpha1_S_derivative(double S, const ParameterSet& p) noexcept {
  const double lo = p.alpha1_min;
  const double hi = p.alpha1_max;
  const double sd = p.S_d();
  if (S <= p.S_min - sd) return 0.0;
  if (S <= p.S_min + sd) {
    const double x = (S - p.S_min) / sd;
    return 0.75 * (hi - lo) * (1.0 - x * x) / sd;
  }
  if (S <= p.S_max - sd) return 0.0;
  if (S <= p.S_max + sd) {
    const double x = (S - p.S_max) / sd;
    return 0.75 * (lo - hi) * (1.0 - x * x) / sd;
  }
  return 0.0;
}

double alpha1_chi(double chi, const ParameterSet& p) {
  require_nonnegative(chi, "chi");
  const double c2 = p.chi_c * p.chi_c;
  return chi * chi / (c2 + chi * chi);
}

double alpha1_chi_derivative(double chi, const ParameterSet& p) {
  require_nonnegative(chi, "chi");
  const double c2 = p.chi_c * p.chi_c;
  const double denom = c2 + chi * chi;
  return 2.0 * chi * c2 / (denom * denom);
}

double alpha2_S(double S, const ParameterSet& p) noexcept {
  if (S <= p.S_min) return p.alpha2_max;
  return p.alpha2_max * p.S_min / S;
}

double alpha2_S_derivative(double S, const ParameterSet& p) noexcept {
  if (S <= p.S_min) return 0.0;
  return -p.alpha2_max * p.S_min / (S * S);
}

double alpha2_chi(double chi, const ParameterSet& p) {
  require_nonnegative(chi, "chi");
  const double c2 = p.chi_c * p.chi_c;
  return c2 / (c2 + chi * chi);
}

double alpha2_chi_derivative(double chi, const ParameterSet& p) {
  require_nonnegative(chi, "chi");
  const double c2 = p.chi_c * p.chi_c;
  const double denom = c2 + chi * chi;
  return -2.0 * chi * c2 / (denom * denom);
}

double adhesion_B(double h, double tau, const ParameterSet& p) {
  require_nonnegative(h, "h");
  require_nonnegative(tau, "tau");
  return p.k1p_over_H * h + p.k2p_over_K * tau + p.detachment();
}

}  // namespace seeding
