#include "seeding/ode/renewal.hpp"

#include <cmath>

#include "seeding/parameters.hpp"

namespace seeding::ode {

void RenewalSchedule::validate() const {
  if (!(std::isfinite(period) && period > 0.0)) throw ConfigError("renewal period must be > 0");
  if (!(std::isfinite(value) && value >= 0.0)) throw ConfigError("renewal value must be >= 0");
}

std::vector<double> RenewalSchedule::event_times(double t0, double t_end) const {
  validate();
  std::vector<double> times;
  const double tol = 1e-9 * std::max(1.0, std::abs(t_end));
  for (long long k = 1;; ++k) {
    const double t = static_cast<double>(k) * period;
    if (t >= t_end - tol) break;
    if (t > t0 + tol) times.push_back(t);
  }
  return times;
}

}  // namespace seeding::ode
