#include "seeding/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "seeding/rates.hpp"

namespace seeding {
namespace {

void require_finite(double t, const OdeState& y) {
  const bool ok = std::isfinite(t) && std::isfinite(y.c1) && std::isfinite(y.c2) &&
                  std::isfinite(y.chi) && std::isfinite(y.h) && std::isfinite(y.tau);
  if (!ok) {
    throw EvaluationError(fmt::format("non-finite state at t = {}: ({}, {}, {}, {}, {})", t, y.c1,
                                      y.c2, y.chi, y.h, y.tau),
                          t);
  }
}

struct Rates {
  double a1;      // alpha1(S, chi)
  double a2;      // alpha2(S, chi)
  double da1_dchi;
  double da2_dchi;
  double da1_dS;
  double da2_dS;
};

Rates conversion_rates(double S, double chi, const ParameterSet& p) {
  const double chi_pos = std::max(chi, 0.0);
  const double a1S = alpha1_S(S, p);
  const double a2S = alpha2_S(S, p);
  const double a1c = alpha1_chi(chi_pos, p);
  const double a2c = alpha2_chi(chi_pos, p);
  // Clipped region is flat in chi.
  const double d1c = chi > 0.0 ? alpha1_chi_derivative(chi_pos, p) : 0.0;
  const double d2c = chi > 0.0 ? alpha2_chi_derivative(chi_pos, p) : 0.0;
  return {a1S * a1c,
          a2S * a2c,
          a1S * d1c,
          a2S * d2c,
          alpha1_S_derivative(S, p) * a1c,
          alpha2_S_derivative(S, p) * a2c};
}

}  // namespace

OdeState ode_rhs(double t, const OdeState& y, const StimulusSignal& S, const ParameterSet& p) {
  require_finite(t, y);
  const double s = S(t);
  const Rates r = conversion_rates(s, y.chi, p);
  const double ratio = p.omega_ratio();
  const double u1 = y.c1 / p.C1_star;
  const double u2 = y.c2 / p.C2_star;

  OdeState dy;
  dy.c1 = -r.a1 * y.c1 + r.a2 * ratio * y.c2 + p.beta * y.c1 * (1.0 - u1 - u2);
  dy.c2 = r.a1 / ratio * y.c1 - r.a2 * y.c2;
  dy.chi = -p.a_chi * (u1 + u2) * y.chi;
  dy.h = -p.gamma1 * u1 * y.h - p.gamma2 * u2 * y.h + p.gamma3 * y.c2 / (1.0 + u2);
  dy.tau = -p.delta1 * u1 * y.tau + p.delta2 * y.c2;

  if (!(std::isfinite(dy.c1) && std::isfinite(dy.c2) && std::isfinite(dy.chi) &&
        std::isfinite(dy.h) && std::isfinite(dy.tau))) {
    throw EvaluationError(fmt::format("right-hand side overflowed at t = {}", t), t);
  }
  return dy;
}

StateMatrix ode_jacobian(double t, const OdeState& y, const StimulusSignal& S,
                         const ParameterSet& p) {
  require_finite(t, y);
  const Rates r = conversion_rates(S(t), y.chi, p);
  const double ratio = p.omega_ratio();
  const double C1 = p.C1_star;
  const double C2 = p.C2_star;
  const double u1 = y.c1 / C1;
  const double u2 = y.c2 / C2;

  StateMatrix J = StateMatrix::Zero();
  J(kC1, kC1) = -r.a1 + p.beta * (1.0 - 2.0 * u1 - u2);
  J(kC1, kC2) = r.a2 * ratio - p.beta * y.c1 / C2;
  J(kC1, kChi) = -r.da1_dchi * y.c1 + r.da2_dchi * ratio * y.c2;

  J(kC2, kC1) = r.a1 / ratio;
  J(kC2, kC2) = -r.a2;
  J(kC2, kChi) = r.da1_dchi / ratio * y.c1 - r.da2_dchi * y.c2;

  J(kChi, kC1) = -p.a_chi * y.chi / C1;
  J(kChi, kC2) = -p.a_chi * y.chi / C2;
  J(kChi, kChi) = -p.a_chi * (u1 + u2);

  const double sat = 1.0 + u2;
  J(kH, kC1) = -p.gamma1 * y.h / C1;
  J(kH, kC2) = -p.gamma2 * y.h / C2 + p.gamma3 / (sat * sat);
  J(kH, kH) = -p.gamma1 * u1 - p.gamma2 * u2;

  J(kTau, kC1) = -p.delta1 * y.tau / C1;
  J(kTau, kC2) = p.delta2;
  J(kTau, kTau) = -p.delta1 * u1;
  return J;
}

StateVector ode_time_derivative(double t, const OdeState& y, const StimulusSignal& S,
                                const ParameterSet& p) {
  require_finite(t, y);
  const Rates r = conversion_rates(S(t), y.chi, p);
  const double dS = S.derivative(t);
  const double ratio = p.omega_ratio();
  StateVector dt = StateVector::Zero();
  dt[kC1] = dS * (-r.da1_dS * y.c1 + r.da2_dS * ratio * y.c2);
  dt[kC2] = dS * (r.da1_dS / ratio * y.c1 - r.da2_dS * y.c2);
  return dt;
}

}  // namespace seeding
