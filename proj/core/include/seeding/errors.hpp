#pragma once

#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace seeding {

/// Invalid parameters or configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The right-hand side was asked to evaluate a non-finite state.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Integration failure (step-size underflow, Newton divergence, linear solve
/// residual, non-finite state) at a known model time.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double t)
      : std::runtime_error(fmt::format("{} (t = {} h)", what, t)), time_(t) {}
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace seeding
