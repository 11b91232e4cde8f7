#ifndef LFOPT_CALIBRATION_HPP_
#define LFOPT_CALIBRATION_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lfopt/metrics.hpp"

namespace lfopt {

enum class Verdict { Satisfied, Violated, Unverifiable };

const char* verdict_name(Verdict v);

struct ConditionResult {
  std::string name;
  Verdict verdict = Verdict::Unverifiable;
  double value = 0.0;  // the evaluated quantity (NaN when not computable)
};

struct CalibrationReport {
  MetricKind metric;
  double tau = 0.0;
  std::vector<ConditionResult> conditions;
  Verdict overall = Verdict::Unverifiable;  // Satisfied unless something is Violated
};

struct TauRange {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_open = false;  // lo is always open

  bool contains(double tau) const { return tau > lo && (hi_open ? tau < hi : tau <= hi); }
};

// Admissible discrepancy range (0, beta^2 / (2 + beta^2)] for the F-beta
// surrogate. Throws InvalidInput for beta <= 0.
TauRange tau_range_fbeta(double beta);

// Admissible discrepancy range (0, 1) for the Jaccard surrogate.
TauRange tau_range_jaccard();

// Evaluates the general sufficient conditions for surrogate calibration over
// the spec coefficients. Conditions that reference the optimal surrogate
// utility or the true utility of the surrogate optimum take the optional
// estimates and come back Unverifiable when those are absent.
CalibrationReport check_general(const MetricSpec& spec, double tau,
                                std::optional<double> u_phi_star = std::nullopt,
                                std::optional<double> u_fstar = std::nullopt);

// Accuracy calibration of an arbitrary loss: convexity on a grid plus
// negative one-sided derivatives at the origin.
CalibrationReport check_accuracy(const std::function<double(double)>& loss);

}  // namespace lfopt

#endif  // LFOPT_CALIBRATION_HPP_
