#ifndef LFOPT_METRICS_HPP_
#define LFOPT_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

namespace lfopt {

// Joint probabilities of (label, predicted sign). Entries sum to one; the
// positive-class prior is tp + fn.
struct ConfusionMatrix {
  double tp = 0.0;
  double fn_ = 0.0;
  double fp = 0.0;
  double tn = 0.0;

  double prior() const { return tp + fn_; }

  // Validates non-negativity and unit mass (1e-12 slack); throws InvalidInput.
  static ConfusionMatrix from_rates(double tp, double fn, double fp, double tn);
};

// Empirical confusion matrix of sign predictions against labels.
// A score of exactly 0 predicts -1.
ConfusionMatrix confusion_from_sample(std::span<const int> labels,
                                      std::span<const double> scores);

struct MetricKind {
  enum class Family { FBeta, Jaccard, GowerLegendre, Accuracy, Custom };

  Family family = Family::Custom;
  double param = 0.0;  // beta for FBeta, alpha for GowerLegendre

  static MetricKind fbeta(double beta) { return {Family::FBeta, beta}; }
  static MetricKind jaccard() { return {Family::Jaccard, 0.0}; }
  static MetricKind gower_legendre(double alpha) { return {Family::GowerLegendre, alpha}; }
  static MetricKind accuracy() { return {Family::Accuracy, 0.0}; }
  static MetricKind custom() { return {Family::Custom, 0.0}; }

  std::string name() const;
};

// Coefficients of a ratio of two affine functions of (TP, FP):
//   U = (a0_pos*TP + a0_neg*FP + b0) / (a1_pos*TP + a1_neg*FP + b1).
// b0/b1 absorb the class prior `pi` that was supplied when the spec was built.
struct MetricSpec {
  double a0_pos = 0.0;
  double a0_neg = 0.0;
  double b0 = 0.0;
  double a1_pos = 0.0;
  double a1_neg = 0.0;
  double b1 = 0.0;
  MetricKind kind;
  double pi = 0.0;

  double delta_a0() const { return a0_pos - a0_neg; }
  double delta_a1() const { return a1_pos - a1_neg; }

  // True whenever the numerator/denominator sign pattern required by the
  // lower-bound construction holds (a0_pos > 0, a0_neg <= 0, a1_pos >= 0,
  // a1_neg >= 0). Gower-Legendre with alpha != 1 fails this.
  bool sign_valid() const;
};

// Resolves preset coefficients for a given class prior. `pi` must lie in
// (0, 1); FBeta needs beta > 0, GowerLegendre needs alpha >= 0.
MetricSpec spec_for(MetricKind kind, double pi);

// Custom spec with explicit coefficients; enforces the sign constraints.
MetricSpec make_custom_spec(double a0_pos, double a0_neg, double b0,
                            double a1_pos, double a1_neg, double b1, double pi);

// U(cm) from the coefficient form. Throws DegenerateMetric on a zero
// denominator.
double true_utility(const MetricSpec& spec, const ConfusionMatrix& cm);

// Evaluates the defining fraction of a preset metric directly over
// (TP, FN, FP, TN), independent of the coefficient form. Not defined for
// Custom.
double metric_direct(MetricKind kind, const ConfusionMatrix& cm);

// Finite support with known posteriors; masses sum to one.
struct DiscreteDistribution {
  struct Point {
    std::vector<double> x;
    double eta = 0.0;   // P(Y=+1 | X=x)
    double mass = 0.0;
  };
  std::vector<Point> points;

  double implied_prior() const;
  void validate() const;  // throws InvalidInput
};

struct BayesOracleResult {
  double utility = 0.0;
  std::vector<int> assignment;  // +1 / -1 per support point
};

// Exhaustive search over all sign assignments of the support (at most 24
// points). The returned assignment is canonical: points where the optimality
// expression is exactly zero are assigned -1. Throws CapacityError on large
// supports and DegenerateMetric if every assignment has a zero denominator.
BayesOracleResult bayes_optimal_discrete(const MetricSpec& spec,
                                         const DiscreteDistribution& dist);

}  // namespace lfopt

#endif  // LFOPT_METRICS_HPP_
