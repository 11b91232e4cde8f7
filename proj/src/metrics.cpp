#include "lfopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lfopt/errors.hpp"

namespace lfopt {

namespace {

constexpr double kMassTol = 1e-12;

double checked_ratio(double num, double den, const char* what) {
  if (den == 0.0) {
    throw DegenerateMetric(std::string(what) + ": zero denominator");
  }
  return num / den;
}

}  // namespace

ConfusionMatrix ConfusionMatrix::from_rates(double tp, double fn, double fp, double tn) {
  if (tp < 0.0 || fn < 0.0 || fp < 0.0 || tn < 0.0) {
    throw InvalidInput("confusion matrix entries must be non-negative");
  }
  if (std::abs(tp + fn + fp + tn - 1.0) > kMassTol) {
    throw InvalidInput("confusion matrix entries must sum to 1");
  }
  return ConfusionMatrix{tp, fn, fp, tn};
}

ConfusionMatrix confusion_from_sample(std::span<const int> labels,
                                      std::span<const double> scores) {
  if (labels.empty()) {
    throw InvalidInput("confusion_from_sample: empty input");
  }
  if (labels.size() != scores.size()) {
    throw InvalidInput("confusion_from_sample: labels/scores length mismatch");
  }
  std::size_t tp = 0, fn = 0, fp = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool positive_label = labels[i] > 0;
    const bool positive_pred = scores[i] > 0.0;  // sgn(0) = -1
    if (positive_label) {
      (positive_pred ? tp : fn) += 1;
    } else {
      (positive_pred ? fp : tn) += 1;
    }
  }
  const double n = static_cast<double>(labels.size());
  return ConfusionMatrix{tp / n, fn / n, fp / n, tn / n};
}

std::string MetricKind::name() const {
  char buf[64];
  switch (family) {
    case Family::FBeta:
      std::snprintf(buf, sizeof(buf), "fbeta(%g)", param);
      return buf;
    case Family::Jaccard:
      return "jaccard";
    case Family::GowerLegendre:
      std::snprintf(buf, sizeof(buf), "gower-legendre(%g)", param);
      return buf;
    case Family::Accuracy:
      return "accuracy";
    case Family::Custom:
      return "custom";
  }
  return "unknown";
}

bool MetricSpec::sign_valid() const {
  return a0_pos > 0.0 && a0_neg <= 0.0 && a1_pos >= 0.0 && a1_neg >= 0.0;
}

MetricSpec spec_for(MetricKind kind, double pi) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw InvalidInput("spec_for: pi must lie in (0, 1)");
  }
  MetricSpec s;
  s.kind = kind;
  s.pi = pi;
  switch (kind.family) {
    case MetricKind::Family::FBeta: {
      const double beta = kind.param;
      if (!(beta > 0.0)) throw InvalidInput("spec_for: beta must be positive");
      const double b2 = beta * beta;
      s.a0_pos = 1.0 + b2;
      s.a0_neg = 0.0;
      s.b0 = 0.0;
      s.a1_pos = 1.0;
      s.a1_neg = 1.0;
      s.b1 = b2 * pi;
      return s;
    }
    case MetricKind::Family::Jaccard:
      s.a0_pos = 1.0;
      s.a0_neg = 0.0;
      s.b0 = 0.0;
      s.a1_pos = 0.0;
      s.a1_neg = 1.0;
      s.b1 = pi;
      return s;
    case MetricKind::Family::GowerLegendre: {
      const double alpha = kind.param;
      if (!(alpha >= 0.0)) throw InvalidInput("spec_for: alpha must be non-negative");
      s.a0_pos = 1.0;
      s.a0_neg = -1.0;
      s.b0 = 1.0 - pi;
      s.a1_pos = 1.0 - alpha;
      s.a1_neg = alpha - 1.0;
      s.b1 = 1.0 + (alpha - 1.0) * pi;
      return s;
    }
    case MetricKind::Family::Accuracy:
      // Gower-Legendre with alpha = 1: (TP + TN) / 1.
      s.a0_pos = 1.0;
      s.a0_neg = -1.0;
      s.b0 = 1.0 - pi;
      s.a1_pos = 0.0;
      s.a1_neg = 0.0;
      s.b1 = 1.0;
      return s;
    case MetricKind::Family::Custom:
      throw InvalidInput("spec_for: custom metrics need explicit coefficients");
  }
  throw InvalidInput("spec_for: unknown metric kind");
}

MetricSpec make_custom_spec(double a0_pos, double a0_neg, double b0,
                            double a1_pos, double a1_neg, double b1, double pi) {
  MetricSpec s{a0_pos, a0_neg, b0, a1_pos, a1_neg, b1, MetricKind::custom(), pi};
  if (!s.sign_valid()) {
    throw InvalidInput(
        "make_custom_spec: need a0_pos > 0, a0_neg <= 0, a1_pos >= 0, a1_neg >= 0");
  }
  return s;
}

double true_utility(const MetricSpec& spec, const ConfusionMatrix& cm) {
  const double num = spec.a0_pos * cm.tp + spec.a0_neg * cm.fp + spec.b0;
  const double den = spec.a1_pos * cm.tp + spec.a1_neg * cm.fp + spec.b1;
  return checked_ratio(num, den, "true_utility");
}

double metric_direct(MetricKind kind, const ConfusionMatrix& cm) {
  switch (kind.family) {
    case MetricKind::Family::FBeta: {
      const double b2 = kind.param * kind.param;
      return checked_ratio((1.0 + b2) * cm.tp,
                           (1.0 + b2) * cm.tp + b2 * cm.fn_ + cm.fp, "f-beta");
    }
    case MetricKind::Family::Jaccard:
      return checked_ratio(cm.tp, cm.tp + cm.fn_ + cm.fp, "jaccard");
    case MetricKind::Family::GowerLegendre:
      return checked_ratio(cm.tp + cm.tn,
                           cm.tp + kind.param * (cm.fp + cm.fn_) + cm.tn,
                           "gower-legendre");
    case MetricKind::Family::Accuracy:
      return cm.tp + cm.tn;
    case MetricKind::Family::Custom:
      throw InvalidInput("metric_direct: no defining fraction for custom metrics");
  }
  throw InvalidInput("metric_direct: unknown metric kind");
}

double DiscreteDistribution::implied_prior() const {
  double pi = 0.0;
  for (const auto& p : points) pi += p.mass * p.eta;
  return pi;
}

void DiscreteDistribution::validate() const {
  if (points.empty()) throw InvalidInput("discrete distribution: empty support");
  double mass = 0.0;
  for (const auto& p : points) {
    if (p.eta < 0.0 || p.eta > 1.0) {
      throw InvalidInput("discrete distribution: eta outside [0, 1]");
    }
    if (p.mass < 0.0) throw InvalidInput("discrete distribution: negative mass");
    mass += p.mass;
  }
  if (std::abs(mass - 1.0) > kMassTol) {
    throw InvalidInput("discrete distribution: masses must sum to 1");
  }
}

BayesOracleResult bayes_optimal_discrete(const MetricSpec& spec,
                                         const DiscreteDistribution& dist) {
  dist.validate();
  const std::size_t k = dist.points.size();
  if (k > 24) {
    throw CapacityError("bayes_optimal_discrete: support larger than 24 points");
  }

  const double pi = dist.implied_prior();
  bool found = false;
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    double tp = 0.0, fp = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        tp += dist.points[i].mass * dist.points[i].eta;
        fp += dist.points[i].mass * (1.0 - dist.points[i].eta);
      }
    }
    const ConfusionMatrix cm{tp, pi - tp, fp, (1.0 - pi) - fp};
    const double den = spec.a1_pos * cm.tp + spec.a1_neg * cm.fp + spec.b1;
    if (den == 0.0) continue;
    const double u = (spec.a0_pos * cm.tp + spec.a0_neg * cm.fp + spec.b0) / den;
    if (!found || u > best) {
      found = true;
      best = u;
    }
  }
  if (!found) {
    throw DegenerateMetric("bayes_optimal_discrete: every assignment is degenerate");
  }

  // Canonical assignment from the optimality expression at the optimum;
  // points on the critical set (expression exactly zero) get -1.
  BayesOracleResult result;
  result.utility = best;
  result.assignment.resize(k);
  double tp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double g = (spec.delta_a0() - spec.delta_a1() * best) * dist.points[i].eta -
                     (spec.a1_neg * best - spec.a0_neg);
    result.assignment[i] = g > 0.0 ? +1 : -1;
    if (g > 0.0) {
      tp += dist.points[i].mass * dist.points[i].eta;
      fp += dist.points[i].mass * (1.0 - dist.points[i].eta);
    }
  }
  const double den = spec.a1_pos * tp + spec.a1_neg * fp + spec.b1;
  const double canon = checked_ratio(spec.a0_pos * tp + spec.a0_neg * fp + spec.b0,
                                     den, "bayes_optimal_discrete");
  if (std::abs(canon - best) > 1e-9) {
    throw DegenerateMetric(
        "bayes_optimal_discrete: sign-condition assignment does not attain the optimum");
  }
  return result;
}

}  // namespace lfopt
