#include "lfopt/surrogate.hpp"

#include <cmath>

#include "lfopt/errors.hpp"
#include "lfopt/rng.hpp"

namespace lfopt {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

// log2(1 + exp(-u)) for u >= 0, exact via log1p.
double softplus2(double u) { return std::log1p(std::exp(-u)) / kLn2; }

}  // namespace

TauDiscrepantLoss::TauDiscrepantLoss(double tau_value) : tau(tau_value) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw InvalidInput("TauDiscrepantLoss: tau must lie in (0, 1)");
  }
}

double loss_value(const TauDiscrepantLoss& loss, double t) {
  if (t <= 0.0) {
    // log2(1 + e^-t) = -t/ln2 + log2(1 + e^t)
    return -t / kLn2 + softplus2(-t);
  }
  return softplus2(loss.tau * t);
}

double loss_derivative(const TauDiscrepantLoss& loss, double t) {
  if (t <= 0.0) {
    return -1.0 / (kLn2 * (1.0 + std::exp(t)));
  }
  return -loss.tau / (kLn2 * (1.0 + std::exp(loss.tau * t)));
}

void SplitSample::validate() const {
  if (s0.empty() || s1.empty()) {
    throw InvalidInput("SplitSample: both halves must be non-empty");
  }
}

double score_w0(const MetricSpec& spec, const TauDiscrepantLoss& loss, double xi, int y) {
  if (y > 0) {
    return spec.a0_pos * (1.0 - loss_value(loss, xi)) + spec.b0;
  }
  return spec.a0_neg * loss_value(loss, -xi) + spec.b0;
}

double score_w1(const MetricSpec& spec, const TauDiscrepantLoss& loss, double xi, int y) {
  if (y > 0) {
    return spec.a1_pos * (1.0 + loss_value(loss, xi)) + spec.b1;
  }
  return spec.a1_neg * loss_value(loss, -xi) + spec.b1;
}

double score_w0_population(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                           double xi, double q) {
  return spec.a0_pos * (1.0 - loss_value(loss, xi)) * q +
         spec.a0_neg * loss_value(loss, -xi) * (1.0 - q) + spec.b0;
}

double score_w1_population(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                           double xi, double q) {
  return spec.a1_pos * (1.0 + loss_value(loss, xi)) * q +
         spec.a1_neg * loss_value(loss, -xi) * (1.0 - q) + spec.b1;
}

double surrogate_numerator(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                           const LinearModel& model, const std::vector<Example>& s0) {
  if (s0.empty()) throw InvalidInput("surrogate_numerator: empty sample");
  double sum = 0.0;
  for (const auto& ex : s0) {
    sum += score_w0(spec, loss, predict(model, ex.x), ex.y);
  }
  return sum / static_cast<double>(s0.size());
}

double surrogate_utility(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                         const LinearModel& model, const SplitSample& split) {
  split.validate();
  double den = 0.0;
  for (const auto& ex : split.s1) {
    den += score_w1(spec, loss, predict(model, ex.x), ex.y);
  }
  den /= static_cast<double>(split.s1.size());
  if (den == 0.0) {
    throw DegenerateEstimate("surrogate_utility: zero denominator mean");
  }
  return surrogate_numerator(spec, loss, model, split.s0) / den;
}

SurrogateParts surrogate_parts(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                               const LinearModel& model, const SplitSample& split) {
  split.validate();
  const std::size_t d = model.dim();
  SurrogateParts parts;
  parts.num_grad.assign(d, 0.0);
  parts.den_grad.assign(d, 0.0);

  for (const auto& ex : split.s0) {
    const double xi = predict(model, ex.x);
    parts.num += score_w0(spec, loss, xi, ex.y);
    // d/dtheta W0(f(x), y): -a0_pos*phi'(xi)*x for y=+1, -a0_neg*phi'(-xi)*x for y=-1.
    const double c = ex.y > 0 ? -spec.a0_pos * loss_derivative(loss, xi)
                              : -spec.a0_neg * loss_derivative(loss, -xi);
    for (std::size_t j = 0; j < d; ++j) parts.num_grad[j] += c * ex.x[j];
  }
  const double m = static_cast<double>(split.s0.size());
  parts.num /= m;
  for (auto& g : parts.num_grad) g /= m;

  for (const auto& ex : split.s1) {
    const double xi = predict(model, ex.x);
    parts.den += score_w1(spec, loss, xi, ex.y);
    // d/dtheta W1(f(x), y): a1_pos*phi'(xi)*x for y=+1, -a1_neg*phi'(-xi)*x for y=-1.
    const double c = ex.y > 0 ? spec.a1_pos * loss_derivative(loss, xi)
                              : -spec.a1_neg * loss_derivative(loss, -xi);
    for (std::size_t j = 0; j < d; ++j) parts.den_grad[j] += c * ex.x[j];
  }
  const double nm = static_cast<double>(split.s1.size());
  parts.den /= nm;
  for (auto& g : parts.den_grad) g /= nm;
  return parts;
}

GradientDirection gradient_direction(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                                     const LinearModel& model, const SplitSample& split) {
  const SurrogateParts parts = surrogate_parts(spec, loss, model, split);
  GradientDirection dir;
  dir.v.resize(model.dim());
  for (std::size_t j = 0; j < model.dim(); ++j) {
    dir.v[j] = parts.den * parts.num_grad[j] - parts.num * parts.den_grad[j];
  }
  return dir;
}

SplitSample make_split(const std::vector<Example>& sample, std::uint64_t seed) {
  if (sample.size() < 2) {
    throw InvalidInput("make_split: need at least two examples");
  }
  const auto idx = shuffled_indices(sample.size(), seed);
  const std::size_t m = sample.size() / 2;
  SplitSample split;
  split.s0.reserve(m);
  split.s1.reserve(sample.size() - m);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    (i < m ? split.s0 : split.s1).push_back(sample[idx[i]]);
  }
  return split;
}

}  // namespace lfopt
