#ifndef LFOPT_SURROGATE_HPP_
#define LFOPT_SURROGATE_HPP_

#include <cstdint>
#include <vector>

#include "lfopt/metrics.hpp"
#include "lfopt/model.hpp"

namespace lfopt {

// Convex upper bound of the 0/1 loss whose right derivative at the origin is
// tau times the left derivative:
//   phi(t) = log2(1 + exp(-t))      for t <= 0,
//   phi(t) = log2(1 + exp(-tau*t))  for t >  0.
// tau must lie in (0, 1).
struct TauDiscrepantLoss {
  double tau = 0.33;

  explicit TauDiscrepantLoss(double tau_value);
};

// Loss value; evaluated through log1p so it stays accurate for large |t|.
double loss_value(const TauDiscrepantLoss& loss, double t);

// Branch derivative. At t = 0 exactly, returns the (steeper) left-branch
// derivative -1 / (2 ln 2).
double loss_derivative(const TauDiscrepantLoss& loss, double t);

struct Example {
  std::vector<double> x;
  int y = 0;  // +1 or -1
};

// A labeled sample partitioned into the two independent halves used by the
// empirical utility: s0 feeds the numerator, s1 the denominator.
struct SplitSample {
  std::vector<Example> s0;
  std::vector<Example> s1;

  void validate() const;  // both halves non-empty
};

struct GradientDirection {
  std::vector<double> v;
};

// Per-example surrogate scores (margin xi = f(x), label y).
double score_w0(const MetricSpec& spec, const TauDiscrepantLoss& loss, double xi, int y);
double score_w1(const MetricSpec& spec, const TauDiscrepantLoss& loss, double xi, int y);

// Population-form scores with posterior q in place of the label.
double score_w0_population(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                           double xi, double q);
double score_w1_population(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                           double xi, double q);

// Mean of score_w0 over s0 (the concave numerator of the surrogate utility).
double surrogate_numerator(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                           const LinearModel& model, const std::vector<Example>& s0);

// Ratio of the s0-mean of score_w0 to the s1-mean of score_w1. Throws
// DegenerateEstimate when the denominator mean is zero.
double surrogate_utility(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                         const LinearModel& model, const SplitSample& split);

// Unbiased gradient-direction estimator, computed in O(n*d) as
//   (s1-mean of W1) * (s0-mean of grad W0) - (s0-mean of W0) * (s1-mean of grad W1),
// which equals the full double sum over s0 x s1.
GradientDirection gradient_direction(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                                     const LinearModel& model, const SplitSample& split);

// Pieces of the estimator, exposed for the optimizer and for tests:
// numerator/denominator means and their gradients.
struct SurrogateParts {
  double num = 0.0;
  double den = 0.0;
  std::vector<double> num_grad;
  std::vector<double> den_grad;
};
SurrogateParts surrogate_parts(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                               const LinearModel& model, const SplitSample& split);

// Shuffles indices with the given seed and puts the first floor(n/2) examples
// into s0, the rest into s1.
SplitSample make_split(const std::vector<Example>& sample, std::uint64_t seed);

}  // namespace lfopt

#endif  // LFOPT_SURROGATE_HPP_
