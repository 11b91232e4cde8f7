#ifndef LFOPT_OPTIMIZER_HPP_
#define LFOPT_OPTIMIZER_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lfopt/metrics.hpp"
#include "lfopt/model.hpp"
#include "lfopt/surrogate.hpp"

namespace lfopt {

enum class Phase2Method { Nga, NormalizedBfgs };

struct OptimizerConfig {
  double learning_rate = 0.1;
  int max_phase1_iters = 300;
  int max_phase2_iters = 300;
  Phase2Method phase2_method = Phase2Method::Nga;
  double stationary_tol = 1e-10;   // stop when the update direction vanishes
  double improvement_tol = 1e-9;   // minimum surrogate-utility gain that counts
  int patience = 20;               // iterations without gain before stopping
  std::uint64_t seed = 0;

  void validate() const;  // throws InvalidInput
};

struct TrajectoryPoint {
  int iteration = 0;       // 0 is the initial parameter
  double numerator = 0.0;  // empirical surrogate numerator
  double utility = 0.0;    // empirical surrogate utility (NaN when degenerate)
  double eval = 0.0;       // caller-supplied utility (NaN when no evaluator)
};

struct TrainResult {
  LinearModel theta;  // best iterate by surrogate utility, not the last one
  int phase1_iters = 0;
  int phase2_iters = 0;
  std::vector<TrajectoryPoint> trajectory;
  std::string termination_reason;  // "stationary", "no_improvement", "max_iters"
  bool phase1_incomplete = false;  // numerator still non-positive after phase 1
};

using ModelEvaluator = std::function<double(const LinearModel&)>;

// Two-phase ascent: plain gradient steps on the concave numerator until it
// turns positive, then normalized steps (NGA or BFGS-preconditioned) on the
// full fractional objective.
TrainResult hybrid_train(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                         const SplitSample& split, const OptimizerConfig& cfg,
                         LinearModel init, const ModelEvaluator& eval = {});

// theta + gamma * v / ||v||. Throws InvalidInput on a zero direction.
LinearModel nga_step(const LinearModel& theta, const GradientDirection& v_hat,
                     double gamma);

// Inverse-Hessian state for normalized BFGS. The approximation lives in the
// minimization frame of the negated objective, so curvature pairs are
// (s, v_prev - v_cur).
struct BfgsState {
  std::vector<double> h;  // d x d row-major; empty until first use
  std::vector<double> prev_theta;
  std::vector<double> prev_v;
  bool has_prev = false;
  int skip_count = 0;

  void reset(std::size_t d);
};

// Preconditioned ascent direction H * v.
std::vector<double> bfgs_direction(const BfgsState& state, const std::vector<double>& v);

// One normalized BFGS step: update H from the stored previous pair (skipping
// on non-positive curvature; H resets to identity after d consecutive skips),
// then move theta by gamma along the unit preconditioned direction. Falls
// back to the plain normalized gradient if the direction is not finite.
LinearModel normalized_bfgs_step(BfgsState& state, const LinearModel& theta,
                                 const GradientDirection& v_hat, double gamma);

using InitFactory = std::function<LinearModel(const std::vector<Example>&)>;

struct LrSelection {
  double gamma = 0.0;
  bool all_degenerate = false;
};

// Splits `train` 4:1 (seeded), trains once per grid value on the 4/5 part
// starting from init_factory's model, and returns the rate with the highest
// validation true utility; ties go to the smaller rate. If every run is
// degenerate, returns the smallest rate and sets all_degenerate.
LrSelection select_learning_rate(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                                 const std::vector<Example>& train,
                                 const std::vector<double>& grid,
                                 const OptimizerConfig& cfg,
                                 const InitFactory& init_factory);

// Validation/test-time utility: the defining fraction for preset kinds, the
// coefficient form for custom specs.
double evaluate_utility(const MetricSpec& spec, const ConfusionMatrix& cm);

}  // namespace lfopt

#endif  // LFOPT_OPTIMIZER_HPP_
