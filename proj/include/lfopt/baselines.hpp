#ifndef LFOPT_BASELINES_HPP_
#define LFOPT_BASELINES_HPP_

#include <cstdint>
#include <vector>

#include "lfopt/metrics.hpp"
#include "lfopt/model.hpp"
#include "lfopt/surrogate.hpp"

namespace lfopt {

struct BaselineConfig {
  double erm_lambda = 1e-2;
  std::vector<double> l2_lambda_grid{1e-1, 1e-3, 1e-5};
  int erm_iters = 10000;
  int logreg_iters = 10000;
  double logreg_grad_tol = 1e-6;
  std::uint64_t seed = 0;
};

// The 20-point parameter grid {1e-3 + (1 - 2e-3)/20 * i, i = 1..20} shared by
// the cost search and the plug-in threshold search.
std::vector<double> grid_20();

// l2-regularized hinge minimizer via deterministic subgradient descent with
// step 1/(lambda * t); returns the tail-averaged iterate.
LinearModel erm_hinge(const std::vector<Example>& train, double lambda = 1e-2,
                      int iters = 10000);

// Hinge objective (1/n) sum max(0, 1 - y<theta,x>) + lambda ||theta||^2 with
// per-class weights; weight 1 for both classes gives the plain objective.
double hinge_objective(const std::vector<Example>& train, const LinearModel& model,
                       double lambda, double w_pos = 1.0, double w_neg = 1.0);

// Cost-sensitive hinge minimizer with weights w(+1) = cost, w(-1) = 1 - cost.
LinearModel weighted_hinge(const std::vector<Example>& train, double cost,
                           double lambda, int iters = 10000);

// Cost-sensitive ERM: for every cost in grid_20 trains one model per l2
// lambda, picks lambda on a 9:1 inner split and the cost on the 4:1 outer
// validation split by true utility. Throws InvalidInput on single-class data.
LinearModel weighted_erm(const std::vector<Example>& train, const MetricSpec& spec,
                         const BaselineConfig& cfg = {});

// l2-regularized logistic regression by full-batch gradient descent.
LinearModel logistic_regression(const std::vector<Example>& train, double lambda,
                                int iters = 10000, double grad_tol = 1e-6);

// Posterior estimate followed by a threshold: x -> sgn(eta(x) - delta).
struct PluginClassifier {
  LinearModel eta_model;
  double threshold = 0.5;

  double eta(std::span<const double> x) const;
  double score(std::span<const double> x) const { return eta(x) - threshold; }
};

// Fits the posterior on the inner 90% portion (lambda picked on the outer 4:1
// validation split), then picks the threshold from grid_20 on the inner 10%
// portion by true utility.
PluginClassifier plugin(const std::vector<Example>& train, const MetricSpec& spec,
                        const BaselineConfig& cfg = {});

}  // namespace lfopt

#endif  // LFOPT_BASELINES_HPP_
