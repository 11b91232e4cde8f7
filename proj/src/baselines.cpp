#include "lfopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfopt/errors.hpp"
#include "lfopt/optimizer.hpp"
#include "lfopt/rng.hpp"

namespace lfopt {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double sigmoid(double t) {
  return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

void check_two_classes(const std::vector<Example>& train, const char* what) {
  bool pos = false, neg = false;
  for (const auto& ex : train) (ex.y > 0 ? pos : neg) = true;
  if (!pos || !neg) throw InvalidInput(std::string(what) + ": needs both classes");
}

std::pair<std::vector<Example>, std::vector<Example>> split_examples(
    const std::vector<Example>& sample, double ratio, std::uint64_t seed) {
  const auto idx = shuffled_indices(sample.size(), seed);
  const std::size_t cut =
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(sample.size()) + 0.5));
  std::pair<std::vector<Example>, std::vector<Example>> parts;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    (i < cut ? parts.first : parts.second).push_back(sample[idx[i]]);
  }
  return parts;
}

// Validation true utility of a score function; NaN when degenerate.
template <typename ScoreFn>
double validation_utility(const MetricSpec& spec, const std::vector<Example>& val,
                          ScoreFn&& score) {
  std::vector<int> labels;
  std::vector<double> scores;
  labels.reserve(val.size());
  scores.reserve(val.size());
  for (const auto& ex : val) {
    labels.push_back(ex.y);
    scores.push_back(score(ex));
  }
  try {
    return evaluate_utility(spec, confusion_from_sample(labels, scores));
  } catch (const DegenerateMetric&) {
    return kNan;
  }
}

}  // namespace

std::vector<double> grid_20() {
  std::vector<double> grid;
  grid.reserve(20);
  for (int i = 1; i <= 20; ++i) {
    grid.push_back(1e-3 + (1.0 - 2e-3) / 20.0 * i);
  }
  return grid;
}

double hinge_objective(const std::vector<Example>& train, const LinearModel& model,
                       double lambda, double w_pos, double w_neg) {
  double loss = 0.0;
  for (const auto& ex : train) {
    const double margin = ex.y * predict(model, ex.x);
    loss += (ex.y > 0 ? w_pos : w_neg) * std::max(0.0, 1.0 - margin);
  }
  loss /= static_cast<double>(train.size());
  double reg = 0.0;
  for (double t : model.theta) reg += t * t;
  return loss + lambda * reg;
}

namespace {

// Subgradient descent with step 1/(lambda*t), projection onto the Pegasos
// feasible ball and tail averaging over the second half of the iterates.
LinearModel hinge_descent(const std::vector<Example>& train, double w_pos,
                          double w_neg, double lambda, int iters,
                          const char* what) {
  if (train.empty()) throw InvalidInput(std::string(what) + ": empty sample");
  if (!(lambda > 0.0)) throw InvalidInput(std::string(what) + ": lambda must be positive");
  const std::size_t d = train.front().x.size();
  const double n = static_cast<double>(train.size());
  const double radius = 1.0 / std::sqrt(lambda);

  LinearModel theta;
  theta.theta.assign(d, 0.0);
  std::vector<double> avg(d, 0.0);
  const int tail_start = iters / 2;
  int averaged = 0;

  std::vector<double> grad(d);
  for (int t = 1; t <= iters; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& ex : train) {
      if (ex.y * predict(theta, ex.x) < 1.0) {
        const double w = ex.y > 0 ? w_pos : w_neg;
        for (std::size_t j = 0; j < d; ++j) grad[j] -= w * ex.y * ex.x[j] / n;
      }
    }
    const double step = 1.0 / (lambda * t);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      theta.theta[j] -= step * (2.0 * lambda * theta.theta[j] + grad[j]);
      norm2 += theta.theta[j] * theta.theta[j];
    }
    if (norm2 > radius * radius) {
      const double scale = radius / std::sqrt(norm2);
      for (auto& v : theta.theta) v *= scale;
    }
    if (t > tail_start) {
      for (std::size_t j = 0; j < d; ++j) avg[j] += theta.theta[j];
      ++averaged;
    }
  }
  for (std::size_t j = 0; j < d; ++j) theta.theta[j] = avg[j] / averaged;
  return theta;
}

}  // namespace

LinearModel weighted_hinge(const std::vector<Example>& train, double cost,
                           double lambda, int iters) {
  if (!(cost > 0.0 && cost < 1.0)) throw InvalidInput("weighted_hinge: cost must lie in (0, 1)");
  return hinge_descent(train, cost, 1.0 - cost, lambda, iters, "weighted_hinge");
}

LinearModel erm_hinge(const std::vector<Example>& train, double lambda, int iters) {
  return hinge_descent(train, 1.0, 1.0, lambda, iters, "erm_hinge");
}

LinearModel weighted_erm(const std::vector<Example>& train, const MetricSpec& spec,
                         const BaselineConfig& cfg) {
  check_two_classes(train, "weighted_erm");
  if (train.size() < 5) throw InvalidInput("weighted_erm: sample too small");

  const auto [inner, outer_val] = split_examples(train, 0.8, cfg.seed);
  const auto [fit_part, inner_val] = split_examples(inner, 0.9, cfg.seed + 1);
  if (fit_part.empty() || inner_val.empty() || outer_val.empty()) {
    throw InvalidInput("weighted_erm: sample too small for nested splits");
  }

  LinearModel best_model;
  double best_outer = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (double cost : grid_20()) {
    // lambda for this cost comes from the inner 9:1 split.
    LinearModel cand;
    double best_inner = -std::numeric_limits<double>::infinity();
    bool inner_any = false;
    for (double lambda : cfg.l2_lambda_grid) {
      LinearModel m = weighted_hinge(fit_part, cost, lambda, cfg.erm_iters);
      const double u = validation_utility(spec, inner_val, [&](const Example& ex) {
        return predict(m, ex.x);
      });
      if (std::isfinite(u) && (!inner_any || u > best_inner)) {
        inner_any = true;
        best_inner = u;
        cand = std::move(m);
      }
    }
    if (!inner_any) continue;
    const double u = validation_utility(spec, outer_val, [&](const Example& ex) {
      return predict(cand, ex.x);
    });
    if (std::isfinite(u) && (!any || u > best_outer)) {
      any = true;
      best_outer = u;
      best_model = std::move(cand);
    }
  }
  if (!any) {
    // Every candidate was degenerate on validation; fall back to plain ERM.
    return erm_hinge(train, cfg.erm_lambda, cfg.erm_iters);
  }
  return best_model;
}

LinearModel logistic_regression(const std::vector<Example>& train, double lambda,
                                int iters, double grad_tol) {
  if (train.empty()) throw InvalidInput("logistic_regression: empty sample");
  const std::size_t d = train.front().x.size();
  const double n = static_cast<double>(train.size());

  // Gradient Lipschitz bound for the step size.
  double max_sq = 0.0;
  for (const auto& ex : train) {
    double s = 0.0;
    for (double v : ex.x) s += v * v;
    max_sq = std::max(max_sq, s);
  }
  const double step = 1.0 / (0.25 * max_sq + 2.0 * lambda + 1e-12);

  LinearModel theta;
  theta.theta.assign(d, 0.0);
  std::vector<double> grad(d);
  for (int t = 0; t < iters; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& ex : train) {
      const double p = sigmoid(ex.y * predict(theta, ex.x));
      const double c = -(1.0 - p) * ex.y / n;
      for (std::size_t j = 0; j < d; ++j) grad[j] += c * ex.x[j];
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] += 2.0 * lambda * theta.theta[j];
      norm += grad[j] * grad[j];
    }
    if (std::sqrt(norm) <= grad_tol) break;
    for (std::size_t j = 0; j < d; ++j) theta.theta[j] -= step * grad[j];
  }
  return theta;
}

double PluginClassifier::eta(std::span<const double> x) const {
  return sigmoid(predict(eta_model, x));
}

PluginClassifier plugin(const std::vector<Example>& train, const MetricSpec& spec,
                        const BaselineConfig& cfg) {
  check_two_classes(train, "plugin");
  if (train.size() < 5) throw InvalidInput("plugin: sample too small");

  const auto [inner, outer_val] = split_examples(train, 0.8, cfg.seed);
  const auto [fit_part, thresh_part] = split_examples(inner, 0.9, cfg.seed + 1);
  if (fit_part.empty() || thresh_part.empty() || outer_val.empty()) {
    throw InvalidInput("plugin: sample too small for nested splits");
  }

  // The outer validation split picks the regularization strength of the
  // posterior fit; the inner held-out portion picks the threshold.
  PluginClassifier best;
  double best_outer = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (double lambda : cfg.l2_lambda_grid) {
    PluginClassifier cand;
    cand.eta_model = logistic_regression(fit_part, lambda, cfg.logreg_iters,
                                         cfg.logreg_grad_tol);
    double best_thresh_u = -std::numeric_limits<double>::infinity();
    bool thresh_any = false;
    for (double delta : grid_20()) {
      const double u = validation_utility(spec, thresh_part, [&](const Example& ex) {
        return cand.eta(ex.x) - delta;
      });
      if (std::isfinite(u) && (!thresh_any || u > best_thresh_u)) {
        thresh_any = true;
        best_thresh_u = u;
        cand.threshold = delta;
      }
    }
    if (!thresh_any) cand.threshold = 0.5;
    const double u = validation_utility(spec, outer_val, [&](const Example& ex) {
      return cand.score(ex.x);
    });
    if (std::isfinite(u) && (!any || u > best_outer)) {
      any = true;
      best_outer = u;
      best = std::move(cand);
    }
  }
  if (!any) {
    best.eta_model = logistic_regression(fit_part, cfg.l2_lambda_grid.front(),
                                         cfg.logreg_iters, cfg.logreg_grad_tol);
    best.threshold = 0.5;
  }
  return best;
}

}  // namespace lfopt
