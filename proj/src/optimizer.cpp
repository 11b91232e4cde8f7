#include "lfopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfopt/errors.hpp"
#include "lfopt/rng.hpp"

namespace lfopt {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double sample_prior(const std::vector<Example>& sample) {
  std::size_t pos = 0;
  for (const auto& ex : sample) pos += ex.y > 0;
  return static_cast<double>(pos) / static_cast<double>(sample.size());
}

MetricSpec respec(const MetricSpec& spec, double pi) {
  if (spec.kind.family == MetricKind::Family::Custom || !(pi > 0.0 && pi < 1.0)) {
    return spec;
  }
  return spec_for(spec.kind, pi);
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw InvalidInput("OptimizerConfig: learning_rate must be positive");
  if (max_phase1_iters < 0 || max_phase2_iters <= 0) {
    throw InvalidInput("OptimizerConfig: iteration caps must be positive");
  }
}

LinearModel nga_step(const LinearModel& theta, const GradientDirection& v_hat,
                     double gamma) {
  const double norm = norm2(v_hat.v);
  if (norm == 0.0) throw InvalidInput("nga_step: zero direction");
  LinearModel next = theta;
  for (std::size_t j = 0; j < next.theta.size(); ++j) {
    next.theta[j] += gamma * v_hat.v[j] / norm;
  }
  return next;
}

void BfgsState::reset(std::size_t d) {
  h.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) h[i * d + i] = 1.0;
  skip_count = 0;
}

std::vector<double> bfgs_direction(const BfgsState& state, const std::vector<double>& v) {
  const std::size_t d = v.size();
  if (state.h.size() != d * d) return v;  // identity preconditioner
  std::vector<double> p(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) p[i] += state.h[i * d + j] * v[j];
  }
  return p;
}

LinearModel normalized_bfgs_step(BfgsState& state, const LinearModel& theta,
                                 const GradientDirection& v_hat, double gamma) {
  const std::size_t d = theta.dim();
  if (state.h.size() != d * d) state.reset(d);

  if (state.has_prev) {
    std::vector<double> s(d), y(d);
    for (std::size_t j = 0; j < d; ++j) {
      s[j] = theta.theta[j] - state.prev_theta[j];
      // Minimization frame of the negated objective: y = -(v - v_prev).
      y[j] = state.prev_v[j] - v_hat.v[j];
    }
    double sy = 0.0;
    for (std::size_t j = 0; j < d; ++j) sy += s[j] * y[j];
    if (sy > 1e-12) {
      // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy
      std::vector<double> hy(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) hy[i] += state.h[i * d + j] * y[j];
      }
      double yhy = 0.0;
      for (std::size_t j = 0; j < d; ++j) yhy += y[j] * hy[j];
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          state.h[i * d + j] +=
              -(s[i] * hy[j] + hy[i] * s[j]) / sy + (1.0 + yhy / sy) * s[i] * s[j] / sy;
        }
      }
      state.skip_count = 0;
    } else {
      ++state.skip_count;
      if (state.skip_count >= static_cast<int>(d)) state.reset(d);
    }
  }

  std::vector<double> p = bfgs_direction(state, v_hat.v);
  if (!all_finite(p) || norm2(p) == 0.0) {
    state.reset(d);
    p = v_hat.v;
  }
  const double norm = norm2(p);
  if (norm == 0.0) throw InvalidInput("normalized_bfgs_step: zero direction");

  LinearModel next = theta;
  for (std::size_t j = 0; j < d; ++j) next.theta[j] += gamma * p[j] / norm;

  state.prev_theta = theta.theta;
  state.prev_v = v_hat.v;
  state.has_prev = true;
  return next;
}

TrainResult hybrid_train(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                         const SplitSample& split, const OptimizerConfig& cfg,
                         LinearModel init, const ModelEvaluator& eval) {
  cfg.validate();
  split.validate();

  TrainResult result;
  LinearModel theta = std::move(init);
  const std::size_t d = theta.dim();

  double best_utility = -std::numeric_limits<double>::infinity();
  bool have_best = false;

  auto utility_of = [&](const SurrogateParts& parts) {
    return parts.den == 0.0 ? kNan : parts.num / parts.den;
  };
  auto record = [&](int iteration, const SurrogateParts& parts) {
    const double u = utility_of(parts);
    result.trajectory.push_back(
        {iteration, parts.num, u, eval ? eval(theta) : kNan});
    if (std::isfinite(u) && (!have_best || u > best_utility)) {
      best_utility = u;
      have_best = true;
      result.theta = theta;
    }
  };

  SurrogateParts parts = surrogate_parts(spec, loss, theta, split);
  int iteration = 0;
  record(iteration, parts);

  // Phase 1: plain (unnormalized) ascent on the concave numerator.
  while (parts.num <= 0.0 && result.phase1_iters < cfg.max_phase1_iters) {
    if (norm2(parts.num_grad) < cfg.stationary_tol) break;
    for (std::size_t j = 0; j < d; ++j) {
      theta.theta[j] += cfg.learning_rate * parts.num_grad[j];
    }
    ++result.phase1_iters;
    parts = surrogate_parts(spec, loss, theta, split);
    record(++iteration, parts);
  }
  result.phase1_incomplete = parts.num <= 0.0;

  // Phase 2: normalized ascent on the fractional objective.
  BfgsState bfgs;
  double phase2_best = utility_of(parts);
  int stall = 0;
  result.termination_reason = "max_iters";
  while (result.phase2_iters < cfg.max_phase2_iters) {
    GradientDirection dir;
    dir.v.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      dir.v[j] = parts.den * parts.num_grad[j] - parts.num * parts.den_grad[j];
    }
    if (norm2(dir.v) < cfg.stationary_tol) {
      result.termination_reason = "stationary";
      break;
    }
    theta = cfg.phase2_method == Phase2Method::Nga
                ? nga_step(theta, dir, cfg.learning_rate)
                : normalized_bfgs_step(bfgs, theta, dir, cfg.learning_rate);
    ++result.phase2_iters;
    parts = surrogate_parts(spec, loss, theta, split);
    record(++iteration, parts);

    const double u = utility_of(parts);
    if (std::isfinite(u) && (!std::isfinite(phase2_best) || u > phase2_best + cfg.improvement_tol)) {
      phase2_best = u;
      stall = 0;
    } else {
      ++stall;
      if (stall >= cfg.patience) {
        result.termination_reason = "no_improvement";
        break;
      }
    }
  }

  if (!have_best) result.theta = theta;  // surrogate never evaluable; keep last
  return result;
}

double evaluate_utility(const MetricSpec& spec, const ConfusionMatrix& cm) {
  if (spec.kind.family == MetricKind::Family::Custom) return true_utility(spec, cm);
  return metric_direct(spec.kind, cm);
}

LrSelection select_learning_rate(const MetricSpec& spec, const TauDiscrepantLoss& loss,
                                 const std::vector<Example>& train,
                                 const std::vector<double>& grid,
                                 const OptimizerConfig& cfg,
                                 const InitFactory& init_factory) {
  if (grid.empty()) throw InvalidInput("select_learning_rate: empty grid");
  if (train.size() < 4) throw InvalidInput("select_learning_rate: sample too small");

  const auto idx = shuffled_indices(train.size(), cfg.seed);
  const std::size_t cut =
      static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(train.size()) + 0.5));
  std::vector<Example> subtrain, val;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    (i < cut ? subtrain : val).push_back(train[idx[i]]);
  }

  const MetricSpec inner_spec = respec(spec, sample_prior(subtrain));
  const SplitSample split = make_split(subtrain, cfg.seed + 1);
  const LinearModel init = init_factory(subtrain);

  std::vector<int> labels;
  labels.reserve(val.size());
  for (const auto& ex : val) labels.push_back(ex.y);

  double best_gamma = *std::min_element(grid.begin(), grid.end());
  double best_u = -std::numeric_limits<double>::infinity();
  bool any_valid = false;
  for (double gamma : grid) {
    OptimizerConfig run_cfg = cfg;
    run_cfg.learning_rate = gamma;
    const TrainResult fit = hybrid_train(inner_spec, loss, split, run_cfg, init);
    double u = kNan;
    try {
      std::vector<double> scores;
      scores.reserve(val.size());
      for (const auto& ex : val) scores.push_back(predict(fit.theta, ex.x));
      u = evaluate_utility(spec, confusion_from_sample(labels, scores));
    } catch (const DegenerateMetric&) {
      u = kNan;
    }
    if (!std::isfinite(u)) continue;
    if (!any_valid || u > best_u || (u == best_u && gamma < best_gamma)) {
      any_valid = true;
      best_u = u;
      best_gamma = gamma;
    }
  }
  return LrSelection{best_gamma, !any_valid};
}

}  // namespace lfopt
