#include "lfopt/calibration.hpp"

#include <cmath>
#include <limits>

#include "lfopt/errors.hpp"

namespace lfopt {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Verdict overall_of(const std::vector<ConditionResult>& conditions) {
  for (const auto& c : conditions) {
    if (c.verdict == Verdict::Violated) return Verdict::Violated;
  }
  return Verdict::Satisfied;
}

ConditionResult boolean_condition(std::string name, bool ok, double value) {
  return {std::move(name), ok ? Verdict::Satisfied : Verdict::Violated, value};
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Unverifiable: return "unverifiable";
  }
  return "unknown";
}

TauRange tau_range_fbeta(double beta) {
  if (!(beta > 0.0)) throw InvalidInput("tau_range_fbeta: beta must be positive");
  const double b2 = beta * beta;
  return TauRange{0.0, b2 / (2.0 + b2), /*hi_open=*/false};
}

TauRange tau_range_jaccard() { return TauRange{0.0, 1.0, /*hi_open=*/true}; }

CalibrationReport check_general(const MetricSpec& spec, double tau,
                                std::optional<double> u_phi_star,
                                std::optional<double> u_fstar) {
  CalibrationReport report;
  report.metric = spec.kind;
  report.tau = tau;
  auto& c = report.conditions;

  const double da0 = spec.delta_a0();
  const double da1 = spec.delta_a1();
  c.push_back(boolean_condition("cond1_delta_a0_positive", da0 > 0.0, da0));
  c.push_back(boolean_condition("cond2_delta_a1_nonpositive", da1 <= 0.0, da1));
  c.push_back(boolean_condition("cond3_negative_side_coefficient",
                                spec.a0_neg != 0.0 || spec.a1_neg != 0.0,
                                std::abs(spec.a0_neg) + std::abs(spec.a1_neg)));
  c.push_back(boolean_condition("cond4_coefficient_sum_nonzero",
                                spec.a1_neg + spec.a0_neg != 0.0,
                                spec.a1_neg + spec.a0_neg));
  const double cross = spec.a0_pos * spec.a1_neg + spec.a0_neg * spec.a1_pos;
  c.push_back(boolean_condition("cond5_cross_term_positive", cross > 0.0, cross));

  // (6) only binds when a1_neg > 0 and needs the true utility of the
  // surrogate optimum.
  if (spec.a1_neg > 0.0) {
    if (u_fstar.has_value()) {
      const double bound = -spec.a0_neg / spec.a1_neg;
      c.push_back(boolean_condition("cond6_true_utility_floor", *u_fstar > bound,
                                    *u_fstar - bound));
    } else {
      c.push_back({"cond6_true_utility_floor", Verdict::Unverifiable, kNan});
    }
  } else {
    c.push_back({"cond6_true_utility_floor", Verdict::Satisfied, 0.0});
  }

  c.push_back(boolean_condition("condA_tau_discrepant", tau > 0.0 && tau < 1.0, tau));

  // (b): tau <= (a0+ - a1+)/(a1- + a0-) * (-a0- + a1- U*) / (a0+ + a1+ U*).
  if (u_phi_star.has_value()) {
    const double s = spec.a1_neg + spec.a0_neg;
    const double q = spec.a0_pos + spec.a1_pos * *u_phi_star;
    if (s == 0.0 || q == 0.0) {
      c.push_back({"condB_tau_vs_surrogate_optimum", Verdict::Unverifiable, kNan});
    } else {
      const double rhs =
          (spec.a0_pos - spec.a1_pos) / s * (-spec.a0_neg + spec.a1_neg * *u_phi_star) / q;
      c.push_back(boolean_condition("condB_tau_vs_surrogate_optimum", tau <= rhs, rhs));
    }
  } else {
    c.push_back({"condB_tau_vs_surrogate_optimum", Verdict::Unverifiable, kNan});
  }

  // (c): tau <= (a0- - a1- U(f*)) / (a1+ U(f*) - a0+) * (a0+ + a1+ U*) / (-a0- + a1- U*).
  if (u_phi_star.has_value() && u_fstar.has_value()) {
    const double d1 = spec.a1_pos * *u_fstar - spec.a0_pos;
    const double d2 = -spec.a0_neg + spec.a1_neg * *u_phi_star;
    if (d1 == 0.0 || d2 == 0.0) {
      c.push_back({"condC_tau_vs_true_optimum", Verdict::Unverifiable, kNan});
    } else {
      const double rhs = (spec.a0_neg - spec.a1_neg * *u_fstar) / d1 *
                         (spec.a0_pos + spec.a1_pos * *u_phi_star) / d2;
      c.push_back(boolean_condition("condC_tau_vs_true_optimum", tau <= rhs, rhs));
    }
  } else {
    c.push_back({"condC_tau_vs_true_optimum", Verdict::Unverifiable, kNan});
  }

  report.overall = overall_of(c);
  return report;
}

CalibrationReport check_accuracy(const std::function<double(double)>& loss) {
  CalibrationReport report;
  report.metric = MetricKind::accuracy();
  report.tau = kNan;
  auto& c = report.conditions;

  // Midpoint convexity over a grid on [-8, 8].
  bool convex = true;
  double worst_gap = 0.0;
  constexpr int kGrid = 81;
  for (int i = 0; i < kGrid && convex; ++i) {
    const double t1 = -8.0 + 16.0 * i / (kGrid - 1);
    for (int j = i + 1; j < kGrid; ++j) {
      const double t2 = -8.0 + 16.0 * j / (kGrid - 1);
      const double gap = loss(0.5 * (t1 + t2)) - 0.5 * (loss(t1) + loss(t2));
      worst_gap = std::max(worst_gap, gap);
      if (gap > 1e-12) {
        convex = false;
        break;
      }
    }
  }
  c.push_back(boolean_condition("convex_on_grid", convex, worst_gap));

  const double h = 1e-6;
  const double left = (loss(0.0) - loss(-h)) / h;
  const double right = (loss(h) - loss(0.0)) / h;
  c.push_back(boolean_condition("left_derivative_negative", left < -1e-9, left));
  c.push_back(boolean_condition("right_derivative_negative", right < -1e-9, right));

  report.overall = overall_of(c);
  return report;
}

}  // namespace lfopt
