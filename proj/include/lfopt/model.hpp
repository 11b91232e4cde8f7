#ifndef LFOPT_MODEL_HPP_
#define LFOPT_MODEL_HPP_

#include <span>
#include <vector>

namespace lfopt {

// Linear-in-input classifier f(x) = <theta, x>. No implicit intercept;
// callers append a constant feature if they want one.
struct LinearModel {
  std::vector<double> theta;

  std::size_t dim() const { return theta.size(); }
};

// Inner product <theta, x>. Throws InvalidInput on dimension mismatch.
double predict(const LinearModel& model, std::span<const double> x);

}  // namespace lfopt

#endif  // LFOPT_MODEL_HPP_
