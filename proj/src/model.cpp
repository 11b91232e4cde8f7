#include "lfopt/model.hpp"

#include "lfopt/errors.hpp"

namespace lfopt {

double predict(const LinearModel& model, std::span<const double> x) {
  if (model.theta.size() != x.size()) {
    throw InvalidInput("predict: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += model.theta[i] * x[i];
  return s;
}

}  // namespace lfopt
