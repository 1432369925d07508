#include "qmaxent/distribution.hpp"

namespace qmaxent {

double HalfDistribution::sum() const {
  // Compensated sum; the components can be large with mixed signs.
  double s = 0.0;
  double carry = 0.0;
  for (Eigen::Index n = 0; n < amplitudes_.size(); ++n) {
    const double y = amplitudes_[n] - carry;
    const double t = s + y;
    carry = (t - s) - y;
    s = t;
  }
  return s;
}

Vector HalfDistribution::probabilities() const { return amplitudes_.array().square().matrix(); }

HalfDistribution assemble(const Problem& problem, const BiorthState& state) {
  const ConstraintSystem& sys = problem.system();
  const auto n_cols = static_cast<Eigen::Index>(sys.columns());
  Vector shaped = Vector::Zero(n_cols);
  for (Index j = 0; j < state.size(); ++j) {
    shaped += state.lambdas[j] * sys.kernel().row(static_cast<Eigen::Index>(state.selected[j])).transpose();
  }
  // The row sums of the selected kernel rows are the g_{l_j}; taking them
  // from `shaped` itself keeps the normalisation exact to rounding.
  const HalfDistribution partial(shaped);
  const double uniform = (1.0 - partial.sum()) / static_cast<double>(n_cols);
  Vector amplitudes = shaped.array() + uniform;
  return HalfDistribution(std::move(amplitudes));
}

double entropy_half(const HalfDistribution& dist) {
  return 2.0 * (1.0 - dist.amplitudes().squaredNorm());
}

Vector predict(const ConstraintSystem& sys, const HalfDistribution& dist) {
  return predict(sys, dist.amplitudes());
}

double residual2(const Problem& problem, const BiorthState& state) {
  const ConstraintSystem& sys = problem.system();
  return weighted_dist2(predict(sys, assemble(problem, state)), sys.observed(), sys.measure());
}

}  // namespace qmaxent
