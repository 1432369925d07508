#pragma once

#include "qmaxent/model.hpp"
#include "qmaxent/state.hpp"

namespace qmaxent {

/// Components p_n^{1/2} of the q = 1/2 distribution. They sum to one and may
/// be negative.
class HalfDistribution {
 public:
  explicit HalfDistribution(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {}

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Index size() const noexcept { return static_cast<Index>(amplitudes_.size()); }
  double sum() const;
  /// p_n = (p_n^{1/2})^2.
  Vector probabilities() const;

 private:
  Vector amplitudes_;
};

/// p^{1/2}_n = (1/N)(1 - sum_j g_{l_j} lambda_j) + sum_j f_{l_j,n} lambda_j.
HalfDistribution assemble(const Problem& problem, const BiorthState& state);

/// Non-extensive entropy at q = 1/2: 2 (1 - sum_n p_n).
double entropy_half(const HalfDistribution& dist);

Vector predict(const ConstraintSystem& sys, const HalfDistribution& dist);

/// ||f^p - f^o||^2_mu for the distribution assembled from `state`.
double residual2(const Problem& problem, const BiorthState& state);

}  // namespace qmaxent
