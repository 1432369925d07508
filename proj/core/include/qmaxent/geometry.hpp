#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace qmaxent {

using Index = std::size_t;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorView = Eigen::Ref<const Vector>;

/// Non-negative per-datum weights mu_i defining the inner product of the
/// data space. A zero weight removes the coordinate from every inner product.
class Measure {
 public:
  /// Throws UsageError on negative or non-finite weights, or if every weight
  /// is zero.
  explicit Measure(Vector weights);

  static Measure uniform(Index size);

  /// mu_i = sigma_i^-2; every sigma_i must be positive and finite.
  static Measure inverse_variance(const VectorView& sigma);

  Index size() const noexcept { return static_cast<Index>(weights_.size()); }
  const Vector& weights() const noexcept { return weights_; }
  double operator[](Index i) const { return weights_[static_cast<Eigen::Index>(i)]; }

 private:
  Vector weights_;
};

/// sum_i f_i g_i mu_i, accumulated left to right.
double weighted_inner(const VectorView& f, const VectorView& g, const Measure& mu);

double weighted_norm2(const VectorView& f, const Measure& mu);

/// Squared weighted distance ||f - g||^2_mu.
double weighted_dist2(const VectorView& f, const VectorView& g, const Measure& mu);

}  // namespace qmaxent
