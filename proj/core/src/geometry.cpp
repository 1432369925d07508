#include "qmaxent/geometry.hpp"

#include <cmath>
#include <string>

#include "qmaxent/errors.hpp"

namespace qmaxent {

Measure::Measure(Vector weights) : weights_(std::move(weights)) {
  if (weights_.size() == 0) throw UsageError("measure must have at least one weight");
  bool any_positive = false;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw UsageError("measure weight " + std::to_string(i + 1) + " is negative or not finite");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw UsageError("measure has no positive weight");
}

Measure Measure::uniform(Index size) {
  return Measure(Vector::Ones(static_cast<Eigen::Index>(size)));
}

Measure Measure::inverse_variance(const VectorView& sigma) {
  Vector w(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double s = sigma[i];
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw UsageError("sigma " + std::to_string(i + 1) + " must be positive and finite");
    }
    w[i] = 1.0 / (s * s);
  }
  return Measure(std::move(w));
}

namespace {

void check_sizes(Eigen::Index a, Eigen::Index b, const Measure& mu) {
  if (a != b || static_cast<Index>(a) != mu.size()) {
    throw DimensionError("vector lengths " + std::to_string(a) + ", " + std::to_string(b) +
                         " do not match measure length " + std::to_string(mu.size()));
  }
}

}  // namespace

double weighted_inner(const VectorView& f, const VectorView& g, const Measure& mu) {
  check_sizes(f.size(), g.size(), mu);
  const Vector& w = mu.weights();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) sum += f[i] * g[i] * w[i];
  return sum;
}

double weighted_norm2(const VectorView& f, const Measure& mu) {
  check_sizes(f.size(), f.size(), mu);
  const Vector& w = mu.weights();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) sum += f[i] * f[i] * w[i];
  return sum;
}

double weighted_dist2(const VectorView& f, const VectorView& g, const Measure& mu) {
  check_sizes(f.size(), g.size(), mu);
  const Vector& w = mu.weights();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double d = f[i] - g[i];
    sum += d * d * w[i];
  }
  return sum;
}

}  // namespace qmaxent
