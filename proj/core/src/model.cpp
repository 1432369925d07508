#include "qmaxent/model.hpp"

#include <cmath>
#include <string>

#include "qmaxent/errors.hpp"

namespace qmaxent {

ConstraintSystem::ConstraintSystem(Matrix kernel, Vector observed, Measure measure,
                                   std::optional<Vector> sigma)
    : kernel_(std::move(kernel)),
      observed_(std::move(observed)),
      measure_(std::move(measure)),
      sigma_(std::move(sigma)) {
  if (kernel_.rows() == 0 || kernel_.cols() == 0) {
    throw DimensionError("kernel must have at least one row and one column");
  }
  const auto m = kernel_.rows();
  if (observed_.size() != m || static_cast<Eigen::Index>(measure_.size()) != m) {
    throw DimensionError("kernel has " + std::to_string(m) + " rows but data has " +
                         std::to_string(observed_.size()) + " entries and measure " +
                         std::to_string(measure_.size()));
  }
  if (sigma_) {
    if (sigma_->size() != m) throw DimensionError("sigma length does not match kernel rows");
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!((*sigma_)[i] > 0.0) || !std::isfinite((*sigma_)[i])) {
        throw UsageError("sigma " + std::to_string(i + 1) + " must be positive");
      }
    }
  }
}

ConstraintSystem ConstraintSystem::with_measure(Measure measure) const {
  return ConstraintSystem(kernel_, observed_, std::move(measure), sigma_);
}

DerivedData derive(const ConstraintSystem& sys) {
  DerivedData d;
  d.g = sys.kernel().rowwise().sum();
  d.ftilde = sys.observed() - d.g / static_cast<double>(sys.columns());
  return d;
}

Vector alpha(const ConstraintSystem& sys, const DerivedData& derived, Index l) {
  if (l >= sys.rows()) {
    throw UsageError("constraint index " + std::to_string(l + 1) + " out of range 1.." +
                     std::to_string(sys.rows()));
  }
  const auto row = static_cast<Eigen::Index>(l);
  const Matrix& k = sys.kernel();
  Vector a = k * k.row(row).transpose();
  a -= derived.g * (derived.g[row] / static_cast<double>(sys.columns()));
  return a;
}

Vector predict(const ConstraintSystem& sys, const VectorView& phalf) {
  if (static_cast<Index>(phalf.size()) != sys.columns()) {
    throw DimensionError("distribution has " + std::to_string(phalf.size()) +
                         " components, kernel has " + std::to_string(sys.columns()) + " columns");
  }
  return sys.kernel() * phalf;
}

Problem::Problem(ConstraintSystem sys)
    : sys_(std::move(sys)),
      derived_(derive(sys_)),
      cache_(std::make_unique<Slot[]>(sys_.rows())) {}

const Problem::Slot& Problem::slot(Index l) const {
  if (l >= rows()) {
    throw UsageError("constraint index " + std::to_string(l + 1) + " out of range 1.." +
                     std::to_string(rows()));
  }
  Slot& s = cache_[l];
  std::call_once(s.once, [&] {
    s.alpha = qmaxent::alpha(sys_, derived_, l);
    s.norm2 = weighted_norm2(s.alpha, sys_.measure());
  });
  return s;
}

const Vector& Problem::alpha(Index l) const { return slot(l).alpha; }

double Problem::alpha_norm2(Index l) const { return slot(l).norm2; }

MeasureMode default_measure_mode(const Dataset& data) {
  return data.sigma ? MeasureMode::inverse_variance : MeasureMode::uniform;
}

ConstraintSystem make_system(const Dataset& data, MeasureMode mode) {
  const auto rows = static_cast<Index>(data.kernel.rows());
  Measure mu = Measure::uniform(rows);
  if (mode == MeasureMode::inverse_variance) {
    if (!data.sigma) throw UsageError("inverse-variance measure requires sigma in the dataset");
    mu = Measure::inverse_variance(*data.sigma);
  }
  return ConstraintSystem(data.kernel, data.f_obs, std::move(mu), data.sigma);
}

}  // namespace qmaxent
