#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "qmaxent/geometry.hpp"

namespace qmaxent {

enum class MeasureMode { uniform, inverse_variance };

/// Kernel f_{i,n} (M x N, row i = constraint i), observed data f^o, the
/// measure and optionally the per-datum standard deviations.
class ConstraintSystem {
 public:
  ConstraintSystem(Matrix kernel, Vector observed, Measure measure,
                   std::optional<Vector> sigma = std::nullopt);

  Index rows() const noexcept { return static_cast<Index>(kernel_.rows()); }
  Index columns() const noexcept { return static_cast<Index>(kernel_.cols()); }

  const Matrix& kernel() const noexcept { return kernel_; }
  const Vector& observed() const noexcept { return observed_; }
  const Measure& measure() const noexcept { return measure_; }
  const std::optional<Vector>& sigma() const noexcept { return sigma_; }

  ConstraintSystem with_measure(Measure measure) const;

 private:
  Matrix kernel_;
  Vector observed_;
  Measure measure_;
  std::optional<Vector> sigma_;
};

/// g_i = sum_n f_{i,n} and the centred data f~ = f^o - g/N.
struct DerivedData {
  Vector g;
  Vector ftilde;
};

DerivedData derive(const ConstraintSystem& sys);

/// Data-space image of constraint l with the uniform direction removed:
/// component i is sum_n f_{i,n} f_{l,n} - g_i g_l / N. Independent of the
/// measure. Throws UsageError if l is out of range.
Vector alpha(const ConstraintSystem& sys, const DerivedData& derived, Index l);

/// f^p_i = sum_n f_{i,n} phalf_n.
Vector predict(const ConstraintSystem& sys, const VectorView& phalf);

/// A constraint system together with its derived data and a lazily filled
/// cache of alpha vectors. Cache fills are thread-safe and happen once per
/// index.
class Problem {
 public:
  explicit Problem(ConstraintSystem sys);

  Problem(Problem&&) noexcept = default;
  Problem& operator=(Problem&&) noexcept = default;

  const ConstraintSystem& system() const noexcept { return sys_; }
  const DerivedData& derived() const noexcept { return derived_; }
  const Measure& measure() const noexcept { return sys_.measure(); }
  Index rows() const noexcept { return sys_.rows(); }
  Index columns() const noexcept { return sys_.columns(); }

  const Vector& alpha(Index l) const;
  /// ||alpha_l||^2 under the problem's measure.
  double alpha_norm2(Index l) const;

 private:
  struct Slot {
    std::once_flag once;
    Vector alpha;
    double norm2 = 0.0;
  };
  const Slot& slot(Index l) const;

  ConstraintSystem sys_;
  DerivedData derived_;
  std::unique_ptr<Slot[]> cache_;
};

/// In-memory form of the dataset file.
struct Dataset {
  Matrix kernel;
  /// Name of the analytic family the kernel was generated from, if any.
  /// When set, the file stores the generator instead of the matrix.
  std::optional<std::string> kernel_family;
  Vector f_obs;
  std::optional<Vector> sigma;
  std::optional<Vector> f_true;
  std::optional<Vector> p_true;
  std::optional<std::uint64_t> seed;
};

/// inverse_variance when sigma is present, uniform otherwise.
MeasureMode default_measure_mode(const Dataset& data);

/// Throws UsageError if inverse_variance is requested without sigma.
ConstraintSystem make_system(const Dataset& data, MeasureMode mode);

}  // namespace qmaxent
