#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "qmaxent/errors.hpp"
#include "qmaxent/model.hpp"
#include "qmaxent/oracle.hpp"

namespace qmaxent::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector random_vector(std::mt19937_64& rng, Index size, double lo = -1.0, double hi = 1.0) {
  Vector v(static_cast<Eigen::Index>(size));
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline Matrix random_kernel(std::mt19937_64& rng, Index rows, Index cols) {
  Matrix k(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    for (Eigen::Index c = 0; c < k.cols(); ++c) k(r, c) = uniform(rng, -1.0, 1.0);
  }
  return k;
}

/// Random kernel, data and (optionally) non-uniform measure.
inline Problem random_problem(std::mt19937_64& rng, Index rows, Index cols, bool weighted = true) {
  Vector w = weighted ? random_vector(rng, rows, 0.5, 2.0) : Vector::Ones(static_cast<Eigen::Index>(rows));
  return Problem(ConstraintSystem(random_kernel(rng, rows, cols), random_vector(rng, rows),
                                  Measure(std::move(w))));
}

/// k distinct indices whose alpha Gram matrix has condition below
/// max_condition. Empty if none found after a bounded number of draws.
inline std::vector<Index> well_conditioned_indices(std::mt19937_64& rng, const Problem& problem,
                                                   Index k, double max_condition = 1e6) {
  std::vector<Index> all(problem.rows());
  std::iota(all.begin(), all.end(), Index{0});
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Index> pick(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    try {
      if (oracle::solve_normal(problem, pick).condition < max_condition) return pick;
    } catch (const ConditionError&) {
    }
  }
  return {};
}

inline double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// max_i |a_i - b_i| / max_i |b_i|.
inline double relative_error(const Vector& a, const Vector& b) {
  const double scale = max_abs(b);
  return scale == 0.0 ? max_abs(a - b) : max_abs(a - b) / scale;
}

inline Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace qmaxent::testing
