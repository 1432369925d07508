#pragma once

#include <vector>

#include "qmaxent/model.hpp"

namespace qmaxent {

inline constexpr double kDefaultPreselectThreshold = 1e-10;

enum class PreselectStatus { ok, all_alpha_zero };

struct PreselectReport {
  std::vector<Index> pool;
  /// r value of each pool entry at the step it was chosen.
  std::vector<double> ratios;
  double threshold = kDefaultPreselectThreshold;
  PreselectStatus status = PreselectStatus::ok;
};

/// Data-independent redundancy filter. At each step picks the constraint
/// maximising r_n = ||psi_n||^2 / ||alpha_n||^2 against the span of those
/// already chosen; stops once the best r_n falls below `threshold`.
/// Throws UsageError unless threshold is in (0, 1].
PreselectReport preselect(const Problem& problem, double threshold = kDefaultPreselectThreshold);

}  // namespace qmaxent
