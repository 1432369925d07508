#pragma once

#include <vector>

#include "qmaxent/forward.hpp"

namespace qmaxent {

/// lambda_j^2 / ||dual_j||^2 for each selected position j. Removing the
/// argmin loses the least projected energy.
std::vector<double> removal_scores(const BiorthState& state, const Problem& problem);

/// ||P_k f~||^2 - ||P_{k/j} f~||^2, equal to the removal score of j.
double energy_drop(const BiorthState& state, const Problem& problem, Index position);

/// Drops the constraint at `position` (0-based) and updates the surviving
/// duals and multipliers so they represent the projector onto the reduced
/// span. Throws UsageError if position is out of range.
BiorthState remove(BiorthState state, const Problem& problem, Index position);

struct PruneResult {
  BiorthState state;
  double residual2 = 0.0;
  /// Constraint indices in the order they were removed.
  std::vector<Index> removed;
  std::vector<double> residual_history;
};

/// Repeatedly removes the lowest-scoring multiplier while the prediction
/// still satisfies the stopping bound. A removal that breaks the bound is
/// discarded and the previous state returned.
PruneResult prune(BiorthState state, const Problem& problem, const StopRule& stop);

}  // namespace qmaxent
