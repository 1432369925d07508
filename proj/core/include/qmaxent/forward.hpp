#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qmaxent/model.hpp"
#include "qmaxent/state.hpp"

namespace qmaxent {

/// A candidate is admissible only while ||psi_n||^2 / ||alpha_n||^2 stays at
/// or above this ratio.
inline constexpr double kDependenceThreshold = 1e-12;

/// Stop when ||f^p - f^o||^2_mu < epsilon_norm2, with epsilon_i = t sigma_i.
struct StopRule {
  double t = 1.0;
  double epsilon_norm2 = 0.0;
  std::optional<Index> max_k;

  /// epsilon_norm2 = ||t sigma||^2_mu. Throws UsageError if t <= 0.
  static StopRule from_sigma(double t, const VectorView& sigma, const Measure& mu,
                             std::optional<Index> max_k = std::nullopt);
};

enum class StopReason { threshold, max_k, pool_exhausted, dependence_exhausted };

std::string_view to_string(StopReason reason);

/// Adds constraint l to the state (dual and multiplier recursions).
/// Throws UsageError for an out-of-range or already selected index and
/// DegeneracyError if alpha_l is dependent on the current span.
BiorthState extend(BiorthState state, const Problem& problem, Index l);

/// e_n = <psi_n | f~>^2 / ||psi_n||^2 for every constraint n. Selected and
/// dependent candidates, and those outside `pool` when one is given, score
/// -infinity.
std::vector<double> score_candidates(const BiorthState& state, const Problem& problem);
std::vector<double> score_candidates(const BiorthState& state, const Problem& problem,
                                     std::span<const Index> pool);

/// Recomputes duals and multipliers from an explicit Gram solve on the
/// selected alpha vectors. Used for periodic drift control.
void reorthogonalize(BiorthState& state, const Problem& problem);

struct ForwardOptions {
  /// Rebuild duals by Gram solve every this many extensions; 0 disables.
  Index reorthogonalize_every = 0;
};

struct ForwardResult {
  BiorthState state;
  StopReason reason = StopReason::threshold;
  double residual2 = 0.0;
  /// residual2 after 0, 1, ..., k selections.
  std::vector<double> residual_history;
};

/// Greedy forward selection restricted to `pool` (all constraints when no
/// pool is given). Throws UsageError for an empty pool and DegeneracyError
/// when the stopping bound is not met and no admissible candidate exists at
/// k = 0.
ForwardResult fit_forward(const Problem& problem, const StopRule& stop,
                          std::optional<std::span<const Index>> pool = std::nullopt,
                          ForwardOptions options = {});

/// Rebuilds a state by extending with `selected` in order.
BiorthState replay(const Problem& problem, std::span<const Index> selected);

}  // namespace qmaxent
