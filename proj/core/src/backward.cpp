#include "qmaxent/backward.hpp"

#include <string>

#include "qmaxent/distribution.hpp"
#include "qmaxent/errors.hpp"

namespace qmaxent {

std::vector<double> removal_scores(const BiorthState& state, const Problem& problem) {
  std::vector<double> scores(state.size());
  for (Index j = 0; j < state.size(); ++j) {
    scores[j] = state.lambdas[j] * state.lambdas[j] /
                weighted_norm2(state.duals[j], problem.measure());
  }
  return scores;
}

double energy_drop(const BiorthState& state, const Problem& problem, Index position) {
  if (position >= state.size()) {
    throw UsageError("removal position " + std::to_string(position + 1) + " out of range");
  }
  const double lambda = state.lambdas[position];
  return lambda * lambda / weighted_norm2(state.duals[position], problem.measure());
}

BiorthState remove(BiorthState state, const Problem& problem, Index position) {
  const Index k = state.size();
  if (position >= k) {
    throw UsageError("removal position " + std::to_string(position + 1) + " out of range 1.." +
                     std::to_string(k));
  }
  const Measure& mu = problem.measure();
  const Vector removed_dual = state.duals[position];
  const double removed_lambda = state.lambdas[position];
  const double dual_norm2 = weighted_norm2(removed_dual, mu);

  for (Index n = 0; n < k; ++n) {
    if (n == position) continue;
    const double c = weighted_inner(removed_dual, state.duals[n], mu) / dual_norm2;
    state.duals[n] -= c * removed_dual;
    state.lambdas[n] -= c * removed_lambda;
  }
  // P_k f~ - P_{k/j} f~ lies along the removed dual.
  if (k == 1) {
    state.projection.setZero();
  } else {
    state.projection -= (removed_lambda / dual_norm2) * removed_dual;
  }

  const auto at = static_cast<std::ptrdiff_t>(position);
  state.selected.erase(state.selected.begin() + at);
  state.duals.erase(state.duals.begin() + at);
  state.lambdas.erase(state.lambdas.begin() + at);

  // psi only matters if forward extension resumes; rebuild it in stored order.
  state.psi.clear();
  state.psi_norm2.clear();
  for (Index l : state.selected) {
    Vector psi = problem.alpha(l);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < state.psi.size(); ++j) {
        psi -= (weighted_inner(state.psi[j], psi, mu) / state.psi_norm2[j]) * state.psi[j];
      }
    }
    state.psi_norm2.push_back(weighted_norm2(psi, mu));
    state.psi.push_back(std::move(psi));
  }
  return state;
}

PruneResult prune(BiorthState state, const Problem& problem, const StopRule& stop) {
  PruneResult result;
  result.residual2 = residual2(problem, state);
  result.residual_history.push_back(result.residual2);
  while (state.size() > 0) {
    const auto scores = removal_scores(state, problem);
    Index worst = 0;
    for (Index j = 1; j < scores.size(); ++j) {
      if (scores[j] < scores[worst]) worst = j;
    }
    BiorthState candidate = remove(state, problem, worst);
    const double r2 = residual2(problem, candidate);
    if (!(r2 < stop.epsilon_norm2)) break;
    result.removed.push_back(state.selected[worst]);
    result.residual2 = r2;
    result.residual_history.push_back(r2);
    state = std::move(candidate);
  }
  result.state = std::move(state);
  return result;
}

}  // namespace qmaxent
