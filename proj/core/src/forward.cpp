#include "qmaxent/forward.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qmaxent/distribution.hpp"
#include "qmaxent/errors.hpp"

namespace qmaxent {

namespace {

constexpr double kExcluded = -std::numeric_limits<double>::infinity();

// Returns kExcluded for zero or dependent candidates.
double candidate_score(const BiorthState& state, const Problem& problem, Index n) {
  const double an2 = problem.alpha_norm2(n);
  if (!(an2 > 0.0)) return kExcluded;
  const Measure& mu = problem.measure();
  const Vector psi = orthogonal_residual(state, problem.alpha(n), mu);
  const double pn2 = weighted_norm2(psi, mu);
  if (pn2 < kDependenceThreshold * an2) return kExcluded;
  const double c = weighted_inner(psi, problem.derived().ftilde, mu);
  return c * c / pn2;
}

Index argmax_lowest(const std::vector<double>& scores) {
  Index best = 0;
  for (Index n = 1; n < scores.size(); ++n) {
    if (scores[n] > scores[best]) best = n;
  }
  return best;
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::threshold: return "threshold";
    case StopReason::max_k: return "max_k";
    case StopReason::pool_exhausted: return "pool_exhausted";
    case StopReason::dependence_exhausted: return "dependence_exhausted";
  }
  return "unknown";
}

StopRule StopRule::from_sigma(double t, const VectorView& sigma, const Measure& mu,
                              std::optional<Index> max_k) {
  if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("stopping factor t must be positive");
  const Vector eps = t * sigma;
  return StopRule{t, weighted_norm2(eps, mu), max_k};
}

BiorthState extend(BiorthState state, const Problem& problem, Index l) {
  if (l >= problem.rows()) {
    throw UsageError("constraint index " + std::to_string(l + 1) + " out of range");
  }
  if (state.contains(l)) {
    throw UsageError("constraint " + std::to_string(l + 1) + " is already selected");
  }
  const Measure& mu = problem.measure();
  const Vector& a = problem.alpha(l);
  const double an2 = problem.alpha_norm2(l);
  Vector psi = orthogonal_residual(state, a, mu);
  const double pn2 = weighted_norm2(psi, mu);
  if (!(an2 > 0.0) || pn2 < kDependenceThreshold * an2) {
    throw DegeneracyError("constraint " + std::to_string(l + 1) +
                          " is linearly dependent on the selected set");
  }
  const Vector psi_dual = psi / pn2;

  std::vector<double> overlap(state.size());
  for (Index n = 0; n < state.size(); ++n) {
    overlap[n] = weighted_inner(state.duals[n], a, mu);
    state.duals[n] -= overlap[n] * psi_dual;
  }
  const double lambda_new = weighted_inner(psi_dual, problem.derived().ftilde, mu);
  for (Index n = 0; n < state.size(); ++n) state.lambdas[n] -= overlap[n] * lambda_new;

  state.projection += lambda_new * psi;
  state.selected.push_back(l);
  state.psi.push_back(std::move(psi));
  state.psi_norm2.push_back(pn2);
  state.duals.push_back(psi_dual);
  state.lambdas.push_back(lambda_new);
  return state;
}

std::vector<double> score_candidates(const BiorthState& state, const Problem& problem) {
  std::vector<double> scores(problem.rows(), kExcluded);
  for (Index n = 0; n < problem.rows(); ++n) {
    if (!state.contains(n)) scores[n] = candidate_score(state, problem, n);
  }
  return scores;
}

std::vector<double> score_candidates(const BiorthState& state, const Problem& problem,
                                     std::span<const Index> pool) {
  std::vector<double> scores(problem.rows(), kExcluded);
  for (Index n : pool) {
    if (n >= problem.rows()) {
      throw UsageError("pool index " + std::to_string(n + 1) + " out of range");
    }
    if (!state.contains(n)) scores[n] = candidate_score(state, problem, n);
  }
  return scores;
}

void reorthogonalize(BiorthState& state, const Problem& problem) {
  const Index k = state.size();
  if (k == 0) return;
  const Measure& mu = problem.measure();
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  for (Index i = 0; i < k; ++i) {
    const Vector& ai = problem.alpha(state.selected[i]);
    for (Index j = 0; j <= i; ++j) {
      gram(i, j) = gram(j, i) = weighted_inner(ai, problem.alpha(state.selected[j]), mu);
    }
    rhs[i] = weighted_inner(ai, problem.derived().ftilde, mu);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(gram);
  const Eigen::MatrixXd inverse = lu.inverse();
  const Eigen::VectorXd lambdas = lu.solve(rhs);
  state.projection.setZero();
  for (Index n = 0; n < k; ++n) {
    state.duals[n].setZero();
    for (Index m = 0; m < k; ++m) {
      state.duals[n] += inverse(m, n) * problem.alpha(state.selected[m]);
    }
    state.lambdas[n] = lambdas[n];
    state.projection += lambdas[n] * problem.alpha(state.selected[n]);
  }
}

ForwardResult fit_forward(const Problem& problem, const StopRule& stop,
                          std::optional<std::span<const Index>> pool, ForwardOptions options) {
  if (pool && pool->empty()) throw UsageError("candidate pool is empty");
  const Index pool_size = pool ? pool->size() : problem.rows();

  ForwardResult result{BiorthState::empty(problem.rows()), StopReason::threshold, 0.0, {}};
  BiorthState& state = result.state;
  for (;;) {
    result.residual2 = residual2(problem, state);
    result.residual_history.push_back(result.residual2);
    if (result.residual2 < stop.epsilon_norm2) {
      result.reason = StopReason::threshold;
      break;
    }
    if (stop.max_k && state.size() >= *stop.max_k) {
      result.reason = StopReason::max_k;
      break;
    }
    if (state.size() >= pool_size) {
      result.reason = StopReason::pool_exhausted;
      break;
    }
    const auto scores =
        pool ? score_candidates(state, problem, *pool) : score_candidates(state, problem);
    const Index best = argmax_lowest(scores);
    if (scores[best] == kExcluded) {
      if (state.size() == 0) {
        throw DegeneracyError("no admissible constraint: every candidate alpha vector is zero "
                              "or dependent");
      }
      result.reason = StopReason::dependence_exhausted;
      break;
    }
    state = extend(std::move(state), problem, best);
    if (options.reorthogonalize_every > 0 && state.size() % options.reorthogonalize_every == 0) {
      reorthogonalize(state, problem);
    }
  }
  return result;
}

BiorthState replay(const Problem& problem, std::span<const Index> selected) {
  BiorthState state = BiorthState::empty(problem.rows());
  for (Index l : selected) state = extend(std::move(state), problem, l);
  return state;
}

}  // namespace qmaxent
