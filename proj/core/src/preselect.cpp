#include "qmaxent/preselect.hpp"

#include <cmath>

#include "qmaxent/errors.hpp"

namespace qmaxent {

PreselectReport preselect(const Problem& problem, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw UsageError("preselect threshold must lie in (0, 1]");
  }
  PreselectReport report;
  report.threshold = threshold;

  const Measure& mu = problem.measure();
  const Index m = problem.rows();

  // Residuals of every live candidate against the span chosen so far, kept
  // up to date one orthonormal direction at a time.
  std::vector<Vector> residual(m);
  std::vector<bool> live(m, false);
  bool any_live = false;
  for (Index n = 0; n < m; ++n) {
    if (problem.alpha_norm2(n) > 0.0) {
      residual[n] = problem.alpha(n);
      live[n] = true;
      any_live = true;
    }
  }
  if (!any_live) {
    report.status = PreselectStatus::all_alpha_zero;
    return report;
  }

  std::vector<Vector> basis;
  for (;;) {
    Index best = m;
    double best_ratio = -1.0;
    for (Index n = 0; n < m; ++n) {
      if (!live[n]) continue;
      const double r = weighted_norm2(residual[n], mu) / problem.alpha_norm2(n);
      if (r > best_ratio) {
        best_ratio = r;
        best = n;
      }
    }
    if (best == m || best_ratio < threshold) break;

    Vector q = residual[best];
    for (const Vector& b : basis) q -= weighted_inner(b, q, mu) * b;
    q /= std::sqrt(weighted_norm2(q, mu));

    report.pool.push_back(best);
    report.ratios.push_back(best_ratio);
    live[best] = false;
    for (Index n = 0; n < m; ++n) {
      if (live[n]) residual[n] -= weighted_inner(q, residual[n], mu) * q;
    }
    basis.push_back(std::move(q));
  }
  return report;
}

}  // namespace qmaxent
