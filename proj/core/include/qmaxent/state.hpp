#pragma once

#include <algorithm>
#include <vector>

#include "qmaxent/geometry.hpp"

namespace qmaxent {

/// Selected constraints with their orthogonalised residuals psi, the dual
/// (biorthogonal) vectors and the Lagrange multipliers.
///
/// Entry n of psi, psi_norm2, duals and lambdas belongs to selected[n].
/// duals[n] satisfies <duals[n] | alpha(selected[m])>_mu = delta_nm and
/// projection = sum_n lambdas[n] alpha(selected[n]) = P_V f~.
struct BiorthState {
  std::vector<Index> selected;
  std::vector<Vector> psi;
  std::vector<double> psi_norm2;
  std::vector<Vector> duals;
  std::vector<double> lambdas;
  Vector projection;

  static BiorthState empty(Index rows) {
    BiorthState s;
    s.projection = Vector::Zero(static_cast<Eigen::Index>(rows));
    return s;
  }

  Index size() const noexcept { return selected.size(); }
  bool contains(Index l) const {
    return std::find(selected.begin(), selected.end(), l) != selected.end();
  }
};

/// Component of v orthogonal (under mu) to span{psi}. Two passes of modified
/// Gram-Schmidt against the stored psi vectors.
Vector orthogonal_residual(const BiorthState& state, const VectorView& v, const Measure& mu);

}  // namespace qmaxent
