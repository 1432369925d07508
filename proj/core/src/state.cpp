#include "qmaxent/state.hpp"

namespace qmaxent {

Vector orthogonal_residual(const BiorthState& state, const VectorView& v, const Measure& mu) {
  Vector r = v;
  for (int pass = 0; pass < 2; ++pass) {
    for (Index j = 0; j < state.size(); ++j) {
      const double c = weighted_inner(state.psi[j], r, mu) / state.psi_norm2[j];
      r -= c * state.psi[j];
    }
  }
  return r;
}

}  // namespace qmaxent
