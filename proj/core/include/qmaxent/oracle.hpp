#pragma once

#include <span>

#include "qmaxent/model.hpp"

namespace qmaxent::oracle {

inline constexpr double kMaxGramCondition = 1e12;

struct NormalSolution {
  Vector coefficients;
  Vector projection;
  double condition = 0.0;
};

/// Least-squares coefficients of f~ (or `rhs`) on the alpha vectors of
/// `indices` from the explicitly formed Gram matrix, solved by LU with
/// partial pivoting. Throws ConditionError if the Gram condition number
/// exceeds kMaxGramCondition.
NormalSolution solve_normal(const Problem& problem, std::span<const Index> indices);
NormalSolution solve_normal(const Problem& problem, std::span<const Index> indices,
                            const VectorView& rhs);

/// Number of complete-pivoting LU pivots of the alpha Gram matrix above
/// tol times the largest pivot.
Index numerical_rank(const Problem& problem, double tol);

}  // namespace qmaxent::oracle
