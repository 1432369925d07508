#include "qmaxent/oracle.hpp"

#include <string>

#include "qmaxent/errors.hpp"

namespace qmaxent::oracle {

NormalSolution solve_normal(const Problem& problem, std::span<const Index> indices) {
  return solve_normal(problem, indices, problem.derived().ftilde);
}

NormalSolution solve_normal(const Problem& problem, std::span<const Index> indices,
                            const VectorView& rhs) {
  const Measure& mu = problem.measure();
  const auto k = static_cast<Eigen::Index>(indices.size());
  NormalSolution out;
  out.projection = Vector::Zero(static_cast<Eigen::Index>(problem.rows()));
  out.coefficients = Vector::Zero(k);
  if (k == 0) return out;

  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd b(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Vector& ai = problem.alpha(indices[i]);
    for (Eigen::Index j = 0; j < k; ++j) {
      gram(i, j) = weighted_inner(ai, problem.alpha(indices[j]), mu);
    }
    b[i] = weighted_inner(ai, rhs, mu);
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxGramCondition) {
    throw ConditionError("Gram matrix is singular or ill-conditioned (eigenvalues " +
                         std::to_string(lo) + " .. " + std::to_string(hi) + ")");
  }
  out.condition = hi / lo;
  out.coefficients = gram.partialPivLu().solve(b);
  for (Eigen::Index j = 0; j < k; ++j) {
    out.projection += out.coefficients[j] * problem.alpha(indices[j]);
  }
  return out;
}

Index numerical_rank(const Problem& problem, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw UsageError("rank tolerance must lie in (0, 1)");
  const auto m = static_cast<Eigen::Index>(problem.rows());
  Eigen::MatrixXd family(m, m);
  for (Eigen::Index l = 0; l < m; ++l) family.col(l) = problem.alpha(static_cast<Index>(l));
  const Eigen::MatrixXd gram =
      family.transpose() * problem.measure().weights().asDiagonal() * family;
  if (gram.cwiseAbs().maxCoeff() == 0.0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(tol);
  return static_cast<Index>(lu.rank());
}

}  // namespace qmaxent::oracle
