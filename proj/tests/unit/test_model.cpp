#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "instances.hpp"
#include "qmaxent/errors.hpp"
#include "qmaxent/forward.hpp"
#include "qmaxent/model.hpp"
#include "qmaxent/synth.hpp"

namespace qmaxent {
namespace {

ConstraintSystem identity_instance() {
  return ConstraintSystem(Matrix::Identity(2, 2), Vector::Unit(2, 0), Measure::uniform(2));
}

TEST(ConstraintSystem, ValidatesShapes) {
  EXPECT_THROW(ConstraintSystem(Matrix::Identity(2, 2), Vector::Zero(3), Measure::uniform(2)),
               DimensionError);
  EXPECT_THROW(ConstraintSystem(Matrix::Identity(2, 2), Vector::Zero(2), Measure::uniform(3)),
               DimensionError);
  EXPECT_THROW(ConstraintSystem(Matrix(0, 0), Vector(0), Measure::uniform(1)), DimensionError);
  Vector bad_sigma(2);
  bad_sigma << 1.0, 0.0;
  EXPECT_THROW(
      ConstraintSystem(Matrix::Identity(2, 2), Vector::Zero(2), Measure::uniform(2), bad_sigma),
      UsageError);
}

TEST(Derive, IdentityKernel) {
  const DerivedData d = derive(identity_instance());
  EXPECT_EQ(d.g, Vector::Ones(2));
  EXPECT_DOUBLE_EQ(d.ftilde[0], 0.5);
  EXPECT_DOUBLE_EQ(d.ftilde[1], -0.5);
}

TEST(Derive, AllOnesKernel) {
  const ConstraintSystem sys(Matrix::Ones(3, 4), Vector::Constant(3, 4.0), Measure::uniform(3));
  const DerivedData d = derive(sys);
  EXPECT_EQ(d.g, Vector::Constant(3, 4.0));
  EXPECT_EQ(d.ftilde, Vector::Constant(3, 3.0));
}

TEST(Derive, TruncatedExponentialKernelRowSums) {
  const Matrix k = make_kernel(KernelFamily::exponential, 3, 2);
  const DerivedData d = derive(ConstraintSystem(k, Vector::Zero(3), Measure::uniform(3)));
  for (int i = 1; i <= 3; ++i) {
    const double expected = std::exp(-0.01 * i) + std::exp(-0.02 * i);
    EXPECT_NEAR(d.g[i - 1], expected, 1e-15);
    EXPECT_NEAR(d.ftilde[i - 1], -expected / 2.0, 1e-15);
  }
}

TEST(Alpha, SingleColumnKernelGivesZeroAlpha) {
  std::mt19937_64 rng(1);
  const ConstraintSystem sys(testing::random_kernel(rng, 6, 1), testing::random_vector(rng, 6),
                             Measure::uniform(6));
  const DerivedData d = derive(sys);
  for (Index l = 0; l < 6; ++l) EXPECT_LT(alpha(sys, d, l).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Alpha, IdentityKernel) {
  const ConstraintSystem sys = identity_instance();
  const DerivedData d = derive(sys);
  const Vector a1 = alpha(sys, d, 0);
  const Vector a2 = alpha(sys, d, 1);
  EXPECT_DOUBLE_EQ(a1[0], 0.5);
  EXPECT_DOUBLE_EQ(a1[1], -0.5);
  EXPECT_DOUBLE_EQ(a2[0], -0.5);
  EXPECT_DOUBLE_EQ(a2[1], 0.5);
}

TEST(Alpha, LorentzianBlockMatchesDenseEvaluation) {
  // Dense F F^T column minus g g_3 / N with explicit loops.
  const int m = 5, n = 5;
  double f[5][5];
  for (int i = 1; i <= m; ++i) {
    for (int c = 1; c <= n; ++c) f[i - 1][c - 1] = 1.0 / (1.0 + 0.01 * (i - 100 - c) * (i - 100 - c));
  }
  double g[5];
  for (int i = 0; i < m; ++i) {
    g[i] = 0.0;
    for (int c = 0; c < n; ++c) g[i] += f[i][c];
  }
  const int l = 2;  // third constraint
  const Matrix kernel = make_kernel(KernelFamily::lorentzian, 5, 5);
  const ConstraintSystem sys(kernel, Vector::Zero(5), Measure::uniform(5));
  const Vector a = alpha(sys, derive(sys), l);
  for (int i = 0; i < m; ++i) {
    double fft = 0.0;
    for (int c = 0; c < n; ++c) fft += f[i][c] * f[l][c];
    const double expected = fft - g[i] * g[l] / n;
    EXPECT_NEAR(a[i], expected, 1e-13 * std::max(1.0, std::abs(fft)));
  }
}

TEST(Alpha, OutOfRange) {
  const ConstraintSystem sys = identity_instance();
  EXPECT_THROW(alpha(sys, derive(sys), 2), UsageError);
  const Problem p(sys);
  EXPECT_THROW(p.alpha(7), UsageError);
}

TEST(AlphaProperty, MeasureIndependentBitForBit) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = 2 + rng() % 15, n = 1 + rng() % 10;
    const Matrix k = testing::random_kernel(rng, m, n);
    const Vector fo = testing::random_vector(rng, m);
    const Problem a(ConstraintSystem(k, fo, Measure::uniform(m)));
    const Problem b(ConstraintSystem(k, fo, Measure(testing::random_vector(rng, m, 0.1, 9.0))));
    for (Index l = 0; l < m; ++l) EXPECT_TRUE(a.alpha(l) == b.alpha(l));
  }
}

TEST(AlphaProperty, SymmetricFamily) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = 2 + rng() % 15, n = 1 + rng() % 10;
    const Problem p(ConstraintSystem(testing::random_kernel(rng, m, n), testing::random_vector(rng, m),
                                     Measure::uniform(m)));
    for (Index l = 0; l < m; ++l) {
      for (Index j = 0; j < m; ++j) {
        const double x = p.alpha(l)[static_cast<Eigen::Index>(j)];
        const double y = p.alpha(j)[static_cast<Eigen::Index>(l)];
        EXPECT_LE(std::abs(x - y), 1e-10 * std::max({std::abs(x), std::abs(y), 1e-300}) + 1e-15);
      }
    }
  }
}

TEST(AlphaProperty, UniformTruthAnnihilated) {
  std::mt19937_64 rng(4);
  const Matrix k = testing::random_kernel(rng, 12, 6);
  const Vector g = k.rowwise().sum();
  const Problem p(ConstraintSystem(k, g / 6.0, Measure::uniform(12)));
  EXPECT_LT(p.derived().ftilde.cwiseAbs().maxCoeff(), 1e-15);
  const BiorthState s = extend(BiorthState::empty(12), p, 0);
  EXPECT_LT(std::abs(s.lambdas[0]), 1e-14);
}

TEST(Problem, ConcurrentCacheFillIsConsistent) {
  std::mt19937_64 rng(5);
  const Index m = 40;
  const Problem p(ConstraintSystem(testing::random_kernel(rng, m, 20), testing::random_vector(rng, m),
                                   Measure::uniform(m)));
  std::vector<std::thread> workers;
  std::vector<std::vector<Vector>> seen(4);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (Index l = 0; l < m; ++l) seen[t].push_back(p.alpha((l * 7 + t) % m));
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 0; t < 4; ++t) {
    for (Index l = 0; l < m; ++l) EXPECT_TRUE(seen[t][l] == p.alpha((l * 7 + t) % m));
  }
}

TEST(Predict, Examples) {
  const ConstraintSystem sys = identity_instance();
  EXPECT_EQ(predict(sys, Vector::Unit(2, 0)), Vector::Unit(2, 0));
  EXPECT_THROW(predict(sys, Vector::Zero(3)), DimensionError);

  std::mt19937_64 rng(6);
  const Matrix k = testing::random_kernel(rng, 9, 5);
  const ConstraintSystem r(k, Vector::Zero(9), Measure::uniform(9));
  const Vector fp = predict(r, Vector::Constant(5, 0.2));
  EXPECT_LT((fp - derive(r).g / 5.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MakeSystem, MeasureSelection) {
  Dataset data;
  data.kernel = Matrix::Identity(2, 2);
  data.f_obs = Vector::Unit(2, 0);
  EXPECT_EQ(default_measure_mode(data), MeasureMode::uniform);
  EXPECT_THROW(make_system(data, MeasureMode::inverse_variance), UsageError);
  data.sigma = Vector::Constant(2, 0.5);
  EXPECT_EQ(default_measure_mode(data), MeasureMode::inverse_variance);
  EXPECT_DOUBLE_EQ(make_system(data, MeasureMode::inverse_variance).measure()[1], 4.0);
  EXPECT_DOUBLE_EQ(make_system(data, MeasureMode::uniform).measure()[1], 1.0);
}

}  // namespace
}  // namespace qmaxent
