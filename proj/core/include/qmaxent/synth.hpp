#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <variant>
#include <vector>

#include "qmaxent/model.hpp"

namespace qmaxent {

enum class KernelFamily { exponential, lorentzian, custom };

std::string_view to_string(KernelFamily family);
/// Throws UsageError for an unknown name.
KernelFamily parse_kernel_family(std::string_view name);

std::string_view to_string(MeasureMode mode);
/// Accepts "uniform", "inverse_variance" and "inverse-variance".
MeasureMode parse_measure_mode(std::string_view name);

struct GaussianComponent {
  double weight = 1.0;
  double center = 0.0;
  double width = 1.0;
};

/// p_n = sum_c w_c exp(-(n - m_c)^2 / (2 s_c^2)), rescaled to sum to `total`.
struct GaussianMixture {
  std::vector<GaussianComponent> components;
  double total = 1.0;
};

struct TabulatedTruth {
  Vector p;
};

using TruthSpec = std::variant<GaussianMixture, TabulatedTruth>;

struct ExperimentSpec {
  KernelFamily kernel_family = KernelFamily::lorentzian;
  Index rows = 0;
  Index columns = 0;
  /// sigma_i = noise_fraction * |f_true_i| (a standard deviation).
  double noise_fraction = 0.0;
  std::uint64_t seed = 1;
  MeasureMode measure_mode = MeasureMode::uniform;
  TruthSpec truth;
  std::optional<Matrix> custom_kernel;

  /// Throws UsageError on any violated invariant.
  void validate() const;
};

/// Exponential kernel, M = 100, N = 50, 20% noise, inverse-variance measure,
/// two-bump truth.
ExperimentSpec example1_spec(std::uint64_t seed = 1);

/// Lorentzian kernel, M = 700, N = 450, 10% noise, uniform measure,
/// five-Gaussian truth.
ExperimentSpec example2_spec(std::uint64_t seed = 1);

/// exponential: exp(-n 0.01 i); lorentzian: 1 / (1 + 0.01 (i - 100 - n)^2);
/// i = 1..rows, n = 1..columns.
Matrix make_kernel(KernelFamily family, Index rows, Index columns);
Matrix make_kernel(const ExperimentSpec& spec);

/// Tabulated ground truth p_n, n = 1..N. An empty mixture yields zeros.
Vector make_truth(const ExperimentSpec& spec);
bool is_empty_truth(const ExperimentSpec& spec);

struct Observation {
  Vector f_true;
  Vector f_obs;
  Vector sigma;
};

/// Relative floor on sigma: sigma_i >= kSigmaFloor * max|f_true|.
inline constexpr double kSigmaFloor = 1e-12;

/// f_true = K p_true; f_obs = f_true + N(0, (noise_fraction |f_true_i|)^2)
/// drawn from GaussianSampler seeded with spec.seed.
Observation observe(const ExperimentSpec& spec, const Matrix& kernel, const VectorView& p_true);

/// Full dataset for a spec: kernel, truth and one noisy realisation.
Dataset generate(const ExperimentSpec& spec);

/// Standard normal deviates from std::mt19937_64 via the Box-Muller
/// transform. Both the engine and the transform are fully specified, so a
/// seed reproduces the same stream on every conforming platform.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()();

 private:
  /// Uniform on (0, 1] with 53 random bits.
  double uniform_open();

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace qmaxent
