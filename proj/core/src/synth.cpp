#include "qmaxent/synth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmaxent/errors.hpp"

namespace qmaxent {

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::exponential: return "exponential";
    case KernelFamily::lorentzian: return "lorentzian";
    case KernelFamily::custom: return "custom";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "exponential") return KernelFamily::exponential;
  if (name == "lorentzian") return KernelFamily::lorentzian;
  if (name == "custom") return KernelFamily::custom;
  throw UsageError("unknown kernel family '" + std::string(name) + "'");
}

std::string_view to_string(MeasureMode mode) {
  return mode == MeasureMode::uniform ? "uniform" : "inverse_variance";
}

MeasureMode parse_measure_mode(std::string_view name) {
  if (name == "uniform") return MeasureMode::uniform;
  if (name == "inverse_variance" || name == "inverse-variance") return MeasureMode::inverse_variance;
  throw UsageError("unknown measure '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  if (rows == 0 || columns == 0) throw UsageError("M and N must be at least 1");
  if (!(noise_fraction >= 0.0) || !std::isfinite(noise_fraction)) {
    throw UsageError("noise_fraction must be a finite non-negative number");
  }
  if (kernel_family == KernelFamily::custom) {
    if (!custom_kernel) throw UsageError("custom kernel family requires an explicit kernel");
    if (static_cast<Index>(custom_kernel->rows()) != rows ||
        static_cast<Index>(custom_kernel->cols()) != columns) {
      throw DimensionError("custom kernel shape does not match M x N");
    }
  }
  if (const auto* mix = std::get_if<GaussianMixture>(&truth)) {
    if (!(mix->total > 0.0)) throw UsageError("mixture total must be positive");
    for (const auto& c : mix->components) {
      if (!(c.weight > 0.0)) throw UsageError("mixture weights must be positive");
      if (!(c.width > 0.0)) throw UsageError("mixture widths must be positive");
    }
  } else {
    const auto& tab = std::get<TabulatedTruth>(truth);
    if (static_cast<Index>(tab.p.size()) != columns) {
      throw DimensionError("tabulated truth length does not match N");
    }
  }
}

ExperimentSpec example1_spec(std::uint64_t seed) {
  ExperimentSpec spec;
  spec.kernel_family = KernelFamily::exponential;
  spec.rows = 100;
  spec.columns = 50;
  spec.noise_fraction = 0.20;
  spec.seed = seed;
  spec.measure_mode = MeasureMode::inverse_variance;
  // Stand-in for the unpublished two-bump curve.
  spec.truth = GaussianMixture{{{1.0, 12.0, 4.0}, {0.6, 32.0, 6.0}}, 1.0};
  return spec;
}

ExperimentSpec example2_spec(std::uint64_t seed) {
  ExperimentSpec spec;
  spec.kernel_family = KernelFamily::lorentzian;
  spec.rows = 700;
  spec.columns = 450;
  spec.noise_fraction = 0.10;
  spec.seed = seed;
  spec.measure_mode = MeasureMode::uniform;
  // Least-squares fit to the digitised five-peak reference curve.
  spec.truth = GaussianMixture{{{2.26, 40.0, 9.7},
                                {9.06, 120.0, 11.0},
                                {4.07, 250.0, 15.7},
                                {18.06, 300.0, 7.3},
                                {4.52, 350.0, 15.7}},
                               1.0};
  return spec;
}

Matrix make_kernel(KernelFamily family, Index rows, Index columns) {
  const auto m = static_cast<Eigen::Index>(rows);
  const auto n_cols = static_cast<Eigen::Index>(columns);
  Matrix k(m, n_cols);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double i = static_cast<double>(r + 1);
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      const double n = static_cast<double>(c + 1);
      switch (family) {
        case KernelFamily::exponential:
          k(r, c) = std::exp(-n * (0.01 * i));
          break;
        case KernelFamily::lorentzian: {
          const double offset = i - 100.0 - n;
          k(r, c) = 1.0 / (1.0 + 0.01 * offset * offset);
          break;
        }
        case KernelFamily::custom:
          throw UsageError("custom kernels are not generated");
      }
    }
  }
  return k;
}

Matrix make_kernel(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.kernel_family == KernelFamily::custom) return *spec.custom_kernel;
  return make_kernel(spec.kernel_family, spec.rows, spec.columns);
}

bool is_empty_truth(const ExperimentSpec& spec) {
  const auto* mix = std::get_if<GaussianMixture>(&spec.truth);
  return mix != nullptr && mix->components.empty();
}

Vector make_truth(const ExperimentSpec& spec) {
  spec.validate();
  if (const auto* tab = std::get_if<TabulatedTruth>(&spec.truth)) return tab->p;
  const auto& mix = std::get<GaussianMixture>(spec.truth);
  Vector p = Vector::Zero(static_cast<Eigen::Index>(spec.columns));
  for (Eigen::Index c = 0; c < p.size(); ++c) {
    const double n = static_cast<double>(c + 1);
    for (const auto& g : mix.components) {
      const double z = (n - g.center) / g.width;
      p[c] += g.weight * std::exp(-0.5 * z * z);
    }
  }
  const double s = p.sum();
  if (s > 0.0) p *= mix.total / s;
  return p;
}

Observation observe(const ExperimentSpec& spec, const Matrix& kernel, const VectorView& p_true) {
  if (p_true.size() != kernel.cols()) {
    throw DimensionError("truth length does not match kernel columns");
  }
  Observation obs;
  obs.f_true = kernel * p_true;
  const auto m = obs.f_true.size();
  double floor = kSigmaFloor * obs.f_true.cwiseAbs().maxCoeff();
  if (!(floor > 0.0)) floor = kSigmaFloor;

  GaussianSampler normal(spec.seed);
  obs.f_obs.resize(m);
  obs.sigma.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double scale = spec.noise_fraction * std::abs(obs.f_true[i]);
    const double z = normal();
    obs.f_obs[i] = scale > 0.0 ? obs.f_true[i] + scale * z : obs.f_true[i];
    obs.sigma[i] = std::max(scale, floor);
  }
  return obs;
}

Dataset generate(const ExperimentSpec& spec) {
  spec.validate();
  Dataset data;
  data.kernel = make_kernel(spec);
  if (spec.kernel_family != KernelFamily::custom) {
    data.kernel_family = std::string(to_string(spec.kernel_family));
  }
  Vector p = make_truth(spec);
  Observation obs = observe(spec, data.kernel, p);
  data.f_obs = std::move(obs.f_obs);
  data.sigma = std::move(obs.sigma);
  data.f_true = std::move(obs.f_true);
  data.p_true = std::move(p);
  data.seed = spec.seed;
  return data;
}

double GaussianSampler::uniform_open() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return static_cast<double>((engine_() >> 11) + 1) * kScale;
}

double GaussianSampler::operator()() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

}  // namespace qmaxent
