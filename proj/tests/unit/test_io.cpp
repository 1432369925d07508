#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "qmaxent/errors.hpp"
#include "qmaxent/io.hpp"
#include "qmaxent/preselect.hpp"
#include "qmaxent/synth.hpp"

namespace qmaxent {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qmaxent_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(FormatNumber, RoundTrips) {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 150) *
                     (i % 2 ? -1.0 : 1.0);
    EXPECT_EQ(std::stod(io::format_number(x)), x);
  }
  EXPECT_EQ(io::format_number(0.5), "0.5");
  EXPECT_EQ(io::format_number(1e-10), "1e-10");
}

TEST(Dataset, GeneratorKernelRoundTrip) {
  const Dataset d = generate(example1_spec(5));
  const std::string text = io::format_dataset(d);
  EXPECT_NE(text.find("\"family\""), std::string::npos);
  const Dataset back = io::parse_dataset(text);
  EXPECT_EQ(back.kernel, d.kernel);
  EXPECT_EQ(back.f_obs, d.f_obs);
  EXPECT_EQ(*back.sigma, *d.sigma);
  EXPECT_EQ(*back.f_true, *d.f_true);
  EXPECT_EQ(*back.p_true, *d.p_true);
  EXPECT_EQ(*back.seed, 5u);
  EXPECT_EQ(io::format_dataset(back), text);
}

TEST(Dataset, InlineKernelWithoutOptionalFields) {
  const std::string text = R"({"M": 2, "N": 3, "kernel": [[1, 2, 3], [4, 5, 6]], "f_obs": [1, -1]})";
  const Dataset d = io::parse_dataset(text);
  EXPECT_EQ(d.kernel(1, 2), 6.0);
  EXPECT_FALSE(d.sigma.has_value());
  EXPECT_FALSE(d.kernel_family.has_value());
  EXPECT_EQ(io::parse_dataset(io::format_dataset(d)).kernel, d.kernel);
}

TEST(Dataset, SchemaErrors) {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"N": 1, "kernel": [[1]], "f_obs": [1]})",
      R"({"M": 1, "N": 1, "kernel": [[1, 2]], "f_obs": [1]})",
      R"({"M": 2, "N": 1, "kernel": [[1], [2]], "f_obs": [1]})",
      R"({"M": 1, "N": 1, "kernel": [[1]], "f_obs": ["x"]})",
      R"({"M": 1, "N": 1, "kernel": [[1]], "f_obs": [1], "sigma": [0]})",
      R"({"M": 1, "N": 1, "kernel": {"family": "gaussian"}, "f_obs": [1]})",
      R"({"M": 1, "N": 1, "kernel": {"family": "custom"}, "f_obs": [1]})",
      R"({"M": 0, "N": 1, "kernel": [], "f_obs": []})",
      R"({"M": 1, "N": 1, "kernel": [[1]], "f_obs": [1], "seed": -3})",
  };
  for (const char* text : bad) EXPECT_THROW(io::parse_dataset(text), SchemaError) << text;
}

TEST(ExperimentSpec, RoundTrip) {
  for (const ExperimentSpec& spec : {example1_spec(3), example2_spec(9)}) {
    const ExperimentSpec back = io::parse_experiment_spec(io::format_experiment_spec(spec));
    EXPECT_EQ(back.kernel_family, spec.kernel_family);
    EXPECT_EQ(back.rows, spec.rows);
    EXPECT_EQ(back.columns, spec.columns);
    EXPECT_EQ(back.noise_fraction, spec.noise_fraction);
    EXPECT_EQ(back.seed, spec.seed);
    EXPECT_EQ(back.measure_mode, spec.measure_mode);
    EXPECT_EQ(make_truth(back), make_truth(spec));
  }
}

TEST(ExperimentSpec, TabulatedAndCustom) {
  const std::string text = R"({"kernel_family": "custom", "M": 2, "N": 2, "noise_fraction": 0,
    "kernel": [[1, 0], [0, 1]], "truth": {"type": "tabulated", "p": [0.25, 0.75]}})";
  const ExperimentSpec spec = io::parse_experiment_spec(text);
  const Dataset d = generate(spec);
  EXPECT_EQ(d.f_obs[1], 0.75);
  EXPECT_FALSE(d.kernel_family.has_value());
  EXPECT_THROW(io::parse_experiment_spec(R"({"kernel_family": "custom", "M": 2, "N": 2,
    "noise_fraction": 0, "truth": {"type": "tabulated", "p": [1, 0]}})"),
               SchemaError);
  EXPECT_THROW(io::parse_experiment_spec(R"({"kernel_family": "exponential", "M": 2, "N": 2,
    "noise_fraction": 0, "truth": {"type": "spline"}})"),
               SchemaError);
  EXPECT_THROW(io::parse_experiment_spec(R"({"kernel_family": "exponential", "M": 2, "N": 2,
    "noise_fraction": -1, "truth": {"type": "tabulated", "p": [1, 0]}})"),
               SchemaError);
}

TEST(Pool, OneBasedOnDiskZeroBasedInMemory) {
  PreselectReport r;
  r.pool = {0, 4, 2};
  r.ratios = {1.0, 0.5, 0.25};
  r.threshold = 1e-8;
  const std::string text = io::format_pool(r, MeasureMode::uniform);
  EXPECT_NE(text.find("[\n    1,\n    5,\n    3\n  ]"), std::string::npos) << text;
  const io::PoolFile back = io::parse_pool(text);
  EXPECT_EQ(back.pool, r.pool);
  EXPECT_EQ(back.ratios, r.ratios);
  EXPECT_EQ(back.threshold, 1e-8);
  EXPECT_EQ(io::parse_pool("[3, 1]").pool, (std::vector<Index>{2, 0}));
  EXPECT_THROW(io::parse_pool("[0]"), SchemaError);
  EXPECT_THROW(io::parse_pool("[1, 1]"), SchemaError);
  EXPECT_THROW(io::parse_pool(R"({"ratios": []})"), SchemaError);
}

TEST(State, RoundTrip) {
  io::StateFile s{"prune", MeasureMode::inverse_variance, {6, 0, 3}, {0.25, -1e-300, 3.0}, 2.0};
  const io::StateFile back = io::parse_state(io::format_state(s));
  EXPECT_EQ(back.stage, s.stage);
  EXPECT_EQ(back.measure, s.measure);
  EXPECT_EQ(back.selected, s.selected);
  EXPECT_EQ(back.multipliers, s.multipliers);
  EXPECT_EQ(back.t, s.t);
  EXPECT_THROW(io::parse_state(R"({"stage": "fit", "measure": "uniform", "selected": [1, 2], "multipliers": [1]})"),
               SchemaError);
  EXPECT_THROW(io::parse_state(R"({"stage": "fit", "measure": "sigma", "selected": [], "multipliers": []})"),
               SchemaError);
}

TEST_F(TempDir, FilesAndMissingPaths) {
  const Dataset d = generate(example1_spec(2));
  const fs::path path = dir_ / "nested" / "data.json";
  io::write_dataset(d, path);
  EXPECT_EQ(io::read_dataset(path).f_obs, d.f_obs);
  EXPECT_THROW(io::read_dataset(dir_ / "missing.json"), IoError);
  EXPECT_THROW(io::read_pool(dir_ / "missing.json"), IoError);
}

}  // namespace
}  // namespace qmaxent
