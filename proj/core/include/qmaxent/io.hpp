#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qmaxent/model.hpp"
#include "qmaxent/preselect.hpp"
#include "qmaxent/synth.hpp"

namespace qmaxent::io {

// All indices in files are 1-based. Every reader throws SchemaError on
// malformed input.

Dataset parse_dataset(std::string_view json_text);
std::string format_dataset(const Dataset& data);
Dataset read_dataset(const std::filesystem::path& path);
void write_dataset(const Dataset& data, const std::filesystem::path& path);

ExperimentSpec parse_experiment_spec(std::string_view json_text);
std::string format_experiment_spec(const ExperimentSpec& spec);
ExperimentSpec read_experiment_spec(const std::filesystem::path& path);

struct PoolFile {
  std::vector<Index> pool;  // 0-based in memory
  std::vector<double> ratios;
  double threshold = 0.0;
  std::string measure;
};

std::string format_pool(const PreselectReport& report, MeasureMode mode);
PoolFile parse_pool(std::string_view json_text);
PoolFile read_pool(const std::filesystem::path& path);

struct StateFile {
  std::string stage;  // "fit" or "prune"
  MeasureMode measure = MeasureMode::uniform;
  std::vector<Index> selected;  // 0-based in memory
  std::vector<double> multipliers;
  double t = 1.0;
};

std::string format_state(const StateFile& state);
StateFile parse_state(std::string_view json_text);
StateFile read_state(const std::filesystem::path& path);

/// Shortest decimal text that round-trips the double.
std::string format_number(double value);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace qmaxent::io
