#include "qmaxent/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmaxent/errors.hpp"

namespace qmaxent::io {

using nlohmann::json;

namespace {

constexpr std::string_view kDatasetFormat = "qmaxent-dataset/1";
constexpr std::string_view kPoolFormat = "qmaxent-pool/1";
constexpr std::string_view kStateFormat = "qmaxent-state/1";

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw SchemaError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const json& field(const json& obj, const char* key, std::string_view what) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(std::string(what) + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double number(const json& v, std::string_view what) {
  if (!v.is_number()) throw SchemaError(std::string(what) + ": expected a number");
  return v.get<double>();
}

Index count(const json& v, std::string_view what) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw SchemaError(std::string(what) + ": expected a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Vector vector_of(const json& v, Index expected, std::string_view what) {
  if (!v.is_array()) throw SchemaError(std::string(what) + ": expected an array");
  if (v.size() != expected) {
    throw SchemaError(std::string(what) + ": expected " + std::to_string(expected) +
                      " entries, found " + std::to_string(v.size()));
  }
  Vector out(static_cast<Eigen::Index>(expected));
  for (Index i = 0; i < expected; ++i) out[static_cast<Eigen::Index>(i)] = number(v[i], what);
  return out;
}

json array_of(const VectorView& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::vector<Index> indices_of(const json& v, std::string_view what) {
  if (!v.is_array()) throw SchemaError(std::string(what) + ": expected an array of indices");
  std::vector<Index> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    const Index i = count(e, what) - 1;
    if (std::find(out.begin(), out.end(), i) != out.end()) {
      throw SchemaError(std::string(what) + ": repeated index " + std::to_string(i + 1));
    }
    out.push_back(i);
  }
  return out;
}

json one_based(const std::vector<Index>& indices) {
  json out = json::array();
  for (Index i : indices) out.push_back(i + 1);
  return out;
}

Matrix kernel_of(const json& v, Index rows, Index cols) {
  if (v.is_object()) {
    const auto& family = field(v, "family", "kernel");
    if (!family.is_string()) throw SchemaError("kernel.family must be a string");
    KernelFamily f;
    try {
      f = parse_kernel_family(family.get<std::string>());
    } catch (const UsageError& e) {
      throw SchemaError(std::string("kernel: ") + e.what());
    }
    if (f == KernelFamily::custom) throw SchemaError("kernel: custom kernels must be given inline");
    return make_kernel(f, rows, cols);
  }
  if (!v.is_array() || v.size() != rows) {
    throw SchemaError("kernel: expected " + std::to_string(rows) + " rows");
  }
  Matrix k(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Index r = 0; r < rows; ++r) {
    k.row(static_cast<Eigen::Index>(r)) = vector_of(v[r], cols, "kernel row").transpose();
  }
  return k;
}

json kernel_json(const Matrix& k) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < k.rows(); ++r) rows.push_back(array_of(k.row(r).transpose()));
  return rows;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

Dataset parse_dataset(std::string_view json_text) {
  const json doc = parse_json(json_text, "dataset");
  if (!doc.is_object()) throw SchemaError("dataset: expected a JSON object");
  const Index rows = count(field(doc, "M", "dataset"), "dataset.M");
  const Index cols = count(field(doc, "N", "dataset"), "dataset.N");

  Dataset data;
  const json& kernel = field(doc, "kernel", "dataset");
  data.kernel = kernel_of(kernel, rows, cols);
  if (kernel.is_object()) data.kernel_family = kernel.at("family").get<std::string>();
  data.f_obs = vector_of(field(doc, "f_obs", "dataset"), rows, "dataset.f_obs");
  if (doc.contains("sigma") && !doc["sigma"].is_null()) {
    data.sigma = vector_of(doc["sigma"], rows, "dataset.sigma");
    for (Eigen::Index i = 0; i < data.sigma->size(); ++i) {
      if (!((*data.sigma)[i] > 0.0)) throw SchemaError("dataset.sigma: entries must be positive");
    }
  }
  if (doc.contains("f_true") && !doc["f_true"].is_null()) {
    data.f_true = vector_of(doc["f_true"], rows, "dataset.f_true");
  }
  if (doc.contains("p_true") && !doc["p_true"].is_null()) {
    data.p_true = vector_of(doc["p_true"], cols, "dataset.p_true");
  }
  if (doc.contains("seed") && !doc["seed"].is_null()) {
    if (!doc["seed"].is_number_unsigned()) throw SchemaError("dataset.seed: expected an unsigned integer");
    data.seed = doc["seed"].get<std::uint64_t>();
  }
  return data;
}

std::string format_dataset(const Dataset& data) {
  json doc;
  doc["format"] = kDatasetFormat;
  doc["M"] = data.kernel.rows();
  doc["N"] = data.kernel.cols();
  if (data.kernel_family) {
    doc["kernel"] = json{{"family", *data.kernel_family}};
  } else {
    doc["kernel"] = kernel_json(data.kernel);
  }
  doc["f_obs"] = array_of(data.f_obs);
  if (data.sigma) doc["sigma"] = array_of(*data.sigma);
  if (data.f_true) doc["f_true"] = array_of(*data.f_true);
  if (data.p_true) doc["p_true"] = array_of(*data.p_true);
  if (data.seed) doc["seed"] = *data.seed;
  return doc.dump(1) + "\n";
}

Dataset read_dataset(const std::filesystem::path& path) { return parse_dataset(read_text(path)); }

void write_dataset(const Dataset& data, const std::filesystem::path& path) {
  write_text(path, format_dataset(data));
}

ExperimentSpec parse_experiment_spec(std::string_view json_text) {
  const json doc = parse_json(json_text, "experiment spec");
  if (!doc.is_object()) throw SchemaError("experiment spec: expected a JSON object");
  ExperimentSpec spec;
  try {
    spec.kernel_family =
        parse_kernel_family(field(doc, "kernel_family", "experiment spec").get<std::string>());
    spec.rows = count(field(doc, "M", "experiment spec"), "spec.M");
    spec.columns = count(field(doc, "N", "experiment spec"), "spec.N");
    spec.noise_fraction = number(field(doc, "noise_fraction", "experiment spec"), "spec.noise_fraction");
    if (doc.contains("seed")) {
      if (!doc["seed"].is_number_unsigned()) throw SchemaError("spec.seed: expected an unsigned integer");
      spec.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("measure_mode")) {
      spec.measure_mode = parse_measure_mode(doc["measure_mode"].get<std::string>());
    }
    if (spec.kernel_family == KernelFamily::custom) {
      spec.custom_kernel = kernel_of(field(doc, "kernel", "experiment spec"), spec.rows, spec.columns);
    }
    const json& truth = field(doc, "truth", "experiment spec");
    const std::string type = field(truth, "type", "spec.truth").get<std::string>();
    if (type == "gaussian_mixture") {
      GaussianMixture mix;
      if (truth.contains("total")) mix.total = number(truth["total"], "spec.truth.total");
      const json& comps = field(truth, "components", "spec.truth");
      if (!comps.is_array()) throw SchemaError("spec.truth.components: expected an array");
      for (const auto& c : comps) {
        mix.components.push_back({number(field(c, "weight", "component"), "component.weight"),
                                  number(field(c, "center", "component"), "component.center"),
                                  number(field(c, "width", "component"), "component.width")});
      }
      spec.truth = std::move(mix);
    } else if (type == "tabulated") {
      spec.truth = TabulatedTruth{vector_of(field(truth, "p", "spec.truth"), spec.columns, "spec.truth.p")};
    } else {
      throw SchemaError("spec.truth.type: unknown truth type '" + type + "'");
    }
    spec.validate();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("experiment spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("experiment spec: ") + e.what());
  }
  return spec;
}

std::string format_experiment_spec(const ExperimentSpec& spec) {
  json doc;
  doc["kernel_family"] = to_string(spec.kernel_family);
  doc["M"] = spec.rows;
  doc["N"] = spec.columns;
  doc["noise_fraction"] = spec.noise_fraction;
  doc["seed"] = spec.seed;
  doc["measure_mode"] = to_string(spec.measure_mode);
  if (spec.custom_kernel) doc["kernel"] = kernel_json(*spec.custom_kernel);
  if (const auto* mix = std::get_if<GaussianMixture>(&spec.truth)) {
    json comps = json::array();
    for (const auto& c : mix->components) {
      comps.push_back({{"weight", c.weight}, {"center", c.center}, {"width", c.width}});
    }
    doc["truth"] = {{"type", "gaussian_mixture"}, {"total", mix->total}, {"components", comps}};
  } else {
    doc["truth"] = {{"type", "tabulated"}, {"p", array_of(std::get<TabulatedTruth>(spec.truth).p)}};
  }
  return doc.dump(2) + "\n";
}

ExperimentSpec read_experiment_spec(const std::filesystem::path& path) {
  return parse_experiment_spec(read_text(path));
}

std::string format_pool(const PreselectReport& report, MeasureMode mode) {
  json doc;
  doc["format"] = kPoolFormat;
  doc["threshold"] = report.threshold;
  doc["measure"] = to_string(mode);
  doc["status"] = report.status == PreselectStatus::ok ? "ok" : "all_alpha_zero";
  doc["pool"] = one_based(report.pool);
  doc["ratios"] = report.ratios;
  return doc.dump(2) + "\n";
}

PoolFile parse_pool(std::string_view json_text) {
  const json doc = parse_json(json_text, "pool");
  PoolFile pool;
  try {
    if (doc.is_array()) {
      pool.pool = indices_of(doc, "pool");
      return pool;
    }
    pool.pool = indices_of(field(doc, "pool", "pool"), "pool.pool");
    if (doc.contains("ratios")) pool.ratios = doc["ratios"].get<std::vector<double>>();
    if (doc.contains("threshold")) pool.threshold = number(doc["threshold"], "pool.threshold");
    if (doc.contains("measure")) pool.measure = doc["measure"].get<std::string>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("pool: ") + e.what());
  }
  return pool;
}

PoolFile read_pool(const std::filesystem::path& path) { return parse_pool(read_text(path)); }

std::string format_state(const StateFile& state) {
  json doc;
  doc["format"] = kStateFormat;
  doc["stage"] = state.stage;
  doc["measure"] = to_string(state.measure);
  doc["t"] = state.t;
  doc["selected"] = one_based(state.selected);
  doc["multipliers"] = state.multipliers;
  return doc.dump(2) + "\n";
}

StateFile parse_state(std::string_view json_text) {
  const json doc = parse_json(json_text, "state");
  StateFile state;
  try {
    state.stage = field(doc, "stage", "state").get<std::string>();
    state.measure = parse_measure_mode(field(doc, "measure", "state").get<std::string>());
    state.selected = indices_of(field(doc, "selected", "state"), "state.selected");
    if (doc.contains("multipliers")) state.multipliers = doc["multipliers"].get<std::vector<double>>();
    if (doc.contains("t")) state.t = number(doc["t"], "state.t");
    if (doc.contains("multipliers") && state.multipliers.size() != state.selected.size()) {
      throw SchemaError("state: multipliers and selected differ in length");
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("state: ") + e.what());
  } catch (const UsageError& e) {
    throw SchemaError(std::string("state: ") + e.what());
  }
  return state;
}

StateFile read_state(const std::filesystem::path& path) { return parse_state(read_text(path)); }

}  // namespace qmaxent::io
