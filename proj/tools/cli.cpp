#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmaxent/backward.hpp"
#include "qmaxent/distribution.hpp"
#include "qmaxent/errors.hpp"
#include "qmaxent/forward.hpp"
#include "qmaxent/io.hpp"
#include "qmaxent/preselect.hpp"
#include "qmaxent/synth.hpp"

namespace qmaxent::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string out_dir;
  bool no_timing = false;

  std::string spec;
  std::optional<std::uint64_t> seed;
  std::string data;
  std::string pool;
  std::string state;
  std::string out;
  std::string report;
  std::string data_out;
  std::string measure;
  double tol = kDefaultPreselectThreshold;
  double t = 1.1;
  double prune_t = 2.0;
  std::optional<Index> max_k;
  Index reorth_every = 0;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

fs::path output_path(const Options& opt, const std::string& path) {
  fs::path p(path);
  if (!opt.out_dir.empty() && p.is_relative()) return fs::path(opt.out_dir) / p;
  return p;
}

void write_report(const Options& opt, json report, const Stopwatch& clock) {
  if (opt.report.empty()) return;
  if (!opt.no_timing) report["timing"] = {{"seconds", clock.seconds()}};
  io::write_text(output_path(opt, opt.report), report.dump(2) + "\n");
}

json one_based(const std::vector<Index>& indices) {
  json out = json::array();
  for (Index i : indices) out.push_back(i + 1);
  return out;
}

MeasureMode choose_measure(const Options& opt, const Dataset& data) {
  return opt.measure.empty() ? default_measure_mode(data) : parse_measure_mode(opt.measure);
}

// Stopping bound from the dataset's sigma. Without sigma the bound is zero,
// which is only meaningful together with an explicit cap on k.
StopRule stop_rule(const Dataset& data, const Problem& problem, double t,
                   std::optional<Index> max_k) {
  if (data.sigma) return StopRule::from_sigma(t, *data.sigma, problem.measure(), max_k);
  if (!max_k) throw SchemaError("dataset has no sigma; the stopping bound needs sigma or --max-k");
  if (!(t > 0.0)) throw UsageError("stopping factor t must be positive");
  return StopRule{t, 0.0, max_k};
}

void check_indices(const std::vector<Index>& indices, Index rows, std::string_view what) {
  for (Index i : indices) {
    if (i >= rows) {
      throw SchemaError(std::string(what) + " index " + std::to_string(i + 1) +
                        " exceeds the dataset size " + std::to_string(rows));
    }
  }
}

json state_report(std::string_view stage, const Problem& problem, const BiorthState& state,
                  MeasureMode mode, double t, double residual2, double epsilon2) {
  json r;
  r["stage"] = stage;
  r["measure"] = to_string(mode);
  r["t"] = t;
  r["k"] = state.size();
  r["selected"] = one_based(state.selected);
  r["multipliers"] = state.lambdas;
  r["residual2"] = residual2;
  r["epsilon2"] = epsilon2;
  r["entropy"] = entropy_half(assemble(problem, state));
  return r;
}

ExperimentSpec load_spec(const Options& opt) {
  ExperimentSpec spec;
  if (opt.spec == "example1") {
    spec = example1_spec();
  } else if (opt.spec == "example2") {
    spec = example2_spec();
  } else {
    spec = io::read_experiment_spec(opt.spec);
  }
  if (opt.seed) spec.seed = *opt.seed;
  return spec;
}

int run_gen(const Options& opt, std::ostream& err) {
  Stopwatch clock;
  const ExperimentSpec spec = load_spec(opt);
  if (is_empty_truth(spec)) err << "warning: truth mixture has no components; p_true is zero\n";
  const Dataset data = generate(spec);
  io::write_dataset(data, output_path(opt, opt.out));
  json r;
  r["stage"] = "gen";
  r["M"] = spec.rows;
  r["N"] = spec.columns;
  r["seed"] = spec.seed;
  r["kernel_family"] = to_string(spec.kernel_family);
  r["noise_fraction"] = spec.noise_fraction;
  write_report(opt, std::move(r), clock);
  return kOk;
}

int run_preselect(const Options& opt, std::ostream& err) {
  Stopwatch clock;
  const Dataset data = io::read_dataset(opt.data);
  const MeasureMode mode = choose_measure(opt, data);
  const Problem problem(make_system(data, mode));
  const PreselectReport report = preselect(problem, opt.tol);
  if (report.status == PreselectStatus::all_alpha_zero) {
    err << "warning: every alpha vector is zero; the pool is empty\n";
  }
  io::write_text(output_path(opt, opt.out), io::format_pool(report, mode));
  json r;
  r["stage"] = "preselect";
  r["measure"] = to_string(mode);
  r["threshold"] = report.threshold;
  r["pool_size"] = report.pool.size();
  r["status"] = report.status == PreselectStatus::ok ? "ok" : "all_alpha_zero";
  write_report(opt, std::move(r), clock);
  return kOk;
}

int run_fit(const Options& opt, std::ostream&) {
  Stopwatch clock;
  const Dataset data = io::read_dataset(opt.data);
  const MeasureMode mode = choose_measure(opt, data);
  const Problem problem(make_system(data, mode));
  const StopRule stop = stop_rule(data, problem, opt.t, opt.max_k);

  std::optional<io::PoolFile> pool;
  if (!opt.pool.empty()) {
    pool = io::read_pool(opt.pool);
    check_indices(pool->pool, problem.rows(), "pool");
    if (pool->pool.empty()) throw DegeneracyError("candidate pool is empty");
  }
  const ForwardResult fit =
      pool ? fit_forward(problem, stop, std::span<const Index>(pool->pool),
                         ForwardOptions{opt.reorth_every})
           : fit_forward(problem, stop, std::nullopt, ForwardOptions{opt.reorth_every});

  io::StateFile sf{"fit", mode, fit.state.selected, fit.state.lambdas, opt.t};
  io::write_text(output_path(opt, opt.out), io::format_state(sf));
  json r = state_report("fit", problem, fit.state, mode, opt.t, fit.residual2, stop.epsilon_norm2);
  r["stop_reason"] = to_string(fit.reason);
  r["residual_history"] = fit.residual_history;
  if (pool) r["pool_size"] = pool->pool.size();
  write_report(opt, std::move(r), clock);
  return kOk;
}

int run_prune(const Options& opt, std::ostream&) {
  Stopwatch clock;
  const Dataset data = io::read_dataset(opt.data);
  const io::StateFile sf = io::read_state(opt.state);
  const Problem problem(make_system(data, sf.measure));
  check_indices(sf.selected, problem.rows(), "state");
  const StopRule stop = stop_rule(data, problem, opt.prune_t, std::nullopt);

  BiorthState state = replay(problem, sf.selected);
  const PruneResult pruned = prune(std::move(state), problem, stop);

  io::StateFile out{"prune", sf.measure, pruned.state.selected, pruned.state.lambdas, opt.prune_t};
  io::write_text(output_path(opt, opt.out), io::format_state(out));
  json r = state_report("prune", problem, pruned.state, sf.measure, opt.prune_t, pruned.residual2,
                        stop.epsilon_norm2);
  r["removed"] = one_based(pruned.removed);
  r["residual_history"] = pruned.residual_history;
  write_report(opt, std::move(r), clock);
  return kOk;
}

std::string csv_number(double v) { return io::format_number(v); }

int run_predict(const Options& opt, std::ostream&) {
  Stopwatch clock;
  const Dataset data = io::read_dataset(opt.data);
  const io::StateFile sf = io::read_state(opt.state);
  const Problem problem(make_system(data, sf.measure));
  check_indices(sf.selected, problem.rows(), "state");
  const BiorthState state = replay(problem, sf.selected);
  const HalfDistribution dist = assemble(problem, state);
  const Vector prob = dist.probabilities();
  const Vector fp = predict(problem.system(), dist);

  std::ostringstream csv;
  csv << "n,p_half,p\n";
  for (Index n = 0; n < dist.size(); ++n) {
    const auto e = static_cast<Eigen::Index>(n);
    csv << n + 1 << ',' << csv_number(dist.amplitudes()[e]) << ',' << csv_number(prob[e]) << '\n';
  }
  io::write_text(output_path(opt, opt.out), csv.str());

  if (!opt.data_out.empty()) {
    std::ostringstream dcsv;
    dcsv << "i,f_obs,f_pred" << (data.f_true ? ",f_true" : "") << ",sigma\n";
    for (Eigen::Index i = 0; i < fp.size(); ++i) {
      dcsv << i + 1 << ',' << csv_number(data.f_obs[i]) << ',' << csv_number(fp[i]);
      if (data.f_true) dcsv << ',' << csv_number((*data.f_true)[i]);
      dcsv << ',';
      if (data.sigma) dcsv << csv_number((*data.sigma)[i]);
      dcsv << '\n';
    }
    io::write_text(output_path(opt, opt.data_out), dcsv.str());
  }

  const Measure& mu = problem.measure();
  const double r2 = weighted_dist2(fp, data.f_obs, mu);
  json r = state_report("predict", problem, state, sf.measure, sf.t, r2,
                        data.sigma ? weighted_norm2(sf.t * *data.sigma, mu) : 0.0);
  r["normalization"] = dist.sum();
  if (data.f_true) {
    const double pred_err = weighted_dist2(fp, *data.f_true, mu);
    const double obs_err = weighted_dist2(data.f_obs, *data.f_true, mu);
    r["prediction_error_true"] = pred_err;
    r["observation_error_true"] = obs_err;
  }
  write_report(opt, std::move(r), clock);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Sparse q=1/2 maximum-entropy reconstruction from redundant noisy constraints",
               "qmaxent"};
  app.require_subcommand(1);
  app.add_option("--out-dir", opt.out_dir, "Directory for relative output paths");
  app.add_flag("--no-timing", opt.no_timing, "Omit wall-clock timing from reports");

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen->add_option("--spec", opt.spec, "Experiment spec file, or example1 / example2")->required();
  gen->add_option("--seed", opt.seed, "Override the spec seed");
  gen->add_option("--out", opt.out, "Dataset file to write")->required();
  gen->add_option("--report", opt.report, "Run report JSON");

  auto* pre = app.add_subcommand("preselect", "Data-independent redundancy filter");
  pre->add_option("--data", opt.data, "Dataset file")->required();
  pre->add_option("--tol", opt.tol, "Stop when the best ratio falls below this")
      ->capture_default_str();
  pre->add_option("--measure", opt.measure, "uniform | inverse-variance");
  pre->add_option("--out", opt.out, "Pool file to write")->required();
  pre->add_option("--report", opt.report, "Run report JSON");

  auto* fit = app.add_subcommand("fit", "Forward greedy selection");
  fit->add_option("--data", opt.data, "Dataset file")->required();
  fit->add_option("--pool", opt.pool, "Pool file restricting the candidates");
  fit->add_option("--t", opt.t, "Noise inflation factor for the stopping bound")
      ->capture_default_str();
  fit->add_option("--measure", opt.measure, "uniform | inverse-variance");
  fit->add_option("--max-k", opt.max_k, "Cap on the number of constraints");
  fit->add_option("--reorth-every", opt.reorth_every, "Gram re-solve period (0 = off)")
      ->capture_default_str();
  fit->add_option("--out", opt.out, "State file to write")->required();
  fit->add_option("--report", opt.report, "Run report JSON");

  auto* prn = app.add_subcommand("prune", "Backward multiplier removal");
  prn->add_option("--data", opt.data, "Dataset file")->required();
  prn->add_option("--state", opt.state, "State file from fit")->required();
  prn->add_option("--t", opt.prune_t, "Noise inflation factor for the stopping bound")
      ->capture_default_str();
  prn->add_option("--out", opt.out, "State file to write")->required();
  prn->add_option("--report", opt.report, "Run report JSON");

  auto* prd = app.add_subcommand("predict", "Assemble the distribution and predicted data");
  prd->add_option("--data", opt.data, "Dataset file")->required();
  prd->add_option("--state", opt.state, "State file")->required();
  prd->add_option("--out", opt.out, "Distribution CSV (n, p_half, p)")->required();
  prd->add_option("--data-out", opt.data_out, "Data CSV (i, f_obs, f_pred, f_true, sigma)");
  prd->add_option("--report", opt.report, "Run report JSON");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (gen->parsed()) return run_gen(opt, err);
    if (pre->parsed()) return run_preselect(opt, err);
    if (fit->parsed()) return run_fit(opt, err);
    if (prn->parsed()) return run_prune(opt, err);
    if (prd->parsed()) return run_predict(opt, err);
  } catch (const DegeneracyError& e) {
    err << "degenerate: " << e.what() << '\n';
    return kDegenerate;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const SchemaError& e) {
    err << "dataset error: " << e.what() << '\n';
    return kDataError;
  } catch (const IoError& e) {
    err << "dataset error: " << e.what() << '\n';
    return kDataError;
  } catch (const DimensionError& e) {
    err << "dataset error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kBadArguments;
}

}  // namespace qmaxent::cli
