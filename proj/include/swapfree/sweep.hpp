#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swapfree/approx.hpp"
#include "swapfree/io.hpp"
#include "swapfree/placement.hpp"

namespace swapfree {

enum class AlgorithmValue {
  top_pool,  // best Chat value among the top 1% selections ranked by X
  argmin,    // Chat value of the exact minimizer of X
};

struct SweepConfig {
  std::vector<std::size_t> n_values{8};
  std::vector<double> densities{0.5};
  std::size_t k = 2;
  std::size_t instances = 1;
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<HeuristicKind> heuristics = all_heuristics();
  bool brute_force = false;
  bool allow_large = false;  // brute force above kBruteForceCap
  std::uint64_t seed = 0;
  std::size_t samples = 10;
  std::optional<std::size_t> assets;  // per instance; default n - 2
  std::string data_path;              // empty: synthetic factor-model correlations
  DataMode data_mode = DataMode::correlation;
  AlgorithmValue algorithm_value = AlgorithmValue::top_pool;
  double cnot_error_rate = 0.0033;
  bool clamp_density = true;  // raise densities below the spanning-tree threshold
  double tol = 1e-7;
  std::size_t jobs = 1;

  std::size_t asset_count(std::size_t n) const;
  std::size_t row_count() const;
};

/// Throws invalid_argument with a description of the first problem found.
void validate(const SweepConfig& config);

/// Keys mirror the field names; heuristic names follow the CLI spelling plus
/// "brute-force". Unknown keys are rejected.
SweepConfig parse_sweep_config(const std::string& json_text);
std::string sweep_config_to_json(const SweepConfig& config);

struct ExperimentRecord {
  std::size_t instance_id = 0;
  std::size_t n = 0;
  double density = 0.0;  // as requested; see status for clamping
  std::size_t k = 0;
  std::string heuristic;
  double lambda = 0.0;
  double lambda_norm = 0.0;
  double opt_gap = 0.0;
  std::size_t swaps = 0;
  double p = 0.0;
  double baseline_value = 0.0;
  double baseline_gap = 0.0;
  std::string status;  // sdp status, ";clamped" when the density was raised, or "error:..."
  double wall_ms = 0.0;
  std::vector<std::size_t> permutation;
};

std::string csv_header();
std::string to_csv_row(const ExperimentRecord& r);

/// Every record of one instance; failures are reported through `status`.
std::vector<ExperimentRecord> run_instance(const SweepConfig& config, std::size_t n,
                                           double density, std::size_t instance,
                                           std::size_t instance_id);

/// Runs every (n, density, instance) cell on config.jobs threads. `sink`
/// receives the records in instance-id order, each instance as soon as all
/// earlier ones are done.
std::vector<ExperimentRecord> run_sweep(
    const SweepConfig& config,
    const std::function<void(const ExperimentRecord&)>& sink = {});

/// Per-(n, density, heuristic) means of lambda, lambda_norm, opt_gap, swaps,
/// p, baseline_value and baseline_gap over rows without errors, as JSON.
std::string summarize(const std::vector<ExperimentRecord>& records);

}  // namespace swapfree
