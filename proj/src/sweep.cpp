#include "swapfree/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <tuple>

#include <json.hpp>

#include "swapfree/bench.hpp"
#include "swapfree/error.hpp"
#include "swapfree/ingest.hpp"
#include "swapfree/parallel.hpp"
#include "swapfree/qsim.hpp"
#include "swapfree/rng.hpp"

namespace swapfree {
namespace {

constexpr const char* kBruteForceName = "brute-force";

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return s;
}

const char* to_string(AlgorithmValue v) {
  return v == AlgorithmValue::top_pool ? "top-pool" : "argmin";
}

const char* to_string(DataMode m) { return m == DataMode::correlation ? "correlation" : "returns"; }

bool brute_force_applies(const SweepConfig& c, std::size_t n) {
  return c.brute_force && (n <= kBruteForceCap || c.allow_large);
}

double effective_density(const SweepConfig& c, std::size_t n, double d, bool& clamped) {
  clamped = false;
  if (target_edge_count(n, d) + 1 >= n) return d;
  if (!c.clamp_density)
    fail(ErrorCode::infeasible, "density " + number(d) + " leaves no spanning tree at n=" +
                                    std::to_string(n));
  clamped = true;
  return min_connected_density(n);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now() - since).count();
}

std::vector<ExperimentRecord> instance_rows(const SweepConfig& config, const CsvMatrix* data,
                                            std::size_t n, double density,
                                            std::size_t instance, std::size_t instance_id) {
  std::vector<std::string> names;
  for (auto h : config.heuristics) names.emplace_back(to_string(h));
  if (brute_force_applies(config, n)) names.emplace_back(kBruteForceName);

  ExperimentRecord base;
  base.instance_id = instance_id;
  base.n = n;
  base.density = density;
  base.k = config.k;

  std::vector<ExperimentRecord> rows;
  auto error_rows = [&](const std::string& msg) {
    rows.clear();
    for (const auto& name : names) {
      auto r = base;
      r.heuristic = name;
      r.status = "error:" + sanitize(msg);
      rows.push_back(std::move(r));
    }
    return rows;
  };

  bool clamped = false;
  ProblemMatrix problem;
  HardwareGraph g;
  double optimum = 0.0, chat_norm = 0.0;
  try {
    const double d = effective_density(config, n, density, clamped);
    g = random_connected_graph(n, d, mix_seed(config.seed, n, 2 * instance));
    const auto data_seed = mix_seed(config.seed, n, 2 * instance + 1);
    const auto m = config.asset_count(n);
    Matrix corr;
    std::vector<std::string> labels;
    if (data) {
      std::vector<std::size_t> pick(data->labels.size());
      for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
      SplitMix64 rng(data_seed);
      shuffle(pick, rng);
      pick.resize(m);
      std::sort(pick.begin(), pick.end());
      corr = select_assets(data->values, pick);
      for (auto i : pick) labels.push_back(data->labels[i]);
    } else {
      corr = synthetic_correlation(m, data_seed);
    }
    auto sim = similarity_from_correlation(corr, std::move(labels));
    problem = build_problem_matrix(sim, config.alpha, config.beta, config.k, n);
    chat_norm = operator_norm(problem.chat);
    optimum = idealized_qaoa_solve(asset_block(problem.chat, m), config.k).value;
  } catch (const std::exception& e) {
    return error_rows(e.what());
  }

  HeuristicOptions hopt;
  hopt.samples = config.samples;
  hopt.seed = mix_seed(mix_seed(config.seed, n, 2 * instance), 1);
  hopt.sdp.tol = config.tol;

  auto metrics = [&](ExperimentRecord& r, const SdpCertificate& cert) {
    r.lambda = cert.lambda;
    r.lambda_norm = chat_norm > 0.0 ? cert.lambda / chat_norm : 0.0;
    r.permutation = cert.permutation.map();
    const auto m = problem.assets();
    const auto x = asset_block(cert.x, m);
    const auto chat = asset_block(problem.chat, m);
    const double value = config.algorithm_value == AlgorithmValue::top_pool
                             ? top_pool_value(x, chat, config.k)
                             : argmin_value(x, chat, config.k);
    r.opt_gap = optimality_gap(value, optimum);
    r.swaps = estimate_swap_count(problem.chat, g, cert.permutation);
    const auto noise = make_noise_model(config.cnot_error_rate, r.swaps);
    r.p = noise.p;
    r.baseline_value = baseline_expected_value(problem.chat, noise, optimum);
    r.baseline_gap = optimality_gap(r.baseline_value, optimum);
    r.status = swapfree::to_string(cert.status);
    if (clamped) r.status += ";clamped";
  };

  std::vector<Permutation> hints;
  for (auto h : config.heuristics) {
    auto r = base;
    r.heuristic = std::string(to_string(h));
    const auto start = std::chrono::steady_clock::now();
    try {
      auto placement = run_heuristic(h, problem, g, hopt);
      metrics(r, placement.certificate);
      hints.push_back(placement.permutation);
    } catch (const std::exception& e) {
      r.status = "error:" + sanitize(e.what());
    }
    r.wall_ms = elapsed_ms(start);
    rows.push_back(std::move(r));
  }
  if (brute_force_applies(config, n)) {
    auto r = base;
    r.heuristic = kBruteForceName;
    const auto start = std::chrono::steady_clock::now();
    try {
      BruteForceOptions bopt;
      bopt.sdp = hopt.sdp;
      bopt.allow_large = config.allow_large;
      bopt.hints = std::move(hints);
      metrics(r, brute_force_permutations(problem.chat, g, bopt));
    } catch (const std::exception& e) {
      r.status = "error:" + sanitize(e.what());
    }
    r.wall_ms = elapsed_ms(start);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::optional<CsvMatrix> load_data(const SweepConfig& config) {
  if (config.data_path.empty()) return std::nullopt;
  auto data = load_correlation(config.data_path, config.data_mode);
  if (data.labels.size() != static_cast<std::size_t>(data.values.rows()))
    fail(ErrorCode::io, "data file labels do not match its matrix");
  std::size_t largest = 0;
  for (auto n : config.n_values) largest = std::max(largest, config.asset_count(n));
  if (data.labels.size() < largest)
    fail(ErrorCode::invalid_argument, "data file has " + std::to_string(data.labels.size()) +
                                          " assets, the sweep needs " + std::to_string(largest));
  return data;
}

}  // namespace

std::size_t SweepConfig::asset_count(std::size_t n) const {
  if (assets) return *assets;
  return n > 2 ? n - 2 : n;
}

std::size_t SweepConfig::row_count() const {
  std::size_t rows = 0;
  for (auto n : n_values)
    rows += densities.size() * instances * (heuristics.size() + (brute_force_applies(*this, n)));
  return rows;
}

void validate(const SweepConfig& c) {
  require(!c.n_values.empty(), "n_values must not be empty");
  require(!c.densities.empty(), "densities must not be empty");
  require(c.instances >= 1, "instances must be at least 1");
  require(c.samples >= 1, "samples must be at least 1");
  require(c.jobs >= 1, "jobs must be at least 1");
  require(!c.heuristics.empty() || c.brute_force, "no heuristics selected");
  require(c.alpha > 0.0, "alpha must be positive");
  require(c.tol > 0.0, "tol must be positive");
  require(c.cnot_error_rate >= 0.0 && c.cnot_error_rate < 1.0,
          "cnot_error_rate must lie in [0, 1)");
  for (double d : c.densities) require(d > 0.0 && d <= 1.0, "densities must lie in (0, 1]");
  for (auto n : c.n_values) {
    require(n >= 2, "n values must be at least 2");
    require(n <= 64, "n values above 64 are not supported");
    const auto m = c.asset_count(n);
    require(m >= 1 && m <= n, "asset count must lie in [1, n] for n=" + std::to_string(n));
    require(c.k >= 1 && c.k <= m,
            "k must lie in [1, assets] for n=" + std::to_string(n));
    require(binomial(m, c.k) <= kEnumerationCap,
            "C(" + std::to_string(m) + ", " + std::to_string(c.k) +
                ") exceeds the enumeration cap");
  }
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");
  SweepConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& key = it.key();
      const auto& v = it.value();
      if (key == "n_values") c.n_values = v.get<std::vector<std::size_t>>();
      else if (key == "densities") c.densities = v.get<std::vector<double>>();
      else if (key == "k") c.k = v.get<std::size_t>();
      else if (key == "instances") c.instances = v.get<std::size_t>();
      else if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "beta") c.beta = v.get<double>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "samples") c.samples = v.get<std::size_t>();
      else if (key == "assets") c.assets = v.get<std::size_t>();
      else if (key == "data_path") c.data_path = v.get<std::string>();
      else if (key == "cnot_error_rate") c.cnot_error_rate = v.get<double>();
      else if (key == "clamp_density") c.clamp_density = v.get<bool>();
      else if (key == "allow_large") c.allow_large = v.get<bool>();
      else if (key == "tol") c.tol = v.get<double>();
      else if (key == "jobs") c.jobs = v.get<std::size_t>();
      else if (key == "data_mode") {
        const auto s = v.get<std::string>();
        require(s == "correlation" || s == "returns", "data_mode must be correlation or returns");
        c.data_mode = s == "correlation" ? DataMode::correlation : DataMode::returns;
      } else if (key == "algorithm_value") {
        const auto s = v.get<std::string>();
        require(s == "top-pool" || s == "argmin", "algorithm_value must be top-pool or argmin");
        c.algorithm_value = s == "top-pool" ? AlgorithmValue::top_pool : AlgorithmValue::argmin;
      } else if (key == "heuristics") {
        c.heuristics.clear();
        c.brute_force = false;
        for (const auto& name : v.get<std::vector<std::string>>()) {
          if (name == kBruteForceName) {
            c.brute_force = true;
          } else if (auto h = parse_heuristic(name)) {
            c.heuristics.push_back(*h);
          } else {
            fail(ErrorCode::invalid_argument, "unknown heuristic '" + name + "'");
          }
        }
      } else {
        fail(ErrorCode::invalid_argument, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::invalid_argument, std::string("config has a wrongly typed value: ") +
                                          e.what());
  }
  validate(c);
  return c;
}

std::string sweep_config_to_json(const SweepConfig& c) {
  nlohmann::json j;
  j["n_values"] = c.n_values;
  j["densities"] = c.densities;
  j["k"] = c.k;
  j["instances"] = c.instances;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  std::vector<std::string> names;
  for (auto h : c.heuristics) names.emplace_back(to_string(h));
  if (c.brute_force) names.emplace_back(kBruteForceName);
  j["heuristics"] = names;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  if (c.assets) j["assets"] = *c.assets;
  if (!c.data_path.empty()) j["data_path"] = c.data_path;
  j["data_mode"] = to_string(c.data_mode);
  j["algorithm_value"] = to_string(c.algorithm_value);
  j["cnot_error_rate"] = c.cnot_error_rate;
  j["clamp_density"] = c.clamp_density;
  j["allow_large"] = c.allow_large;
  j["tol"] = c.tol;
  j["jobs"] = c.jobs;
  return j.dump(2);
}

std::string csv_header() {
  return "instance_id,n,density,k,heuristic,lambda,lambda_norm,opt_gap,swaps,p,baseline_value,"
         "status,wall_ms";
}

std::string to_csv_row(const ExperimentRecord& r) {
  std::string out = std::to_string(r.instance_id) + ',' + std::to_string(r.n) + ',' +
                    number(r.density) + ',' + std::to_string(r.k) + ',' + r.heuristic + ',';
  if (r.status.rfind("error:", 0) == 0) {
    out += ",,,,,," + r.status;
  } else {
    out += number(r.lambda) + ',' + number(r.lambda_norm) + ',' + number(r.opt_gap) + ',' +
           std::to_string(r.swaps) + ',' + number(r.p) + ',' + number(r.baseline_value) + ',' +
           r.status;
  }
  char ms[32];
  std::snprintf(ms, sizeof ms, ",%.3f", r.wall_ms);
  return out + ms;
}

std::vector<ExperimentRecord> run_instance(const SweepConfig& config, std::size_t n,
                                           double density, std::size_t instance,
                                           std::size_t instance_id) {
  validate(config);
  const auto data = load_data(config);
  return instance_rows(config, data ? &*data : nullptr, n, density, instance, instance_id);
}

std::vector<ExperimentRecord> run_sweep(
    const SweepConfig& config, const std::function<void(const ExperimentRecord&)>& sink) {
  validate(config);
  const auto data = load_data(config);

  struct Cell {
    std::size_t n;
    double density;
    std::size_t instance;
  };
  std::vector<Cell> cells;
  for (auto n : config.n_values)
    for (double d : config.densities)
      for (std::size_t i = 0; i < config.instances; ++i) cells.push_back({n, d, i});

  std::vector<std::vector<ExperimentRecord>> done(cells.size());
  std::vector<bool> ready(cells.size(), false);
  std::size_t next_to_emit = 0;
  std::mutex mutex;

  parallel_for(cells.size(), config.jobs, [&](std::size_t id) {
    const auto& c = cells[id];
    auto rows = instance_rows(config, data ? &*data : nullptr, c.n, c.density, c.instance, id);
    std::lock_guard lock(mutex);
    done[id] = std::move(rows);
    ready[id] = true;
    while (next_to_emit < cells.size() && ready[next_to_emit]) {
      if (sink)
        for (const auto& r : done[next_to_emit]) sink(r);
      ++next_to_emit;
    }
  });

  std::vector<ExperimentRecord> out;
  out.reserve(config.row_count());
  for (auto& rows : done)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

std::string summarize(const std::vector<ExperimentRecord>& records) {
  struct Acc {
    std::size_t count = 0, errors = 0;
    double lambda = 0, lambda_norm = 0, opt_gap = 0, swaps = 0, p = 0, baseline = 0, bgap = 0;
  };
  // First-appearance order of heuristics keeps the output stable and readable.
  std::vector<std::string> order;
  std::map<std::tuple<std::size_t, double, std::size_t>, Acc> cells;
  for (const auto& r : records) {
    auto it = std::find(order.begin(), order.end(), r.heuristic);
    const auto h = static_cast<std::size_t>(it - order.begin());
    if (it == order.end()) order.push_back(r.heuristic);
    auto& a = cells[{r.n, r.density, h}];
    if (r.status.rfind("error:", 0) == 0) {
      ++a.errors;
      continue;
    }
    ++a.count;
    a.lambda += r.lambda;
    a.lambda_norm += r.lambda_norm;
    a.opt_gap += r.opt_gap;
    a.swaps += static_cast<double>(r.swaps);
    a.p += r.p;
    a.baseline += r.baseline_value;
    a.bgap += r.baseline_gap;
  }
  auto rows = nlohmann::json::array();
  for (const auto& [key, a] : cells) {
    nlohmann::json j;
    j["n"] = std::get<0>(key);
    j["density"] = std::get<1>(key);
    j["heuristic"] = order[std::get<2>(key)];
    j["count"] = a.count;
    j["errors"] = a.errors;
    if (a.count > 0) {
      const double c = static_cast<double>(a.count);
      j["mean_lambda"] = a.lambda / c;
      j["mean_lambda_norm"] = a.lambda_norm / c;
      j["mean_opt_gap"] = a.opt_gap / c;
      j["mean_swaps"] = a.swaps / c;
      j["mean_p"] = a.p / c;
      j["mean_baseline_value"] = a.baseline / c;
      j["mean_baseline_gap"] = a.bgap / c;
    }
    rows.push_back(std::move(j));
  }
  nlohmann::json out;
  out["cells"] = std::move(rows);
  return out.dump(2);
}

}  // namespace swapfree
