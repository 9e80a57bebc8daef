#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swapfree/swapfree.h"

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kSolverFailure = 3 };

const std::vector<std::string> kHeuristics = {"perron-disc", "perron-conn", "laplacian-conn",
                                              "crand-disc",  "prand-disc",  "crand-conn",
                                              "prand-conn"};

struct Failure {
  int code;
  std::string message;
};

int exit_code(sf_status s) {
  switch (s) {
    case SF_OK: return kOk;
    case SF_SOLVER_FAILURE:
    case SF_INTERNAL_ERROR: return kSolverFailure;
    default: return kUsage;
  }
}

void check(sf_status s) {
  if (s != SF_OK) throw Failure{exit_code(s), sf_last_error()};
}

struct GraphDeleter {
  void operator()(sf_graph* g) const { sf_graph_free(g); }
};
struct ProblemDeleter {
  void operator()(sf_problem* p) const { sf_problem_free(p); }
};
struct CertificateDeleter {
  void operator()(sf_certificate* c) const { sf_certificate_free(c); }
};
using Graph = std::unique_ptr<sf_graph, GraphDeleter>;
using Problem = std::unique_ptr<sf_problem, ProblemDeleter>;
using Certificate = std::unique_ptr<sf_certificate, CertificateDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  sf_string_free(s);
  return out;
}

std::size_t default_jobs() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

struct Common {
  std::uint64_t seed = 0;
  std::size_t jobs = default_jobs();
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads (default: available cores)")
      ->check(CLI::PositiveNumber);
}

struct GraphInput {
  std::string file;
  std::string kind = "random";
  std::size_t n = 8;
  double density = 0.5;
};

void add_graph_input(CLI::App* cmd, GraphInput& g) {
  cmd->add_option("--graph", g.file, "Graph file ('n m' header, then 'i j' lines)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--graph-kind", g.kind, "Generated graph when --graph is absent")
      ->check(CLI::IsMember({"random", "complete", "path", "cycle", "star"}))
      ->capture_default_str();
  cmd->add_option("-n,--n", g.n, "Qubit count of a generated graph")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  cmd->add_option("--density", g.density, "Edge density of a random graph")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

Graph make_graph(const GraphInput& in, std::uint64_t seed) {
  sf_graph* g = nullptr;
  if (!in.file.empty()) check(sf_graph_read(in.file.c_str(), &g));
  else if (in.kind == "random") check(sf_graph_random(in.n, in.density, seed, &g));
  else check(sf_graph_named(in.kind.c_str(), in.n, &g));
  return Graph(g);
}

struct ProblemInput {
  std::string data;
  bool returns = false;
  std::optional<std::size_t> assets;
  std::size_t k = 2;
  double alpha = 1.0;
  double beta = 1.0;
};

void add_problem_input(CLI::App* cmd, ProblemInput& p) {
  cmd->add_option("--data", p.data, "Correlation CSV (label header) or returns CSV")
      ->check(CLI::ExistingFile);
  cmd->add_flag("--returns", p.returns, "Read --data as one asset per row of returns");
  cmd->add_option("--assets", p.assets, "Synthetic asset count (default n-2)");
  cmd->add_option("-k,--k", p.k, "Portfolio size")->capture_default_str();
  cmd->add_option("--alpha", p.alpha, "Weight of the similarity term")->capture_default_str();
  cmd->add_option("--beta", p.beta, "Weight of the diagonal term")->capture_default_str();
}

// Data draws use seed + 1 so the graph and the correlations are independent.
Problem make_problem(const ProblemInput& in, std::size_t n, std::uint64_t seed) {
  sf_problem* p = nullptr;
  if (!in.data.empty()) {
    check(sf_problem_load(in.data.c_str(), in.returns ? 1 : 0, n, in.k, in.alpha, in.beta, &p));
  } else {
    const auto m = in.assets.value_or(n > 2 ? n - 2 : n);
    check(sf_problem_synthetic(m, n, in.k, in.alpha, in.beta, seed + 1, &p));
  }
  return Problem(p);
}

std::vector<std::size_t> parse_permutation(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoul(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kUsage, "bad permutation entry '" + item + "'"};
    }
  }
  return out;
}

sf_metrics evaluate(const sf_problem* p, const sf_graph* g, const sf_certificate* c,
                    bool argmin, double rate) {
  sf_metrics m{};
  check(sf_evaluate(p, g, c, argmin ? 1 : 0, rate, &m));
  return m;
}

void print_row(const std::string& name, const sf_certificate* c, const sf_metrics& m) {
  std::printf("%-15s %12.8f %10.6f %10.6f %6zu  %s\n", name.c_str(), sf_certificate_lambda(c),
              m.lambda_norm, m.opt_gap, m.swaps, sf_certificate_status(c));
}

void print_header() {
  std::printf("%-15s %12s %10s %10s %6s  %s\n", "heuristic", "lambda", "lambda_norm", "opt_gap",
              "swaps", "status");
}

struct SolveArgs {
  Common common;
  GraphInput graph;
  ProblemInput problem;
  std::string heuristic = "perron-conn";
  std::string permutation;
  bool brute_force = false;
  bool force = false;
  std::size_t samples = 10;
  double tol = 1e-7;
  std::string certificate;
  bool argmin = false;
};

int cmd_solve(const SolveArgs& a) {
  auto g = make_graph(a.graph, a.common.seed);
  const auto n = sf_graph_size(g.get());
  auto p = make_problem(a.problem, n, a.common.seed);
  sf_certificate* raw = nullptr;
  std::string label;
  if (a.brute_force) {
    label = "brute-force";
    check(sf_solve_brute_force(p.get(), g.get(), a.force, a.common.jobs, a.tol, &raw));
  } else if (!a.permutation.empty()) {
    label = "fixed";
    const auto perm = parse_permutation(a.permutation);
    if (perm.size() != n) throw Failure{kUsage, "permutation needs " + std::to_string(n) +
                                                    " entries"};
    check(sf_solve_fixed(p.get(), g.get(), perm.data(), a.tol, &raw));
  } else {
    label = a.heuristic;
    check(sf_solve_heuristic(p.get(), g.get(), a.heuristic.c_str(), a.samples, a.common.seed,
                             a.tol, &raw));
  }
  Certificate c(raw);
  const auto m = evaluate(p.get(), g.get(), c.get(), a.argmin, 0.0033);
  std::vector<std::size_t> perm(n);
  check(sf_certificate_permutation(c.get(), perm.data()));
  std::printf("placement      %s\n", label.c_str());
  std::printf("permutation   ");
  for (auto v : perm) std::printf(" %zu", v);
  std::printf("\nlambda         %.10f\n", sf_certificate_lambda(c.get()));
  std::printf("lambda_norm    %.10f\n", m.lambda_norm);
  std::printf("dual_value     %.10f\n", sf_certificate_dual_value(c.get()));
  std::printf("certificate    %s (gap %.3g)\n", sf_certificate_status(c.get()),
              sf_certificate_gap(c.get()));
  std::printf("optimum        %.10f\n", m.optimum);
  std::printf("value          %.10f\n", m.algorithm_value);
  std::printf("opt_gap        %.10f\n", m.opt_gap);
  std::printf("swaps          %zu\n", m.swaps);
  if (!a.certificate.empty()) {
    char* json = nullptr;
    check(sf_certificate_to_json(c.get(), &json));
    std::FILE* f = std::fopen(a.certificate.c_str(), "wb");
    if (!f) throw Failure{kUsage, "cannot write '" + a.certificate + "'"};
    const auto text = take(json) + "\n";
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  if (std::string(sf_certificate_status(c.get())) == "infeasible")
    throw Failure{kSolverFailure, "solver reported infeasibility"};
  return kOk;
}

int cmd_heuristics(const SolveArgs& a, const std::vector<std::string>& only) {
  auto g = make_graph(a.graph, a.common.seed);
  auto p = make_problem(a.problem, sf_graph_size(g.get()), a.common.seed);
  print_header();
  for (const auto& name : only.empty() ? kHeuristics : only) {
    sf_certificate* raw = nullptr;
    check(sf_solve_heuristic(p.get(), g.get(), name.c_str(), a.samples, a.common.seed, a.tol,
                             &raw));
    Certificate c(raw);
    print_row(name, c.get(), evaluate(p.get(), g.get(), c.get(), a.argmin, 0.0033));
  }
  if (a.brute_force) {
    sf_certificate* raw = nullptr;
    check(sf_solve_brute_force(p.get(), g.get(), a.force, a.common.jobs, a.tol, &raw));
    Certificate c(raw);
    print_row("brute-force", c.get(), evaluate(p.get(), g.get(), c.get(), a.argmin, 0.0033));
  }
  return kOk;
}

int cmd_brute_force(const SolveArgs& a) {
  auto g = make_graph(a.graph, a.common.seed);
  auto p = make_problem(a.problem, sf_graph_size(g.get()), a.common.seed);
  sf_certificate* raw = nullptr;
  check(sf_solve_brute_force(p.get(), g.get(), a.force, a.common.jobs, a.tol, &raw));
  Certificate c(raw);
  print_header();
  print_row("brute-force", c.get(), evaluate(p.get(), g.get(), c.get(), a.argmin, 0.0033));
  if (!a.certificate.empty()) {
    char* json = nullptr;
    check(sf_certificate_to_json(c.get(), &json));
    std::FILE* f = std::fopen(a.certificate.c_str(), "wb");
    if (!f) throw Failure{kUsage, "cannot write '" + a.certificate + "'"};
    const auto text = take(json) + "\n";
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  return kOk;
}

struct BaselineArgs {
  SolveArgs solve;
  double rate = 0.0033;
};

int cmd_baseline(const BaselineArgs& b) {
  const auto& a = b.solve;
  auto g = make_graph(a.graph, a.common.seed);
  auto p = make_problem(a.problem, sf_graph_size(g.get()), a.common.seed);
  sf_certificate* raw = nullptr;
  check(sf_solve_heuristic(p.get(), g.get(), a.heuristic.c_str(), a.samples, a.common.seed,
                           a.tol, &raw));
  Certificate c(raw);
  const auto m = evaluate(p.get(), g.get(), c.get(), true, b.rate);
  std::printf("heuristic       %s\n", a.heuristic.c_str());
  std::printf("optimum         %.10f\n", m.optimum);
  std::printf("heuristic_value %.10f\n", m.algorithm_value);
  std::printf("heuristic_gap   %.10f\n", m.opt_gap);
  std::printf("swaps           %zu\n", m.swaps);
  std::printf("p               %.10f\n", m.p);
  std::printf("baseline_value  %.10f\n", m.baseline_value);
  std::printf("baseline_gap    %.10f\n", m.baseline_gap);
  return kOk;
}

struct GenGraphArgs {
  Common common;
  GraphInput graph;
  std::string out;
};

int cmd_gen_graph(const GenGraphArgs& a) {
  auto g = make_graph(a.graph, a.common.seed);
  char* text = nullptr;
  check(sf_graph_format(g.get(), &text));
  const auto s = take(text);
  if (a.out.empty()) {
    std::fputs(s.c_str(), stdout);
  } else {
    std::FILE* f = std::fopen(a.out.c_str(), "wb");
    if (!f) throw Failure{kUsage, "cannot write '" + a.out + "'"};
    std::fwrite(s.data(), 1, s.size(), f);
    std::fclose(f);
  }
  return kOk;
}

struct QcheckArgs {
  Common common;
  std::size_t n = 6;
  std::size_t k = 2;
  std::size_t trials = 20;
};

int cmd_qcheck(const QcheckArgs& a) {
  if (a.k > a.n) throw Failure{kUsage, "k must not exceed n"};
  sf_qcheck_report r{};
  check(sf_qcheck(a.n, a.k, a.trials, a.common.seed, &r));
  std::printf("trials             %zu\n", r.trials);
  std::printf("identity_residual  %.3e\n", r.identity_residual);
  std::printf("printed_residual   %.3e (informational)\n", r.printed_residual);
  std::printf("max_leakage        %.3e\n", r.leakage);
  std::printf("norm_drift         %.3e\n", r.norm_drift);
  std::printf("dicke_error        %.3e\n", r.dicke_error);
  std::printf("swap_error         %.3e\n", r.swap_error);
  std::printf("%s\n", r.passed ? "PASS" : "FAIL");
  return r.passed ? kOk : kViolation;
}

struct SweepArgs {
  Common common;
  std::string config;
  std::string out = "sweep.csv";
  std::string summary;
  std::optional<std::size_t> instances;
  std::optional<std::string> data;
};

void progress(std::size_t done, std::size_t total, void*) {
  std::fprintf(stderr, "\r%zu/%zu rows", done, total);
  if (done == total) std::fputc('\n', stderr);
}

int cmd_sweep(const SweepArgs& a, bool seed_given) {
  std::FILE* f = std::fopen(a.config.c_str(), "rb");
  if (!f) throw Failure{kUsage, "cannot open config '" + a.config + "'"};
  std::string text;
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, f)) > 0;) text.append(buf, got);
  std::fclose(f);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Failure{kUsage, std::string("config is not valid JSON: ") + e.what()};
  }
  if (seed_given) j["seed"] = a.common.seed;
  if (a.instances) j["instances"] = *a.instances;
  if (a.data) j["data_path"] = *a.data;
  j["jobs"] = a.common.jobs;
  const auto config = j.dump();
  std::size_t rows = 0;
  check(sf_sweep_validate(config.c_str(), &rows));
  std::fprintf(stderr, "sweep: %zu rows on %zu threads\n", rows, a.common.jobs);
  std::size_t written = 0;
  check(sf_sweep_run(config.c_str(), 0, a.out.c_str(),
                     a.summary.empty() ? nullptr : a.summary.c_str(), progress, nullptr,
                     &written));
  std::fprintf(stderr, "wrote %zu rows to %s\n", written, a.out.c_str());
  return kOk;
}

void add_solver_options(CLI::App* cmd, SolveArgs& a) {
  add_common(cmd, a.common);
  add_graph_input(cmd, a.graph);
  add_problem_input(cmd, a.problem);
  cmd->add_option("--samples", a.samples, "Relabelings tried by random heuristics")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol", a.tol, "Required primal-dual gap")->capture_default_str();
  cmd->add_flag("--argmin", a.argmin, "Score X by its exact minimizer instead of the top 1%");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit placement by operator-norm approximation of portfolio QUBOs"};
  app.set_version_flag("--version", std::string(sf_version()));
  app.require_subcommand(1);

  GenGraphArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-graph", "Write a hardware graph");
  add_common(gen_cmd, gen.common);
  add_graph_input(gen_cmd, gen.graph);
  gen_cmd->add_option("-o,--out", gen.out, "Output file (default stdout)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one placement and report its certificate");
  add_solver_options(solve_cmd, solve);
  solve_cmd->add_option("--heuristic", solve.heuristic, "Placement heuristic")
      ->check(CLI::IsMember(kHeuristics))
      ->capture_default_str();
  solve_cmd->add_option("--permutation", solve.permutation,
                        "Explicit placement: logical index per vertex, comma separated");
  solve_cmd->add_flag("--brute-force", solve.brute_force, "Minimize over every relabeling");
  solve_cmd->add_flag("--force", solve.force, "Allow brute force above 8 qubits");
  solve_cmd->add_option("--certificate", solve.certificate, "Write the certificate as JSON");

  SolveArgs heur;
  std::vector<std::string> only;
  auto* heur_cmd = app.add_subcommand("heuristics", "Compare the placement heuristics");
  add_solver_options(heur_cmd, heur);
  heur_cmd->add_option("--only", only, "Subset of heuristics")->check(CLI::IsMember(kHeuristics));
  heur_cmd->add_flag("--brute-force", heur.brute_force, "Append the brute-force optimum");
  heur_cmd->add_flag("--force", heur.force, "Allow brute force above 8 qubits");

  SolveArgs brute;
  auto* brute_cmd = app.add_subcommand("brute-force", "Minimize lambda over every relabeling");
  add_solver_options(brute_cmd, brute);
  brute_cmd->add_flag("--force", brute.force, "Allow more than 8 qubits");
  brute_cmd->add_option("--certificate", brute.certificate, "Write the certificate as JSON");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep from a JSON config");
  add_common(sweep_cmd, sweep.common);
  sweep_cmd->add_option("config", sweep.config, "Sweep config (JSON)")->required();
  sweep_cmd->add_option("-o,--out", sweep.out, "CSV output")->capture_default_str();
  sweep_cmd->add_option("--summary", sweep.summary, "Summary JSON output");
  sweep_cmd->add_option("--instances", sweep.instances, "Override instances per cell");
  sweep_cmd->add_option("--data", sweep.data, "Override the data file");

  QcheckArgs qc;
  auto* qc_cmd = app.add_subcommand("qcheck", "Check the cost and mixer identities");
  add_common(qc_cmd, qc.common);
  qc_cmd->add_option("-n,--n", qc.n, "Qubits")->check(CLI::Range(2, 14))->capture_default_str();
  qc_cmd->add_option("-k,--k", qc.k, "Excitations")->capture_default_str();
  qc_cmd->add_option("--trials", qc.trials, "Random trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  BaselineArgs base;
  auto* base_cmd = app.add_subcommand("baseline", "Noisy routed baseline against a heuristic");
  add_solver_options(base_cmd, base.solve);
  base_cmd->add_option("--heuristic", base.solve.heuristic, "Placement heuristic")
      ->check(CLI::IsMember(kHeuristics))
      ->capture_default_str();
  base_cmd->add_option("--cnot-error-rate", base.rate, "CNOT error rate")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen_graph(gen);
    if (*solve_cmd) return cmd_solve(solve);
    if (*heur_cmd) return cmd_heuristics(heur, only);
    if (*brute_cmd) return cmd_brute_force(brute);
    if (*sweep_cmd) return cmd_sweep(sweep, sweep_cmd->count("--seed") > 0);
    if (*qc_cmd) return cmd_qcheck(qc);
    if (*base_cmd) return cmd_baseline(base);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  }
  return kUsage;
}
