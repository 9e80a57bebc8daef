#include "swapfree/swapfree.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "swapfree/approx.hpp"
#include "swapfree/bench.hpp"
#include "swapfree/error.hpp"
#include "swapfree/ingest.hpp"
#include "swapfree/io.hpp"
#include "swapfree/placement.hpp"
#include "swapfree/qsim.hpp"
#include "swapfree/sweep.hpp"

struct sf_graph {
  swapfree::HardwareGraph g;
};

struct sf_problem {
  swapfree::ProblemMatrix p;
};

struct sf_certificate {
  swapfree::SdpCertificate c;
};

namespace {

using namespace swapfree;

thread_local std::string last_error;

sf_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return SF_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return SF_DIMENSION_MISMATCH;
    case ErrorCode::infeasible: return SF_INFEASIBLE;
    case ErrorCode::solver_failure: return SF_SOLVER_FAILURE;
    case ErrorCode::io: return SF_IO_ERROR;
    case ErrorCode::limit_exceeded: return SF_LIMIT_EXCEEDED;
    case ErrorCode::internal: return SF_INTERNAL_ERROR;
  }
  return SF_INTERNAL_ERROR;
}

template <class Fn>
sf_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return SF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SF_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SF_INTERNAL_ERROR;
  }
}

void need(const void* ptr, const char* what) {
  if (!ptr) fail(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_matrix(const Matrix& m, double* out) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) *out++ = m(i, j);
}

Permutation read_permutation(const size_t* map, std::size_t n) {
  if (!map) return Permutation::identity(n);
  return Permutation(std::vector<std::size_t>(map, map + n));
}

sf_problem* make_problem(const Matrix& corr, std::vector<std::string> labels, size_t n_qubits,
                         size_t k, double alpha, double beta) {
  auto sim = similarity_from_correlation(corr, std::move(labels));
  const auto n = n_qubits == 0 ? sim.size() : n_qubits;
  return new sf_problem{build_problem_matrix(sim, alpha, beta, k, n)};
}

double asset_optimum(const ProblemMatrix& p) {
  require(p.k <= p.assets(), "k exceeds the number of assets");
  return idealized_qaoa_solve(asset_block(p.chat, p.assets()), p.k).value;
}

void check_pair(const sf_problem* p, const sf_graph* g) {
  need(p, "problem");
  need(g, "graph");
  if (p->p.size() != g->g.size())
    fail(ErrorCode::dimension_mismatch, "problem has " + std::to_string(p->p.size()) +
                                            " qubits but the graph has " +
                                            std::to_string(g->g.size()) + " vertices");
}

}  // namespace

extern "C" {

const char* sf_version(void) { return SWAPFREE_VERSION; }

const char* sf_status_name(sf_status status) {
  switch (status) {
    case SF_OK: return "ok";
    case SF_INVALID_ARGUMENT: return "invalid argument";
    case SF_DIMENSION_MISMATCH: return "dimension mismatch";
    case SF_INFEASIBLE: return "infeasible";
    case SF_SOLVER_FAILURE: return "solver failure";
    case SF_IO_ERROR: return "io error";
    case SF_LIMIT_EXCEEDED: return "limit exceeded";
    case SF_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* sf_last_error(void) { return last_error.c_str(); }

void sf_string_free(char* s) { std::free(s); }

sf_status sf_graph_create(size_t n, const size_t* edges, size_t edge_count, sf_graph** out) {
  return guarded([&] {
    need(out, "out");
    if (edge_count > 0) need(edges, "edges");
    std::vector<Edge> list;
    for (size_t e = 0; e < edge_count; ++e) {
      const auto a = edges[2 * e], b = edges[2 * e + 1];
      list.emplace_back(std::min(a, b), std::max(a, b));
    }
    *out = new sf_graph{HardwareGraph(n, std::move(list))};
  });
}

sf_status sf_graph_random(size_t n, double density, uint64_t seed, sf_graph** out) {
  return guarded([&] {
    need(out, "out");
    *out = new sf_graph{random_connected_graph(n, density, seed)};
  });
}

sf_status sf_graph_named(const char* kind, size_t n, sf_graph** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    const std::string k = kind;
    HardwareGraph g;
    if (k == "complete") g = HardwareGraph::complete(n);
    else if (k == "path") g = HardwareGraph::path(n);
    else if (k == "cycle") g = HardwareGraph::cycle(n);
    else if (k == "star") g = HardwareGraph::star(n);
    else if (k == "empty") g = HardwareGraph::empty(n);
    else fail(ErrorCode::invalid_argument, "unknown graph kind '" + k + "'");
    *out = new sf_graph{std::move(g)};
  });
}

sf_status sf_graph_parse(const char* text, sf_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new sf_graph{parse_graph(text)};
  });
}

sf_status sf_graph_read(const char* path, sf_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sf_graph{read_graph_file(path)};
  });
}

sf_status sf_graph_format(const sf_graph* g, char** text) {
  return guarded([&] {
    need(g, "graph");
    need(text, "text");
    *text = copy_string(format_graph(g->g));
  });
}

size_t sf_graph_size(const sf_graph* g) { return g ? g->g.size() : 0; }
size_t sf_graph_edge_count(const sf_graph* g) { return g ? g->g.edge_count() : 0; }

sf_status sf_graph_edges(const sf_graph* g, size_t* edges) {
  return guarded([&] {
    need(g, "graph");
    if (g->g.edge_count() > 0) need(edges, "edges");
    for (const auto& [a, b] : g->g.edges()) {
      *edges++ = a;
      *edges++ = b;
    }
  });
}

int sf_graph_is_connected(const sf_graph* g) { return g && g->g.is_connected() ? 1 : 0; }

void sf_graph_free(sf_graph* g) { delete g; }

sf_status sf_problem_from_correlation(const double* corr, size_t assets, size_t n_qubits,
                                      size_t k, double alpha, double beta, sf_problem** out) {
  return guarded([&] {
    need(corr, "corr");
    need(out, "out");
    require(assets >= 1, "need at least one asset");
    const auto m = static_cast<Eigen::Index>(assets);
    Matrix c(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) c(i, j) = corr[i * m + j];
    *out = make_problem(c, {}, n_qubits, k, alpha, beta);
  });
}

sf_status sf_problem_synthetic(size_t assets, size_t n_qubits, size_t k, double alpha,
                               double beta, uint64_t seed, sf_problem** out) {
  return guarded([&] {
    need(out, "out");
    require(assets >= 1, "need at least one asset");
    *out = make_problem(synthetic_correlation(assets, seed), {}, n_qubits, k, alpha, beta);
  });
}

sf_status sf_problem_load(const char* path, int returns_mode, size_t n_qubits, size_t k,
                          double alpha, double beta, sf_problem** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto data = load_correlation(path, returns_mode ? DataMode::returns : DataMode::correlation);
    *out = make_problem(data.values, std::move(data.labels), n_qubits, k, alpha, beta);
  });
}

size_t sf_problem_size(const sf_problem* p) { return p ? p->p.size() : 0; }
size_t sf_problem_k(const sf_problem* p) { return p ? p->p.k : 0; }

sf_status sf_problem_matrix(const sf_problem* p, double* out) {
  return guarded([&] {
    need(p, "problem");
    need(out, "out");
    write_matrix(p->p.chat, out);
  });
}

sf_status sf_problem_optimum(const sf_problem* p, double* value, uint64_t* selection) {
  return guarded([&] {
    need(p, "problem");
    require(p->p.k <= p->p.assets(), "k exceeds the number of assets");
    const auto r = idealized_qaoa_solve(asset_block(p->p.chat, p->p.assets()), p->p.k);
    if (value) *value = r.value;
    if (selection) *selection = r.z;
  });
}

void sf_problem_free(sf_problem* p) { delete p; }

sf_status sf_solve_fixed(const sf_problem* p, const sf_graph* g, const size_t* permutation,
                         double tol, sf_certificate** out) {
  return guarded([&] {
    check_pair(p, g);
    need(permutation, "permutation");
    need(out, "out");
    ApproxOptions opt;
    if (tol > 0.0) opt.tol = tol;
    *out = new sf_certificate{
        solve_fixed_p_sdp(p->p.chat, g->g, read_permutation(permutation, p->p.size()), opt)};
  });
}

sf_status sf_solve_heuristic(const sf_problem* p, const sf_graph* g, const char* name,
                             size_t samples, uint64_t seed, double tol, sf_certificate** out) {
  return guarded([&] {
    check_pair(p, g);
    need(name, "name");
    need(out, "out");
    const auto kind = parse_heuristic(name);
    if (!kind) fail(ErrorCode::invalid_argument, std::string("unknown heuristic '") + name + "'");
    HeuristicOptions opt;
    if (samples > 0) opt.samples = samples;
    opt.seed = seed;
    if (tol > 0.0) opt.sdp.tol = tol;
    *out = new sf_certificate{run_heuristic(*kind, p->p, g->g, opt).certificate};
  });
}

sf_status sf_solve_brute_force(const sf_problem* p, const sf_graph* g, int allow_large,
                               size_t jobs, double tol, sf_certificate** out) {
  return guarded([&] {
    check_pair(p, g);
    need(out, "out");
    BruteForceOptions opt;
    opt.allow_large = allow_large != 0;
    opt.jobs = jobs == 0 ? 1 : jobs;
    if (tol > 0.0) opt.sdp.tol = tol;
    // Deterministic heuristics give brute force a strong starting bound.
    for (auto kind : all_heuristics())
      if (!is_random(kind) && (p->p.size() <= kBruteForceCap || opt.allow_large))
        opt.hints.push_back(run_heuristic(kind, p->p, g->g, {}).permutation);
    *out = new sf_certificate{brute_force_permutations(p->p.chat, g->g, opt)};
  });
}

double sf_certificate_lambda(const sf_certificate* c) { return c ? c->c.lambda : 0.0; }
double sf_certificate_dual_value(const sf_certificate* c) { return c ? c->c.dual_value : 0.0; }
double sf_certificate_gap(const sf_certificate* c) { return c ? c->c.primal_dual_gap : 0.0; }

const char* sf_certificate_status(const sf_certificate* c) {
  return c ? to_string(c->c.status) : "";
}

size_t sf_certificate_size(const sf_certificate* c) { return c ? c->c.permutation.size() : 0; }

sf_status sf_certificate_permutation(const sf_certificate* c, size_t* out) {
  return guarded([&] {
    need(c, "certificate");
    need(out, "out");
    for (auto v : c->c.permutation.map()) *out++ = v;
  });
}

sf_status sf_certificate_x(const sf_certificate* c, double* out) {
  return guarded([&] {
    need(c, "certificate");
    need(out, "out");
    write_matrix(c->c.x, out);
  });
}

sf_status sf_certificate_dual(const sf_certificate* c, double* out) {
  return guarded([&] {
    need(c, "certificate");
    need(out, "out");
    write_matrix(c->c.dual_y, out);
  });
}

sf_status sf_certificate_to_json(const sf_certificate* c, char** json) {
  return guarded([&] {
    need(c, "certificate");
    need(json, "json");
    *json = copy_string(certificate_to_json(c->c));
  });
}

void sf_certificate_free(sf_certificate* c) { delete c; }

sf_status sf_evaluate(const sf_problem* p, const sf_graph* g, const sf_certificate* c,
                      int use_argmin, double cnot_error_rate, sf_metrics* out) {
  return guarded([&] {
    check_pair(p, g);
    need(c, "certificate");
    need(out, "out");
    require(c->c.permutation.size() == p->p.size(), "certificate does not match the problem");
    const auto& chat = p->p.chat;
    const auto k = p->p.k;
    sf_metrics m{};
    const double norm = operator_norm(chat);
    m.lambda_norm = norm > 0.0 ? c->c.lambda / norm : 0.0;
    m.optimum = asset_optimum(p->p);
    const auto x = asset_block(c->c.x, p->p.assets());
    const auto c_assets = asset_block(chat, p->p.assets());
    m.algorithm_value =
        use_argmin ? argmin_value(x, c_assets, k) : top_pool_value(x, c_assets, k);
    m.opt_gap = optimality_gap(m.algorithm_value, m.optimum);
    m.swaps = estimate_swap_count(chat, g->g, c->c.permutation);
    const auto noise = make_noise_model(cnot_error_rate, m.swaps);
    m.p = noise.p;
    m.baseline_value = baseline_expected_value(chat, noise, m.optimum);
    m.baseline_gap = optimality_gap(m.baseline_value, m.optimum);
    *out = m;
  });
}

sf_status sf_baseline_evaluate(const sf_problem* p, const sf_graph* g, const size_t* permutation,
                               double cnot_error_rate, sf_baseline* out) {
  return guarded([&] {
    check_pair(p, g);
    need(out, "out");
    const auto& chat = p->p.chat;
    sf_baseline b{};
    b.swaps = estimate_swap_count(chat, g->g, read_permutation(permutation, p->p.size()));
    const auto noise = make_noise_model(cnot_error_rate, b.swaps);
    b.p = noise.p;
    b.optimum = asset_optimum(p->p);
    b.expected_value = baseline_expected_value(chat, noise, b.optimum);
    b.gap = optimality_gap(b.expected_value, b.optimum);
    *out = b;
  });
}

sf_status sf_qcheck(size_t n, size_t k, size_t trials, uint64_t seed, sf_qcheck_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = qaoa_invariant_check(n, k, trials, seed);
    *out = {r.trials,     r.identity_residual, r.printed_residual, r.leakage,
            r.norm_drift, r.dicke_error,       r.swap_error,       r.passed ? 1 : 0};
  });
}

sf_status sf_sweep_run(const char* config_json, size_t jobs, const char* csv_path,
                       const char* summary_path, sf_progress_fn progress, void* user,
                       size_t* rows_written) {
  return guarded([&] {
    need(config_json, "config_json");
    need(csv_path, "csv_path");
    auto config = parse_sweep_config(config_json);
    if (jobs > 0) config.jobs = jobs;
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) fail(ErrorCode::io, std::string("cannot write '") + csv_path + "'");
    csv << csv_header() << '\n';
    const auto total = config.row_count();
    std::size_t done = 0;
    const auto records = run_sweep(config, [&](const ExperimentRecord& r) {
      csv << to_csv_row(r) << '\n';
      csv.flush();
      ++done;
      if (progress) progress(done, total, user);
    });
    if (!csv) fail(ErrorCode::io, std::string("write to '") + csv_path + "' failed");
    if (summary_path) write_text_file(summary_path, summarize(records) + "\n");
    if (rows_written) *rows_written = records.size();
  });
}

sf_status sf_sweep_validate(const char* config_json, size_t* rows) {
  return guarded([&] {
    need(config_json, "config_json");
    const auto config = parse_sweep_config(config_json);
    if (!config.data_path.empty()) {
      std::ifstream probe(config.data_path);
      if (!probe) fail(ErrorCode::io, "cannot open data file '" + config.data_path + "'");
    }
    if (rows) *rows = config.row_count();
  });
}

}  // extern "C"
