#include "swapfree/placement.hpp"

#include <algorithm>
#include <array>

#include "swapfree/error.hpp"
#include "swapfree/parallel.hpp"

namespace swapfree {
namespace {

struct KindName {
  HeuristicKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 7> kKindNames{{
    {HeuristicKind::perron_disconnected, "perron-disc"},
    {HeuristicKind::perron_connected, "perron-conn"},
    {HeuristicKind::laplacian_connected, "laplacian-conn"},
    {HeuristicKind::completely_random_disconnected, "crand-disc"},
    {HeuristicKind::partially_random_disconnected, "prand-disc"},
    {HeuristicKind::completely_random_connected, "crand-conn"},
    {HeuristicKind::partially_random_connected, "prand-conn"},
}};

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

Permutation random_order(std::size_t n, SplitMix64& rng) {
  auto v = iota(n);
  shuffle(v, rng);
  return Permutation(std::move(v));
}

void check_graph(const ProblemMatrix& problem, const HardwareGraph& g) {
  if (g.size() != problem.size())
    fail(ErrorCode::dimension_mismatch, "graph has " + std::to_string(g.size()) +
                                            " vertices but the problem has " +
                                            std::to_string(problem.size()) + " qubits");
}

void check_connected(const HardwareGraph& g) {
  require(g.is_connected(), "connected heuristics need a connected hardware graph");
}

}  // namespace

const std::vector<HeuristicKind>& all_heuristics() {
  static const std::vector<HeuristicKind> kinds = [] {
    std::vector<HeuristicKind> out;
    for (const auto& k : kKindNames) out.push_back(k.kind);
    return out;
  }();
  return kinds;
}

std::string_view to_string(HeuristicKind kind) {
  for (const auto& k : kKindNames)
    if (k.kind == kind) return k.name;
  return "unknown";
}

std::optional<HeuristicKind> parse_heuristic(std::string_view name) {
  for (const auto& k : kKindNames)
    if (k.name == name) return k.kind;
  return std::nullopt;
}

bool is_random(HeuristicKind kind) {
  return kind != HeuristicKind::perron_disconnected && kind != HeuristicKind::perron_connected &&
         kind != HeuristicKind::laplacian_connected;
}

Permutation asset_order(const ProblemMatrix& problem) {
  const auto n = problem.size();
  const auto m = problem.assets();
  std::vector<std::size_t> order;
  order.reserve(n);
  if (m > 0) order = perron_order(problem.similarity.values).order.map();
  for (std::size_t i = m; i < n; ++i) order.push_back(i);
  return Permutation(std::move(order));
}

Permutation match_orders(const Permutation& pi, const Permutation& sigma) {
  if (pi.size() != sigma.size())
    fail(ErrorCode::dimension_mismatch, "orders of different length");
  std::vector<std::size_t> map(pi.size());
  for (std::size_t r = 0; r < pi.size(); ++r) map[pi[r]] = sigma[r];
  return Permutation(std::move(map));
}

Permutation perron_disconnected(const ProblemMatrix& problem, const HardwareGraph& g) {
  check_graph(problem, g);
  return match_orders(perron_order(g.adjacency()).order, asset_order(problem));
}

Permutation connected_heuristic(const Permutation& order_g, const Permutation& sigma,
                                const HardwareGraph& g) {
  const auto n = g.size();
  if (order_g.size() != n || sigma.size() != n)
    fail(ErrorCode::dimension_mismatch, "orders do not match the graph size");
  if (n == 0) return Permutation();
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order_g[r]] = r;

  std::vector<std::size_t> map(n);
  std::vector<char> used(n, 0), frontier(n, 0);
  auto take = [&](std::size_t v, std::size_t index) {
    map[v] = index;
    used[v] = 1;
    frontier[v] = 0;
    for (auto w : g.neighbors(v))
      if (!used[w]) frontier[w] = 1;
  };
  take(order_g[0], sigma[0]);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t best = n;
    for (std::size_t w = 0; w < n; ++w)
      if (frontier[w] && (best == n || rank[w] < rank[best])) best = w;
    if (best == n)
      fail(ErrorCode::internal, "connected heuristic ran out of frontier vertices");
    take(best, sigma[i]);
  }
  return Permutation(std::move(map));
}

Permutation connected_heuristic(const SpectralOrder& order_g, const SpectralOrder& order_c,
                                const HardwareGraph& g) {
  check_connected(g);
  return connected_heuristic(order_g.order, order_c.order, g);
}

Permutation perron_connected(const ProblemMatrix& problem, const HardwareGraph& g) {
  check_graph(problem, g);
  check_connected(g);
  return connected_heuristic(perron_order(g.adjacency()).order, asset_order(problem), g);
}

Permutation laplacian_connected(const ProblemMatrix& problem, const HardwareGraph& g) {
  check_graph(problem, g);
  return connected_heuristic(laplacian_order(g), top_eigen_order(problem.chat), g);
}

Permutation random_connected(const Permutation& sigma, const HardwareGraph& g, SplitMix64& rng) {
  const auto n = g.size();
  if (sigma.size() != n) fail(ErrorCode::dimension_mismatch, "order does not match the graph size");
  check_connected(g);
  if (n == 0) return Permutation();
  std::vector<std::size_t> map(n);
  std::vector<char> used(n, 0), in_frontier(n, 0);
  std::vector<std::size_t> frontier;
  auto take = [&](std::size_t v, std::size_t index) {
    map[v] = index;
    used[v] = 1;
    in_frontier[v] = 0;
    for (auto w : g.neighbors(v))
      if (!used[w]) in_frontier[w] = 1;
  };
  take(static_cast<std::size_t>(rng.below(n)), sigma[0]);
  for (std::size_t i = 1; i < n; ++i) {
    frontier.clear();
    for (std::size_t w = 0; w < n; ++w)
      if (in_frontier[w]) frontier.push_back(w);
    take(frontier[static_cast<std::size_t>(rng.below(frontier.size()))], sigma[i]);
  }
  return Permutation(std::move(map));
}

bool prefixes_connected(const Permutation& p, const Permutation& sigma, const HardwareGraph& g) {
  const auto n = g.size();
  if (p.size() != n || sigma.size() != n) return false;
  const auto where = p.inverse();  // logical index -> physical vertex
  std::vector<char> in_set(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto v = where[sigma[r]];
    if (r > 0) {
      bool touches = false;
      for (auto w : g.neighbors(v)) touches = touches || in_set[w];
      if (!touches) return false;
    }
    in_set[v] = 1;
  }
  return true;
}

std::vector<Permutation> random_candidates(HeuristicKind kind, const ProblemMatrix& problem,
                                           const HardwareGraph& g, std::size_t samples,
                                           std::uint64_t seed) {
  require(is_random(kind), "random_candidates needs a random heuristic kind");
  require(samples >= 1, "random heuristics need at least one sample");
  check_graph(problem, g);
  const auto n = problem.size();
  const bool partial = kind == HeuristicKind::partially_random_disconnected ||
                       kind == HeuristicKind::partially_random_connected;
  const bool connected = kind == HeuristicKind::completely_random_connected ||
                         kind == HeuristicKind::partially_random_connected;
  const Permutation fixed_sigma = partial ? asset_order(problem) : Permutation();
  SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(kind)));
  std::vector<Permutation> out;
  for (std::size_t s = 0; s < samples; ++s) {
    const Permutation sigma = partial ? fixed_sigma : random_order(n, rng);
    if (connected) {
      out.push_back(random_connected(sigma, g, rng));
    } else {
      const Permutation pi = random_order(n, rng);
      out.push_back(match_orders(pi, sigma));
    }
  }
  return out;
}

Placement random_placements(HeuristicKind kind, const ProblemMatrix& problem,
                            const HardwareGraph& g, const HeuristicOptions& options) {
  const auto candidates = random_candidates(kind, problem, g, options.samples, options.seed);
  std::vector<SdpCertificate> certs(candidates.size());
  parallel_for(candidates.size(), options.jobs, [&](std::size_t i) {
    certs[i] = solve_fixed_p_sdp(problem.chat, g, candidates[i], options.sdp);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < certs.size(); ++i)
    if (certs[i].lambda < certs[best].lambda ||
        (certs[i].lambda == certs[best].lambda && candidates[i] < candidates[best]))
      best = i;
  return {candidates[best], std::move(certs[best])};
}

Placement run_heuristic(HeuristicKind kind, const ProblemMatrix& problem, const HardwareGraph& g,
                        const HeuristicOptions& options) {
  if (is_random(kind)) return random_placements(kind, problem, g, options);
  Permutation p;
  switch (kind) {
    case HeuristicKind::perron_disconnected: p = perron_disconnected(problem, g); break;
    case HeuristicKind::perron_connected: p = perron_connected(problem, g); break;
    case HeuristicKind::laplacian_connected: p = laplacian_connected(problem, g); break;
    default: fail(ErrorCode::internal, "unhandled heuristic kind");
  }
  auto cert = solve_fixed_p_sdp(problem.chat, g, p, options.sdp);
  return {std::move(p), std::move(cert)};
}

}  // namespace swapfree
