#include "swapfree/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "swapfree/error.hpp"
#include "swapfree/rng.hpp"

namespace swapfree {

HardwareGraph::HardwareGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), neighbors_(n), mask_(n * n, 0) {
  for (auto& [a, b] : edges) {
    require(a < n && b < n, "edge endpoint out of range: {" + std::to_string(a) + "," +
                                std::to_string(b) + "} with n=" + std::to_string(n));
    require(a != b, "self-loop at vertex " + std::to_string(a));
    if (a > b) std::swap(a, b);
    require(mask_[a * n + b] == 0,
            "repeated edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    mask_[a * n + b] = mask_[b * n + a] = 1;
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  std::sort(edges.begin(), edges.end());
  edges_ = std::move(edges);
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

HardwareGraph HardwareGraph::complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return HardwareGraph(n, std::move(e));
}

HardwareGraph HardwareGraph::empty(std::size_t n) { return HardwareGraph(n, {}); }

HardwareGraph HardwareGraph::path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return HardwareGraph(n, std::move(e));
}

HardwareGraph HardwareGraph::cycle(std::size_t n) {
  require(n >= 3, "cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return HardwareGraph(n, std::move(e));
}

HardwareGraph HardwareGraph::star(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, i);
  return HardwareGraph(n, std::move(e));
}

std::vector<std::size_t> HardwareGraph::distances_from(std::size_t source) const {
  std::vector<std::size_t> dist(n_, std::numeric_limits<std::size_t>::max());
  if (source >= n_) return dist;
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : neighbors_[v]) {
      if (dist[w] == std::numeric_limits<std::size_t>::max()) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool HardwareGraph::is_connected() const {
  if (n_ == 0) return true;
  const auto dist = distances_from(0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) {
    return d == std::numeric_limits<std::size_t>::max();
  });
}

Matrix HardwareGraph::adjacency() const {
  Matrix a = Matrix::Zero(n_, n_);
  for (const auto& [i, j] : edges_) a(i, j) = a(j, i) = 1.0;
  return a;
}

Matrix HardwareGraph::laplacian() const {
  Matrix l = -adjacency();
  for (std::size_t v = 0; v < n_; ++v) l(v, v) = static_cast<double>(degree(v));
  return l;
}

HardwareGraph HardwareGraph::complement() const {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!has_edge(i, j)) e.emplace_back(i, j);
  return HardwareGraph(n_, std::move(e));
}

std::size_t target_edge_count(std::size_t n, double density) {
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<std::size_t>(std::llround(density * pairs));
}

double min_connected_density(std::size_t n) {
  require(n >= 2, "min_connected_density needs n >= 2");
  return 2.0 / static_cast<double>(n);
}

HardwareGraph random_connected_graph(std::size_t n, double density, std::uint64_t seed) {
  require(n >= 2, "random_connected_graph needs n >= 2");
  require(density > 0.0 && density <= 1.0, "density must lie in (0, 1]");
  const std::size_t target = target_edge_count(n, density);
  if (target < n - 1) fail(ErrorCode::infeasible, "density below spanning-tree threshold");

  SplitMix64 rng(seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  shuffle(order, rng);

  std::vector<std::uint8_t> used(n * n, 0);
  std::vector<Edge> edges;
  edges.reserve(target);
  for (std::size_t i = 1; i < n; ++i) {
    const auto parent = order[rng.below(i)];
    const auto child = order[i];
    const auto a = std::min(parent, child), b = std::max(parent, child);
    used[a * n + b] = 1;
    edges.emplace_back(a, b);
  }

  std::vector<Edge> rest;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!used[i * n + j]) rest.emplace_back(i, j);
  // Partial Fisher-Yates: the first (target - tree) slots form the sample, and
  // a larger target only extends the prefix.
  const std::size_t extra = target - (n - 1);
  for (std::size_t i = 0; i < extra; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(rest.size() - i));
    std::swap(rest[i], rest[j]);
    edges.push_back(rest[i]);
  }
  return HardwareGraph(n, std::move(edges));
}

}  // namespace swapfree
