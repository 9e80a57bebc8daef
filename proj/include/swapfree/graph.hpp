#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace swapfree {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Unordered vertex pair, stored with first < second.
using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph on vertices {0, ..., n-1}: the qubit connectivity
/// of the target device. Immutable after construction.
class HardwareGraph {
 public:
  HardwareGraph() = default;

  /// Throws on self-loops, out-of-range endpoints and repeated pairs.
  HardwareGraph(std::size_t n, std::vector<Edge> edges);

  static HardwareGraph complete(std::size_t n);
  static HardwareGraph empty(std::size_t n);
  static HardwareGraph path(std::size_t n);
  static HardwareGraph cycle(std::size_t n);
  static HardwareGraph star(std::size_t n);  // center 0

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_[v]; }
  std::size_t degree(std::size_t v) const { return neighbors_[v].size(); }

  bool has_edge(std::size_t i, std::size_t j) const {
    return i != j && i < n_ && j < n_ && mask_[i * n_ + j] != 0;
  }

  bool is_connected() const;

  /// Breadth-first distances from `source`; unreachable vertices get SIZE_MAX.
  std::vector<std::size_t> distances_from(std::size_t source) const;

  Matrix adjacency() const;
  Matrix laplacian() const;
  HardwareGraph complement() const;

  friend bool operator==(const HardwareGraph& a, const HardwareGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::uint8_t> mask_;
};

/// Connected graph with exactly round(density * n(n-1)/2) edges: a random
/// recursive spanning tree plus uniformly sampled extra pairs. For a fixed
/// (n, seed) the edge sets are nested in density.
HardwareGraph random_connected_graph(std::size_t n, double density, std::uint64_t seed);

/// Edge count produced by random_connected_graph for (n, density).
std::size_t target_edge_count(std::size_t n, double density);

/// Density of a spanning tree, (n-1) / C(n, 2): the smallest density
/// random_connected_graph accepts.
double min_connected_density(std::size_t n);

}  // namespace swapfree
