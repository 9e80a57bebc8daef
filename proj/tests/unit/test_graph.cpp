#include <doctest.h>

#include "helpers.hpp"
#include "swapfree/error.hpp"
#include "swapfree/graph.hpp"

using namespace swapfree;

TEST_SUITE("graph") {
  TEST_CASE("constructor rejects loops, repeats and out-of-range endpoints") {
    CHECK_THROWS_AS(HardwareGraph(3, {{1, 1}}), Error);
    CHECK_THROWS_AS(HardwareGraph(3, {{0, 1}, {0, 1}}), Error);
    CHECK_THROWS_AS(HardwareGraph(3, {{0, 3}}), Error);
  }

  TEST_CASE("named families") {
    CHECK(HardwareGraph::complete(5).edge_count() == 10);
    CHECK(HardwareGraph::path(5).edge_count() == 4);
    CHECK(HardwareGraph::cycle(5).edge_count() == 5);
    CHECK(HardwareGraph::star(5).degree(0) == 4);
    CHECK(HardwareGraph::empty(5).edge_count() == 0);
    CHECK(HardwareGraph::path(5).is_connected());
    CHECK_FALSE(HardwareGraph::empty(3).is_connected());
  }

  TEST_CASE("adjacency, laplacian and complement") {
    const auto g = HardwareGraph::cycle(6);
    const Matrix a = g.adjacency();
    CHECK(a == a.transpose());
    CHECK(a.diagonal().isZero());
    const Matrix l = g.laplacian();
    CHECK((l * Vector::Ones(6)).isZero(1e-15));
    const auto c = g.complement();
    CHECK(c.edge_count() == 15 - 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (i != j) CHECK(g.has_edge(i, j) != c.has_edge(i, j));
  }

  TEST_CASE("breadth-first distances") {
    const auto d = HardwareGraph::path(5).distances_from(1);
    CHECK(d == std::vector<std::size_t>{1, 0, 1, 2, 3});
    const auto e = HardwareGraph::empty(3).distances_from(0);
    CHECK(e[1] == SIZE_MAX);
  }

  TEST_CASE("random connected graphs hit the exact edge count and stay connected") {
    for (std::size_t n : {4, 8, 13}) {
      for (double d : {0.3, 0.5, 0.9, 1.0}) {
        if (target_edge_count(n, d) + 1 < n) continue;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          const auto g = random_connected_graph(n, d, seed);
          CHECK(g.is_connected());
          CHECK(g.edge_count() == target_edge_count(n, d));
        }
      }
    }
  }

  TEST_CASE("random graphs are nested in density for a fixed seed") {
    const auto sparse = random_connected_graph(10, 0.3, 42);
    const auto dense = random_connected_graph(10, 0.7, 42);
    for (const auto& [i, j] : sparse.edges()) CHECK(dense.has_edge(i, j));
  }

  TEST_CASE("random graphs are reproducible") {
    CHECK(random_connected_graph(9, 0.5, 11) == random_connected_graph(9, 0.5, 11));
    CHECK_FALSE(random_connected_graph(9, 0.5, 11) == random_connected_graph(9, 0.5, 12));
  }

  TEST_CASE("densities below the spanning-tree threshold are refused") {
    CHECK_THROWS_AS(random_connected_graph(8, 0.1, 0), Error);
    CHECK(min_connected_density(8) == doctest::Approx(0.25));
    CHECK(random_connected_graph(8, min_connected_density(8), 0).edge_count() == 7);
  }
}
