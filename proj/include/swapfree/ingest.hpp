#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "swapfree/graph.hpp"

namespace swapfree {

/// C(i, j) = 1 - exp(-(1 - Corr(i, j))) between assets; zero diagonal.
struct SimilarityMatrix {
  Matrix values;
  std::vector<std::string> labels;

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
};

/// Cardinality-constrained objective x^T Chat x over n qubits. The first
/// `assets` rows/columns hold beta * Diag(C 1) - (alpha/2) C; the rest are zero.
struct ProblemMatrix {
  Matrix chat;
  SimilarityMatrix similarity;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t k = 1;

  std::size_t size() const { return static_cast<std::size_t>(chat.rows()); }
  std::size_t assets() const { return similarity.size(); }
};

SimilarityMatrix similarity_from_correlation(const Matrix& corr,
                                             std::vector<std::string> labels = {});

/// Pearson correlation of the rows of an m x T returns matrix, clamped to [-1, 1].
Matrix correlation_from_returns(const Matrix& returns);

ProblemMatrix build_problem_matrix(const SimilarityMatrix& c, double alpha, double beta,
                                   std::size_t k, std::size_t n_qubits);

/// L = Diag(C 1) - C.
Matrix laplacian_part(const SimilarityMatrix& c);

/// Random factor-model correlation: normalize(F F^T + noise * I) with F an
/// m x factors standard-normal matrix.
Matrix synthetic_correlation(std::size_t m, std::uint64_t seed, std::size_t factors = 3,
                             double noise = 1.0);

/// Correlation matrix restricted to the given asset indices.
Matrix select_assets(const Matrix& corr, const std::vector<std::size_t>& indices);

}  // namespace swapfree
