#include "swapfree/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swapfree/error.hpp"
#include "swapfree/rng.hpp"

namespace swapfree {

SimilarityMatrix similarity_from_correlation(const Matrix& corr, std::vector<std::string> labels) {
  require(corr.rows() == corr.cols(), "correlation matrix must be square");
  const auto m = static_cast<std::size_t>(corr.rows());
  require(labels.empty() || labels.size() == m, "label count does not match correlation size");
  for (std::size_t i = 0; i < m; ++i) {
    require(std::abs(corr(i, i) - 1.0) <= 1e-9,
            "correlation diagonal must be 1 (row " + std::to_string(i) + ")");
    for (std::size_t j = 0; j < m; ++j) {
      require(std::abs(corr(i, j) - corr(j, i)) <= 1e-9, "correlation matrix is not symmetric");
      require(corr(i, j) >= -1.0 - 1e-9 && corr(i, j) <= 1.0 + 1e-9,
              "correlation entry out of [-1, 1] at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")");
    }
  }
  SimilarityMatrix out;
  out.values = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double r = std::clamp(0.5 * (corr(i, j) + corr(j, i)), -1.0, 1.0);
      out.values(i, j) = out.values(j, i) = 1.0 - std::exp(-(1.0 - r));
    }
  if (labels.empty())
    for (std::size_t i = 0; i < m; ++i) labels.push_back("asset" + std::to_string(i));
  out.labels = std::move(labels);
  return out;
}

Matrix correlation_from_returns(const Matrix& returns) {
  const auto m = returns.rows();
  const auto t = returns.cols();
  require(t >= 2, "need at least two return periods");
  Matrix centered = returns.colwise() - returns.rowwise().mean();
  Vector norms(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    norms[i] = centered.row(i).norm();
    require(norms[i] > 0.0, "asset row " + std::to_string(i) + " has zero variance");
  }
  Matrix corr(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    corr(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double r = centered.row(i).dot(centered.row(j)) / (norms[i] * norms[j]);
      corr(i, j) = corr(j, i) = std::clamp(r, -1.0, 1.0);
    }
  }
  return corr;
}

ProblemMatrix build_problem_matrix(const SimilarityMatrix& c, double alpha, double beta,
                                   std::size_t k, std::size_t n_qubits) {
  const auto m = c.size();
  require(alpha > 0.0, "alpha must be positive");
  require(n_qubits >= m, "n_qubits (" + std::to_string(n_qubits) + ") smaller than asset count (" +
                             std::to_string(m) + ")");
  require(k >= 1 && k <= n_qubits, "cardinality k must satisfy 1 <= k <= n_qubits");
  ProblemMatrix out;
  out.similarity = c;
  out.alpha = alpha;
  out.beta = beta;
  out.k = k;
  out.chat = Matrix::Zero(n_qubits, n_qubits);
  const Vector row_sums = c.values.rowwise().sum();
  out.chat.topLeftCorner(m, m) = -0.5 * alpha * c.values;
  for (std::size_t i = 0; i < m; ++i) out.chat(i, i) += beta * row_sums[i];
  return out;
}

Matrix laplacian_part(const SimilarityMatrix& c) {
  Matrix l = -c.values;
  const Vector row_sums = c.values.rowwise().sum();
  for (std::size_t i = 0; i < c.size(); ++i) l(i, i) += row_sums[i];
  return l;
}

Matrix synthetic_correlation(std::size_t m, std::uint64_t seed, std::size_t factors, double noise) {
  require(m >= 1, "synthetic_correlation needs at least one asset");
  require(noise > 0.0, "synthetic_correlation noise must be positive");
  SplitMix64 rng(seed);
  Matrix f(m, factors);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < factors; ++j) f(i, j) = rng.normal();
  Matrix cov = f * f.transpose();
  cov.diagonal().array() += noise;
  const Vector inv_sd = cov.diagonal().cwiseSqrt().cwiseInverse();
  Matrix corr = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
  for (std::size_t i = 0; i < m; ++i) {
    corr(i, i) = 1.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double r = std::clamp(0.5 * (corr(i, j) + corr(j, i)), -1.0, 1.0);
      corr(i, j) = corr(j, i) = r;
    }
  }
  return corr;
}

Matrix select_assets(const Matrix& corr, const std::vector<std::size_t>& indices) {
  const auto m = indices.size();
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    require(indices[i] < static_cast<std::size_t>(corr.rows()), "asset index out of range");
    for (std::size_t j = 0; j < m; ++j) out(i, j) = corr(indices[i], indices[j]);
  }
  return out;
}

}  // namespace swapfree
