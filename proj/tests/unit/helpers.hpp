#pragma once

#include <cstdint>

#include "swapfree/graph.hpp"
#include "swapfree/ingest.hpp"
#include "swapfree/rng.hpp"

namespace swapfree::testing {

inline Matrix random_symmetric(std::size_t n, std::uint64_t seed, double scale = 1.0) {
  SplitMix64 rng(seed);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = scale * (2.0 * rng.uniform() - 1.0);
  return m;
}

inline ProblemMatrix random_problem(std::size_t n, std::size_t assets, std::size_t k,
                                    std::uint64_t seed, double alpha = 1.0, double beta = 1.0) {
  auto sim = similarity_from_correlation(synthetic_correlation(assets, seed));
  return build_problem_matrix(sim, alpha, beta, k, n);
}

// Correlation used by the frozen oracle values.
inline Matrix corr4() {
  Matrix c(4, 4);
  c << 1.0, 0.6, -0.2, 0.1,
       0.6, 1.0, 0.3, -0.4,
       -0.2, 0.3, 1.0, 0.5,
       0.1, -0.4, 0.5, 1.0;
  return c;
}

inline Matrix sym5() {
  Matrix c(5, 5);
  c << 2.0, -0.7, 0.4, 0.0, 1.1,
       -0.7, 1.5, -0.3, 0.9, 0.2,
       0.4, -0.3, 0.8, -1.2, 0.5,
       0.0, 0.9, -1.2, 2.5, -0.6,
       1.1, 0.2, 0.5, -0.6, 1.0;
  return c;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace swapfree::testing
