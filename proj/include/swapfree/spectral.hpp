#pragma once

#include <cstddef>

#include "swapfree/graph.hpp"
#include "swapfree/permutation.hpp"

namespace swapfree {

struct EigenPair {
  double value = 0.0;
  Vector vector;
  std::size_t iterations = 0;
  bool converged = false;
};

struct PowerIterationOptions {
  double residual_tol = 1e-10;  // relative to the infinity norm of M
  std::size_t max_iterations = 100000;
  /// Iterates on M + shift * I; the residual is always measured against M.
  double shift = 0.0;
};

/// Extremal eigenpair of a symmetric matrix by power iteration from `start`.
/// Stops once ||M v - theta v||_inf <= residual_tol * ||M||_inf.
EigenPair power_iteration(const Matrix& m, const Vector& start,
                          const PowerIterationOptions& options = {});

/// Eigenvector plus the ranking it induces.
struct SpectralOrder {
  Vector vector;
  Permutation order;  // order[r] = index with rank r (descending coordinates)
  double eigenvalue = 0.0;
  bool converged = false;
};

/// Descending order of the coordinates, ties broken by ascending index.
/// Coordinates equal up to 1e-9 relative to the largest magnitude count as ties.
Permutation descending_order(const Vector& v);

/// Perron eigenvector of a symmetric, entrywise nonnegative matrix with
/// connected support. Unit norm, nonnegative sign.
SpectralOrder perron_order(const Matrix& m);

/// Eigenvector of the largest Laplacian eigenvalue, unit norm, sign fixed so
/// the largest-magnitude coordinate is positive.
SpectralOrder laplacian_order(const HardwareGraph& g);

/// Eigenvector of the largest (algebraic) eigenvalue of a symmetric matrix,
/// with the same sign convention as laplacian_order.
SpectralOrder top_eigen_order(const Matrix& m);

/// Connectivity of the off-diagonal support of a square matrix.
bool support_connected(const Matrix& m);

}  // namespace swapfree
