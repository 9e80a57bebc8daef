#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "swapfree/graph.hpp"
#include "swapfree/permutation.hpp"

namespace swapfree {

/// Linearized products q(k, i, l, j) standing in for P(k, i) * P(l, j).
class QTensor {
 public:
  explicit QTensor(std::size_t n);  // all zeros; n <= kQTensorCap

  std::size_t size() const { return n_; }
  double& operator()(std::size_t k, std::size_t i, std::size_t l, std::size_t j) {
    return q_[((k * n_ + i) * n_ + l) * n_ + j];
  }
  double operator()(std::size_t k, std::size_t i, std::size_t l, std::size_t j) const {
    return q_[((k * n_ + i) * n_ + l) * n_ + j];
  }

 private:
  std::size_t n_;
  std::vector<double> q_;
};

constexpr std::size_t kQTensorCap = 12;

enum class QCondition {
  row_sums = 1,         // sum_k q(k,i,k,i) = 1 for every i
  column_sums = 2,      // sum_i q(k,i,k,i) = 1 for every k
  upper_mccormick = 3,  // q(k,i,l,j) <= q(k,i,k,i) and <= q(l,j,l,j)
  lower_mccormick = 4,  // q(k,i,l,j) >= q(k,i,k,i) + q(l,j,l,j) - 1
  box = 5,              // 0 <= q <= 1
  integrality = 6,      // q(k,i,k,i) in {0, 1}
};

std::string_view to_string(QCondition c);

/// Violated conditions in increasing order, each listed once. Comparisons
/// allow an absolute slack of `tol`.
std::vector<QCondition> validate_qtensor(const QTensor& q, double tol = 1e-9);

QTensor qtensor_from_permutation(const Permutation& p);

/// q(M)(i, j) = sum_{k,l} q(k, i, l, j) M(k, l).
Matrix apply_qtensor(const QTensor& q, const Matrix& m);

}  // namespace swapfree
