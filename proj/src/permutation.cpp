#include "swapfree/permutation.hpp"

#include <string>

#include "swapfree/error.hpp"

namespace swapfree {

bool is_bijection(const std::vector<std::size_t>& map) {
  std::vector<char> seen(map.size(), 0);
  for (auto v : map) {
    if (v >= map.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
  require(is_bijection(map_), "permutation map is not a bijection");
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Matrix Permutation::matrix() const {
  const auto n = map_.size();
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) p(map_[i], i) = 1.0;
  return p;
}

Matrix apply_permutation(const Permutation& p, const Matrix& m) {
  const auto n = p.size();
  if (m.rows() != static_cast<Eigen::Index>(n) || m.cols() != static_cast<Eigen::Index>(n))
    fail(ErrorCode::dimension_mismatch, "apply_permutation: matrix is " +
                                            std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()) + ", permutation has size " +
                                            std::to_string(n));
  Matrix out(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = m(p[i], p[j]);
  return out;
}

}  // namespace swapfree
