#pragma once

#include <cstddef>
#include <vector>

#include "swapfree/graph.hpp"

namespace swapfree {

/// Bijection on {0, ..., n-1}. As a qubit relabeling, map[v] is the logical
/// index placed on physical vertex v.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> map);  // throws unless bijective

  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& map() const { return map_; }

  Permutation inverse() const;

  /// 0/1 matrix P with P(map[i], i) = 1, so that P^T M P == apply_permutation(*this, M).
  Matrix matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.map_ <=> b.map_; }

 private:
  std::vector<std::size_t> map_;
};

bool is_bijection(const std::vector<std::size_t>& map);

/// Returns P^T M P, i.e. out(i, j) = m(p[i], p[j]).
Matrix apply_permutation(const Permutation& p, const Matrix& m);

}  // namespace swapfree
