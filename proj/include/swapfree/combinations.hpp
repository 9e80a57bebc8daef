#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swapfree/graph.hpp"

namespace swapfree {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// Upper limit on C(n, k) for exhaustive weight-k searches.
constexpr std::uint64_t kEnumerationCap = 5'000'000;

/// Calls fn(indices) for every k-subset of {0, ..., n-1} in lexicographic
/// order of the sorted index lists. Throws limit_exceeded above `cap`.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn,
                          std::uint64_t cap = kEnumerationCap);

/// Bit i of the mask is z_i. Weight-k vectors only need n <= 64.
using Selection = std::uint64_t;

Selection to_selection(const std::vector<std::size_t>& indices);
std::vector<std::size_t> selected_indices(Selection z, std::size_t n);

/// Lexicographic order of (z_0, z_1, ...): at the lowest differing position
/// the vector holding a 0 is smaller.
bool lex_less(Selection a, Selection b);

/// z^T M z for the 0/1 vector with ones at `indices`.
double quadratic_form(const Matrix& m, const std::vector<std::size_t>& indices);

void check_enumerable(std::size_t n, std::size_t k, std::uint64_t cap = kEnumerationCap);

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn, std::uint64_t cap) {
  check_enumerable(n, k, cap);
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace swapfree
