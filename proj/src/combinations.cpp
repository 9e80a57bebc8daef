#include "swapfree/combinations.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "swapfree/error.hpp"

namespace swapfree {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

void check_enumerable(std::size_t n, std::size_t k, std::uint64_t cap) {
  require(k <= n, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  if (n > 64) fail(ErrorCode::limit_exceeded, "weight-k enumeration supports n <= 64");
  const auto count = binomial(n, k);
  if (count > cap)
    fail(ErrorCode::limit_exceeded, "C(" + std::to_string(n) + ", " + std::to_string(k) +
                                        ") = " + std::to_string(count) +
                                        " exceeds the enumeration cap of " + std::to_string(cap));
}

Selection to_selection(const std::vector<std::size_t>& indices) {
  Selection z = 0;
  for (auto i : indices) z |= Selection{1} << i;
  return z;
}

std::vector<std::size_t> selected_indices(Selection z, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (z >> i & 1) out.push_back(i);
  return out;
}

bool lex_less(Selection a, Selection b) {
  const Selection d = a ^ b;
  if (d == 0) return false;
  const Selection low = d & (~d + 1);
  return (a & low) == 0;
}

double quadratic_form(const Matrix& m, const std::vector<std::size_t>& indices) {
  double s = 0.0;
  for (auto a : indices)
    for (auto b : indices) s += m(a, b);
  return s;
}

}  // namespace swapfree
