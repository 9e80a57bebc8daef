#include "swapfree/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "swapfree/error.hpp"
#include "swapfree/qsim.hpp"

namespace swapfree {

double optimality_gap(double algorithm_value, double optimal_value) {
  if (std::abs(optimal_value) <= 1e-12)
    fail(ErrorCode::invalid_argument, "gap undefined at zero optimum");
  return (algorithm_value - optimal_value) / std::abs(optimal_value);
}

std::uint64_t top_pool_size(std::size_t n, std::size_t k) {
  const auto total = binomial(n, k);
  return std::max<std::uint64_t>(1, (total + 99) / 100);
}

double top_pool_value(const Matrix& x, const Matrix& chat, std::size_t k, std::uint64_t cap) {
  require(x.rows() == chat.rows() && x.cols() == chat.cols() && x.rows() == x.cols(),
          "top_pool_value: X and Chat must be square of equal size");
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<std::pair<double, Selection>> all;
  all.reserve(static_cast<std::size_t>(std::min(binomial(n, k), cap)));
  for_each_combination(
      n, k,
      [&](const std::vector<std::size_t>& idx) {
        all.emplace_back(quadratic_form(x, idx), to_selection(idx));
      },
      cap);
  const auto pool = static_cast<std::size_t>(top_pool_size(n, k));
  auto less = [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && lex_less(a.second, b.second));
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(pool), all.end(), less);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool; ++i)
    best = std::min(best, quadratic_form(chat, selected_indices(all[i].second, n)));
  return best;
}

double argmin_value(const Matrix& x, const Matrix& chat, std::size_t k, std::uint64_t cap) {
  const auto r = idealized_qaoa_solve(x, k, cap);
  return quadratic_form(chat, selected_indices(r.z, static_cast<std::size_t>(x.rows())));
}

std::size_t estimate_swap_count(const Matrix& chat, const HardwareGraph& g, const Permutation& p) {
  const auto n = g.size();
  if (static_cast<std::size_t>(chat.rows()) != n || p.size() != n)
    fail(ErrorCode::dimension_mismatch, "estimate_swap_count: sizes of Chat, G and P differ");
  require(g.is_connected(), "estimate_swap_count needs a connected hardware graph");
  const Matrix phys = apply_permutation(p, chat);

  std::vector<std::vector<std::size_t>> dist(n);
  for (std::size_t v = 0; v < n; ++v) dist[v] = g.distances_from(v);
  std::vector<std::size_t> pos(n), wire_at(n);
  for (std::size_t v = 0; v < n; ++v) pos[v] = wire_at[v] = v;

  std::size_t swaps = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (phys(a, b) == 0.0) continue;
      const auto target = pos[b];
      while (dist[pos[a]][target] >= 2) {
        const auto here = pos[a];
        std::size_t next = n;
        for (auto w : g.neighbors(here))
          if (dist[w][target] + 1 == dist[here][target] && w < next) next = w;
        const auto other = wire_at[next];
        std::swap(wire_at[here], wire_at[next]);
        pos[a] = next;
        pos[other] = here;
        ++swaps;
      }
    }
  return swaps;
}

double error_probability(double cnot_error_rate, std::size_t swap_count) {
  require(cnot_error_rate >= 0.0 && cnot_error_rate < 1.0, "CNOT error rate must lie in [0, 1)");
  return 1.0 - std::pow(1.0 - cnot_error_rate, 3.0 * static_cast<double>(swap_count));
}

NoiseModel make_noise_model(double cnot_error_rate, std::size_t swap_count) {
  return {cnot_error_rate, swap_count, error_probability(cnot_error_rate, swap_count)};
}

double baseline_expected_value(const Matrix& chat, const NoiseModel& noise, double optimum) {
  require(noise.p >= 0.0 && noise.p <= 1.0, "error probability must lie in [0, 1]");
  return (1.0 - noise.p) * optimum + noise.p / 4.0 * (chat.trace() + chat.sum());
}

double uniform_average_value(const Matrix& chat) {
  const auto n = static_cast<std::size_t>(chat.rows());
  require(n <= 24, "uniform_average_value enumerates 2^n states; n must be <= 24");
  double total = 0.0;
  std::vector<std::size_t> idx;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    idx.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (x >> i & 1) idx.push_back(i);
    total += quadratic_form(chat, idx);
  }
  return total / static_cast<double>(std::uint64_t{1} << n);
}

}  // namespace swapfree
