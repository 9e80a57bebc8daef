#pragma once

#include <cstddef>
#include <cstdint>

#include "swapfree/combinations.hpp"
#include "swapfree/graph.hpp"
#include "swapfree/permutation.hpp"

namespace swapfree {

/// Leading `assets` block. Selections are scored on it so that padded
/// indices, which cost nothing, are never picked.
inline Matrix asset_block(const Matrix& m, std::size_t assets) {
  const auto a = static_cast<Eigen::Index>(assets);
  return m.topLeftCorner(a, a);
}

/// (algorithm - optimal) / |optimal|; throws when |optimal| <= 1e-12.
double optimality_gap(double algorithm_value, double optimal_value);

/// Number of weight-k selections kept by top_pool_value: max(1, ceil(C(n,k)/100)).
std::uint64_t top_pool_size(std::size_t n, std::size_t k);

/// Sorts all weight-k selections by z^T X z (ties: lexicographic z), keeps
/// the first top_pool_size(n, k) and returns the smallest z^T Chat z among them.
double top_pool_value(const Matrix& x, const Matrix& chat, std::size_t k,
                      std::uint64_t cap = kEnumerationCap);

/// Chat value of the exact weight-k minimizer of X.
double argmin_value(const Matrix& x, const Matrix& chat, std::size_t k,
                    std::uint64_t cap = kEnumerationCap);

/// SWAPs inserted by a greedy router for one layer of the cost Hamiltonian of
/// Chat placed with P. Wires are named by their starting vertex; each pair of
/// wires with a nonzero coupling, taken in lexicographic order, is brought
/// together by moving the first wire along a shortest path (smallest next
/// vertex on ties), one SWAP per hop short of adjacency.
std::size_t estimate_swap_count(const Matrix& chat, const HardwareGraph& g, const Permutation& p);

/// p = 1 - (1 - rate)^(3 * swaps): each SWAP costs three CNOTs.
double error_probability(double cnot_error_rate, std::size_t swap_count);

struct NoiseModel {
  double cnot_error_rate = 0.0033;
  std::size_t swap_count = 0;
  double p = 0.0;
};

NoiseModel make_noise_model(double cnot_error_rate, std::size_t swap_count);

/// Expected Chat value of the depolarized optimum:
/// (1 - p) optimum + (p / 4) (tr(Chat) + sum(Chat)).
double baseline_expected_value(const Matrix& chat, const NoiseModel& noise, double optimum);

/// 2^-n sum_x x^T Chat x by enumeration; equals (tr + sum) / 4.
double uniform_average_value(const Matrix& chat);

}  // namespace swapfree
