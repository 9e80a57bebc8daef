#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "swapfree/graph.hpp"

namespace swapfree {

/// Block-diagonal SDP in standard form
///
///   primal:  min  sum_b <C_b, X_b>   s.t.  sum_b <A_ib, X_b> = b_i,  X_b >= 0
///   dual:    max  b^T y              s.t.  S_b = C_b - sum_i y_i A_ib >= 0
///
/// Constraint matrices are sparse and symmetric; add_entry stores both
/// (row, col) and (col, row).
class SdpProblem {
 public:
  struct Entry {
    std::uint32_t block;
    std::uint32_t row;
    std::uint32_t col;
    double value;
  };

  explicit SdpProblem(std::vector<std::size_t> block_sizes);

  std::size_t block_count() const { return sizes_.size(); }
  std::size_t block_size(std::size_t b) const { return sizes_[b]; }
  std::size_t constraint_count() const { return rhs_.size(); }

  Matrix& objective(std::size_t b) { return c_[b]; }
  const Matrix& objective(std::size_t b) const { return c_[b]; }

  /// Starts a new constraint; subsequent add_entry calls belong to it.
  std::size_t add_constraint(double rhs);
  void add_entry(std::size_t block, std::size_t row, std::size_t col, double value);

  double rhs(std::size_t i) const { return rhs_[i]; }
  const Entry* begin(std::size_t i) const { return entries_.data() + offsets_[i]; }
  const Entry* end(std::size_t i) const { return entries_.data() + offsets_[i + 1]; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<Matrix> c_;
  std::vector<double> rhs_;
  std::vector<Entry> entries_;
  std::vector<std::size_t> offsets_{0};
};

enum class SdpStatus { optimal, max_iter, infeasible, stopped };

const char* to_string(SdpStatus status);

struct SdpOptions {
  double gap_tol = 1e-9;    // absolute, on both <X,S> and pobj - dobj
  double feas_tol = 1e-10;  // relative primal and dual residuals
  std::size_t max_iterations = 100;
  // Called with the primal iterate from the third iteration on; returning
  // true ends the solve with status `stopped`.
  std::function<bool(const std::vector<Matrix>& x)> early_stop;
};

struct SdpSolution {
  std::vector<Matrix> x;
  std::vector<Matrix> s;
  Vector y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  std::size_t iterations = 0;
  SdpStatus status = SdpStatus::max_iter;
};

/// Infeasible-start primal-dual path following with the HKM search direction
/// and Mehrotra predictor-corrector steps.
SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace swapfree
