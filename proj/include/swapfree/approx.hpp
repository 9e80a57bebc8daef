#pragma once

#include <cstddef>
#include <vector>

#include "swapfree/graph.hpp"
#include "swapfree/ingest.hpp"
#include "swapfree/permutation.hpp"
#include "swapfree/sdp.hpp"

namespace swapfree {

struct ApproxOptions {
  double tol = 1e-7;  // required primal-dual gap of the certificate
  std::size_t max_iterations = 100;
};

/// Optimality certificate of the fixed-permutation approximation problem
///
///   min lambda  s.t.  -lambda I <= X - Chat <= lambda I,
///                     X zero on the non-edges of the relabeled hardware graph.
///
/// Matrices are in the logical (Chat) frame: x(a, b) may be nonzero only when
/// a == b or the physical vertices holding a and b are adjacent.
struct SdpCertificate {
  double lambda = 0.0;  // ||X - Chat||_op, exact for the returned X
  Matrix x;
  Matrix dual_y;        // zero on the diagonal and on native pairs, nuclear norm <= 1
  double dual_value = 0.0;  // <dual_y, Chat>, a lower bound on the optimum
  double primal_dual_gap = 0.0;
  SdpStatus status = SdpStatus::max_iter;
  Permutation permutation;
  std::size_t iterations = 0;
};

SdpCertificate solve_fixed_p_sdp(const Matrix& chat, const HardwareGraph& g, const Permutation& p,
                                 const ApproxOptions& options = {});

struct DualSolution {
  double value = 0.0;
  Matrix y;  // logical frame
  SdpStatus status = SdpStatus::max_iter;
};

/// Solves the dual problem max <Y, Chat> s.t. tr|Y| <= 1, Y zero on the
/// diagonal and on native pairs, posed directly over (M, N) >= 0 with Y = M - N.
DualSolution solve_dual_sdp(const Matrix& chat, const HardwareGraph& g, const Permutation& p,
                            const ApproxOptions& options = {});

/// Positive and negative parts of a symmetric matrix: Y = M - N, M, N >= 0, MN = 0.
std::pair<Matrix, Matrix> split_dual(const Matrix& y);

double operator_norm(const Matrix& m);  // symmetric input
double nuclear_norm(const Matrix& m);   // symmetric input

/// lambda of the feasible point X = Chat o (I + A_G) in the relabeled frame.
double feasible_upper_bound(const Matrix& chat, const HardwareGraph& g, const Permutation& p);

/// Lovasz number: max <J, X> s.t. tr X = 1, X_ij = 0 on edges, X >= 0.
double lovasz_theta(const HardwareGraph& g, double tol = 1e-7);

struct BoundReport {
  double lambda_star = 0.0;
  double feasible_ub = 0.0;
  double lovasz_theta = 0.0;
  double laplacian_inner = 0.0;  // <L, L>
  double bound_stated = 0.0;
  double bound_sqrt_variant = 0.0;
};

/// Lovasz-number bound on the optimum over all relabelings, next to the best
/// value actually found (`best` from brute force or a heuristic). Ignores beta:
/// the diagonal is free in the approximation, so lambda* does not depend on it.
BoundReport lovasz_bound(const ProblemMatrix& problem, const HardwareGraph& g,
                           const SdpCertificate& best, double theta_tol = 1e-7);

struct BruteForceOptions {
  ApproxOptions sdp;
  bool allow_large = false;  // lifts the n <= 8 cap
  std::size_t jobs = 1;
  std::vector<Permutation> hints;  // solved first; a good hint speeds up pruning
};

/// Minimum lambda over all n! relabelings. Among values within 1e-9 of each
/// other the lexicographically smallest permutation wins.
SdpCertificate brute_force_permutations(const Matrix& chat, const HardwareGraph& g,
                                        const BruteForceOptions& options = {});

constexpr std::size_t kBruteForceCap = 8;

}  // namespace swapfree
