#include "swapfree/approx.hpp"

#include <algorithm>
#include <cstring>
#include <cmath>
#include <string>
#include <string_view>
#include <limits>
#include <unordered_map>

#include "swapfree/error.hpp"
#include "swapfree/parallel.hpp"

namespace swapfree {
namespace {

void check_inputs(const Matrix& chat, const HardwareGraph& g, const Permutation& p) {
  const auto n = static_cast<std::size_t>(chat.rows());
  if (chat.cols() != chat.rows() || g.size() != n || p.size() != n)
    fail(ErrorCode::dimension_mismatch,
         "dimension mismatch: matrix " + std::to_string(chat.rows()) + "x" +
             std::to_string(chat.cols()) + ", graph " + std::to_string(g.size()) +
             ", permutation " + std::to_string(p.size()));
  const double scale = std::max(1.0, chat.cwiseAbs().maxCoeff());
  require((chat - chat.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "problem matrix must be symmetric");
}

// Part of the relabeled matrix that sits on non-native pairs.
Matrix forbidden_part(const Matrix& phys, const HardwareGraph& g) {
  const auto n = g.size();
  Matrix r = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !g.has_edge(i, j)) r(i, j) = phys(i, j);
  return r;
}

void zero_allowed(Matrix& y, const HardwareGraph& g) {
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    y(i, i) = 0.0;
    for (auto j : g.neighbors(static_cast<std::size_t>(i))) y(i, j) = 0.0;
  }
}

// Scales a candidate dual matrix into the feasible set tr|Y| <= 1.
void normalize_dual(Matrix& y) {
  y = 0.5 * (y + y.transpose()).eval();
  const double nuc = nuclear_norm(y);
  if (nuc > 1.0) y /= nuc;
}

Matrix to_logical(const Permutation& p, const Matrix& phys) {
  return apply_permutation(p.inverse(), phys);
}

// lambda of the relabeled problem given only its forbidden part r. Fills the
// physical-frame correction z (supported on diagonal and edges) and dual y.
struct ReducedSolve {
  double lambda = 0.0;
  Matrix z;
  Matrix y;
  double dual_value = 0.0;
  SdpStatus status = SdpStatus::optimal;
  std::size_t iterations = 0;
  bool pruned = false;
};

// With a finite prune_above the solve is abandoned as soon as the dual bound
// of an iterate exceeds it; lambda then holds that bound and pruned is set.
ReducedSolve solve_forbidden(const Matrix& r, const HardwareGraph& g, const ApproxOptions& opt,
                             double prune_above = std::numeric_limits<double>::infinity()) {
  const auto n = g.size();
  ReducedSolve out;
  out.z = Matrix::Zero(n, n);
  out.y = Matrix::Zero(n, n);

  // Vertices whose forbidden row is zero can be dropped: the optimum of the
  // principal subproblem extends by zeros without changing the norm.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i)
    if (r.row(i).cwiseAbs().maxCoeff() > 0.0) active.push_back(i);
  if (active.empty()) return out;

  const auto na = active.size();
  SdpProblem sdp({na, na});
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b) {
      sdp.objective(0)(a, b) = r(active[a], active[b]);
      sdp.objective(1)(a, b) = -r(active[a], active[b]);
    }
  // y_0 = lambda; S_0 = R + lambda I - Z, S_1 = -R + lambda I + Z.
  sdp.add_constraint(-1.0);
  for (std::size_t a = 0; a < na; ++a) {
    sdp.add_entry(0, a, a, -1.0);
    sdp.add_entry(1, a, a, -1.0);
  }
  std::vector<std::pair<std::size_t, std::size_t>> free_entries;
  for (std::size_t a = 0; a < na; ++a) {
    free_entries.emplace_back(a, a);
    sdp.add_constraint(0.0);
    sdp.add_entry(0, a, a, 1.0);
    sdp.add_entry(1, a, a, -1.0);
  }
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = a + 1; b < na; ++b)
      if (g.has_edge(active[a], active[b])) {
        free_entries.emplace_back(a, b);
        sdp.add_constraint(0.0);
        sdp.add_entry(0, a, b, 1.0);
        sdp.add_entry(1, a, b, -1.0);
      }

  // Dual matrix from a primal iterate, projected into the feasible set.
  auto dual_from = [&](const std::vector<Matrix>& x) {
    Matrix y = Matrix::Zero(n, n);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < na; ++b) y(active[a], active[b]) = x[1](a, b) - x[0](a, b);
    zero_allowed(y, g);
    normalize_dual(y);
    return y;
  };

  SdpOptions sopt;
  sopt.gap_tol = 0.05 * opt.tol;
  sopt.max_iterations = opt.max_iterations;
  if (std::isfinite(prune_above))
    sopt.early_stop = [&](const std::vector<Matrix>& x) {
      return dual_from(x).cwiseProduct(r).sum() > prune_above;
    };
  const auto sol = solve_sdp(sdp, sopt);
  out.status = sol.status;
  out.iterations = sol.iterations;
  out.y = dual_from(sol.x);
  out.dual_value = out.y.cwiseProduct(r).sum();
  if (sol.status == SdpStatus::stopped) {
    out.pruned = true;
    out.lambda = out.dual_value;
    return out;
  }

  for (std::size_t e = 0; e < free_entries.size(); ++e) {
    const auto [a, b] = free_entries[e];
    const double v = sol.y[static_cast<Eigen::Index>(e + 1)];
    out.z(active[a], active[b]) = v;
    out.z(active[b], active[a]) = v;
  }
  out.lambda = operator_norm(out.z - r);
  return out;
}

}  // namespace

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double nuclear_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().sum();
}

std::pair<Matrix, Matrix> split_dual(const Matrix& y) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (y + y.transpose()));
  const Matrix& v = eig.eigenvectors();
  const Vector pos = eig.eigenvalues().cwiseMax(0.0);
  const Vector neg = (-eig.eigenvalues()).cwiseMax(0.0);
  return {v * pos.asDiagonal() * v.transpose(), v * neg.asDiagonal() * v.transpose()};
}

SdpCertificate solve_fixed_p_sdp(const Matrix& chat, const HardwareGraph& g, const Permutation& p,
                                 const ApproxOptions& options) {
  check_inputs(chat, g, p);
  require(options.tol > 0.0, "tolerance must be positive");
  const Matrix phys = apply_permutation(p, chat);
  const Matrix r = forbidden_part(phys, g);
  const auto red = solve_forbidden(r, g, options);

  SdpCertificate cert;
  cert.permutation = p;
  cert.lambda = red.lambda;
  cert.dual_value = red.dual_value;
  cert.primal_dual_gap = red.lambda - red.dual_value;
  cert.iterations = red.iterations;
  // The certificate decides: X and Y are exactly feasible by construction, so
  // a small gap proves optimality even when the solver stalled short of its
  // own residual targets.
  if (cert.primal_dual_gap <= options.tol)
    cert.status = SdpStatus::optimal;
  else
    cert.status = red.status == SdpStatus::optimal ? SdpStatus::max_iter : red.status;
  // X = Chat on native positions plus the correction; hard zero elsewhere.
  const Matrix x_phys = phys - r + red.z;
  cert.x = to_logical(p, x_phys);
  cert.dual_y = to_logical(p, red.y);
  return cert;
}

DualSolution solve_dual_sdp(const Matrix& chat, const HardwareGraph& g, const Permutation& p,
                            const ApproxOptions& options) {
  check_inputs(chat, g, p);
  const auto n = g.size();
  const Matrix phys = apply_permutation(p, chat);
  DualSolution out;
  out.y = Matrix::Zero(n, n);
  out.status = SdpStatus::optimal;
  if (forbidden_part(phys, g).cwiseAbs().maxCoeff() == 0.0) return out;

  // Blocks: M, N and a 1x1 slack for tr(M + N) <= 1.
  SdpProblem sdp({n, n, 1});
  sdp.objective(0) = -phys;
  sdp.objective(1) = phys;
  sdp.add_constraint(1.0);
  for (std::size_t i = 0; i < n; ++i) {
    sdp.add_entry(0, i, i, 1.0);
    sdp.add_entry(1, i, i, 1.0);
  }
  sdp.add_entry(2, 0, 0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    sdp.add_constraint(0.0);
    sdp.add_entry(0, i, i, 1.0);
    sdp.add_entry(1, i, i, -1.0);
  }
  for (const auto& [i, j] : g.edges()) {
    sdp.add_constraint(0.0);
    sdp.add_entry(0, i, j, 1.0);
    sdp.add_entry(1, i, j, -1.0);
  }
  SdpOptions sopt;
  sopt.gap_tol = 0.05 * options.tol;
  sopt.max_iterations = options.max_iterations;
  const auto sol = solve_sdp(sdp, sopt);

  Matrix y = sol.x[0] - sol.x[1];
  zero_allowed(y, g);
  normalize_dual(y);
  out.value = y.cwiseProduct(phys).sum();
  out.y = to_logical(p, y);
  out.status = sol.status;
  return out;
}

double feasible_upper_bound(const Matrix& chat, const HardwareGraph& g, const Permutation& p) {
  check_inputs(chat, g, p);
  return operator_norm(forbidden_part(apply_permutation(p, chat), g));
}

double lovasz_theta(const HardwareGraph& g, double tol) {
  const auto n = g.size();
  require(n >= 1, "lovasz_theta needs at least one vertex");
  if (g.edge_count() == 0) return static_cast<double>(n);
  SdpProblem sdp({n});
  sdp.objective(0) = -Matrix::Ones(n, n);
  sdp.add_constraint(1.0);
  for (std::size_t i = 0; i < n; ++i) sdp.add_entry(0, i, i, 1.0);
  for (const auto& [i, j] : g.edges()) {
    sdp.add_constraint(0.0);
    sdp.add_entry(0, i, j, 1.0);
  }
  SdpOptions sopt;
  sopt.gap_tol = 0.1 * tol;
  const auto sol = solve_sdp(sdp, sopt);
  // The solver may stop on a numerical breakdown next to a rank-deficient
  // optimum; the last iterate still counts when its gap and residuals are small.
  const bool close = std::abs(sol.primal_objective - sol.dual_objective) <= tol &&
                     sol.primal_infeasibility <= 1e-8 && sol.dual_infeasibility <= 1e-8;
  if (sol.status != SdpStatus::optimal && !close)
    fail(ErrorCode::solver_failure,
         std::string("lovasz_theta: SDP did not converge (") + to_string(sol.status) + ")");
  return -0.5 * (sol.primal_objective + sol.dual_objective);
}

BoundReport lovasz_bound(const ProblemMatrix& problem, const HardwareGraph& g,
                           const SdpCertificate& best, double theta_tol) {
  const auto n = problem.size();
  require(g.size() == n, "lovasz_bound: graph size does not match problem");
  BoundReport out;
  out.lovasz_theta = lovasz_theta(g, theta_tol);
  const Matrix l = laplacian_part(problem.similarity);
  out.laplacian_inner = l.squaredNorm();
  const double factor = std::max(0.0, 1.0 - 1.0 / out.lovasz_theta) * 0.5 * problem.alpha;
  out.bound_stated = factor * out.laplacian_inner;
  out.bound_sqrt_variant = factor * std::sqrt(out.laplacian_inner);
  out.lambda_star = best.lambda;
  out.feasible_ub = feasible_upper_bound(problem.chat, g, best.permutation);
  return out;
}

SdpCertificate brute_force_permutations(const Matrix& chat, const HardwareGraph& g,
                                        const BruteForceOptions& options) {
  const auto n = static_cast<std::size_t>(chat.rows());
  check_inputs(chat, g, Permutation::identity(n));
  if (n > kBruteForceCap && !options.allow_large)
    fail(ErrorCode::limit_exceeded,
         "brute force over n! permutations is capped at n <= " + std::to_string(kBruteForceCap) +
             " (n = " + std::to_string(n) + "); pass the force/allow-large flag to override");
  for (const auto& h : options.hints) require(h.size() == n, "brute force hint has wrong size");

  // Any Y that vanishes on the diagonal and native pairs with tr|Y| <= 1 gives
  // lambda(P) >= <Y, P^T Chat P> for every P, so certificates from solved
  // relabelings prune the rest. Only the non-native entries of Y are kept.
  const auto comp = g.complement().edges();
  const auto ne = comp.size();
  std::vector<std::vector<double>> pool;
  std::size_t pool_next = 0;
  constexpr std::size_t kPoolSize = 48;
  auto add_to_pool = [&](const Matrix& y_phys) {
    std::vector<double> w(ne);
    for (std::size_t e = 0; e < ne; ++e) w[e] = 2.0 * y_phys(comp[e].first, comp[e].second);
    if (pool.size() < kPoolSize) {
      pool.push_back(std::move(w));
    } else {
      pool[pool_next] = std::move(w);
      pool_next = (pool_next + 1) % kPoolSize;
    }
  };
  auto forbidden_values = [&](const std::vector<std::size_t>& perm, std::vector<double>& v) {
    v.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) v[e] = chat(perm[comp[e].first], perm[comp[e].second]);
  };
  auto lower_bound = [&](const std::vector<double>& v) {
    double lb = 0.0;
    for (double x : v) lb = std::max(lb, std::abs(x));
    for (const auto& w : pool) {
      double s = 0.0;
      for (std::size_t e = 0; e < ne; ++e) s += w[e] * v[e];
      lb = std::max(lb, s);
    }
    return lb;
  };
  // Two relabelings with the same forbidden entries pose the same SDP.
  std::unordered_map<std::string, double> solved;
  auto key_of = [&](const std::vector<double>& v) {
    return std::string(reinterpret_cast<const char*>(v.data()), ne * sizeof(double));
  };
  double upper = std::numeric_limits<double>::infinity();
  auto solve_one = [&](const std::vector<std::size_t>& perm, double prune_above) {
    const Permutation p(perm);
    return solve_forbidden(forbidden_part(apply_permutation(p, chat), g), g, options.sdp,
                           prune_above);
  };

  std::vector<double> v;
  for (const auto& h : options.hints) {
    forbidden_values(h.map(), v);
    auto key = key_of(v);
    if (solved.count(key)) continue;
    const auto red = solve_one(h.map(), std::numeric_limits<double>::infinity());
    solved.emplace(std::move(key), red.lambda);
    upper = std::min(upper, red.lambda);
    add_to_pool(red.y);
  }

  // Relabelings are visited in lexicographic order, in fixed-size chunks so
  // that the surviving SDPs of a chunk can be solved in parallel.
  constexpr std::size_t kChunk = 256;
  constexpr double kTie = 1e-9;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<std::size_t> best_perm;
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::vector<std::size_t>, double>> candidates;  // lambda <= best + kTie
  bool more = true;
  std::vector<std::vector<std::size_t>> chunk;
  std::vector<std::string> keys;
  while (more) {
    chunk.clear();
    keys.clear();
    for (; more && chunk.size() < kChunk; more = std::next_permutation(perm.begin(), perm.end())) {
      forbidden_values(perm, v);
      if (lower_bound(v) > upper + 2.0 * kTie) continue;
      chunk.push_back(perm);
      keys.push_back(key_of(v));
    }
    std::vector<std::size_t> todo;
    std::unordered_map<std::string, std::size_t> first_in_chunk;
    for (std::size_t c = 0; c < chunk.size(); ++c)
      if (!solved.count(keys[c]) && first_in_chunk.try_emplace(keys[c], c).second)
        todo.push_back(c);
    std::vector<ReducedSolve> results(todo.size());
    // A relabeling whose dual bound passes the incumbent is abandoned
    // mid-solve; its recorded value is that bound, which can never win.
    const double cut = upper + 2.0 * kTie;
    parallel_for(todo.size(), options.jobs,
                 [&](std::size_t t) { results[t] = solve_one(chunk[todo[t]], cut); });
    for (std::size_t t = 0; t < todo.size(); ++t) {
      solved.emplace(keys[todo[t]], results[t].lambda);
      if (!results[t].pruned) add_to_pool(results[t].y);
    }
    for (std::size_t c = 0; c < chunk.size(); ++c) {
      const double lam = solved.at(keys[c]);
      upper = std::min(upper, lam);
      if (lam <= best + kTie) candidates.emplace_back(chunk[c], lam);
      best = std::min(best, lam);
    }
  }
  // Lexicographically smallest permutation within kTie of the minimum; the
  // candidates are already in lexicographic order.
  for (const auto& [pm, lam] : candidates)
    if (lam <= best + kTie) {
      best_perm = pm;
      break;
    }
  return solve_fixed_p_sdp(chat, g, Permutation(best_perm), options.sdp);
}

}  // namespace swapfree
