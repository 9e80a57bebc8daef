#include "swapfree/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swapfree/error.hpp"
#include "swapfree/rng.hpp"

namespace swapfree {
namespace {

double inf_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

void check_symmetric(const Matrix& m, const char* who) {
  require(m.rows() == m.cols(), std::string(who) + ": matrix must be square");
  const double scale = std::max(1.0, inf_norm(m));
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          std::string(who) + ": matrix must be symmetric");
}

// Deterministic start with no special structure; all-ones would sit in the
// Laplacian kernel and symmetric ramps can be orthogonal to the top eigenspace.
Vector generic_start(std::size_t n) {
  SplitMix64 rng(0x5eed5eedULL);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 0.5 + rng.uniform();
  return v;
}

void fix_sign_by_largest(Vector& v) {
  if (v.size() == 0) return;
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best + 1e-12) {
      best = std::abs(v[i]);
      arg = i;
    }
  }
  if (v[arg] < 0) v = -v;
}

SpectralOrder make_order(EigenPair pair) {
  SpectralOrder out;
  out.order = descending_order(pair.vector);
  out.vector = std::move(pair.vector);
  out.eigenvalue = pair.value;
  out.converged = pair.converged;
  return out;
}

}  // namespace

EigenPair power_iteration(const Matrix& m, const Vector& start,
                          const PowerIterationOptions& options) {
  require(m.rows() == m.cols() && m.rows() == start.size(), "power_iteration: size mismatch");
  EigenPair out;
  const auto n = m.rows();
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const double threshold = options.residual_tol * inf_norm(m);
  Vector v = start.normalized();
  Vector w(n);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    w.noalias() = m * v;
    const double theta = v.dot(w);
    const double residual = (w - theta * v).cwiseAbs().maxCoeff();
    out.value = theta;
    out.iterations = it;
    if (residual <= threshold) {
      out.converged = true;
      break;
    }
    w += options.shift * v;
    const double norm = w.norm();
    if (norm == 0.0) break;
    v = w / norm;
  }
  out.vector = v;
  return out;
}

Permutation descending_order(const Vector& v) {
  const auto n = static_cast<std::size_t>(v.size());
  const double scale = n == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
  std::vector<long long> key(n, 0);
  if (scale > 0)
    for (std::size_t i = 0; i < n; ++i) key[i] = std::llround(v[i] / scale * 1e9);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return Permutation(std::move(idx));
}

bool support_connected(const Matrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) != 0.0 || m(j, i) != 0.0) edges.emplace_back(i, j);
  return HardwareGraph(n, std::move(edges)).is_connected();
}

SpectralOrder perron_order(const Matrix& m) {
  check_symmetric(m, "perron_order");
  require(m.size() == 0 || m.minCoeff() >= 0.0,
          "perron_order: matrix must be entrywise nonnegative");
  if (!support_connected(m))
    fail(ErrorCode::invalid_argument,
         "perron_order: support is disconnected (Perron vector not unique)");
  PowerIterationOptions opts;
  // Any positive shift separates rho from -rho (bipartite supports).
  opts.shift = 0.5 * inf_norm(m);
  auto pair = power_iteration(m, Vector::Ones(m.rows()), opts);
  if (pair.vector.sum() < 0) pair.vector = -pair.vector;
  return make_order(std::move(pair));
}

SpectralOrder laplacian_order(const HardwareGraph& g) {
  require(g.size() > 0, "laplacian_order: empty graph");
  const Matrix l = g.laplacian();
  auto pair = power_iteration(l, generic_start(g.size()));
  fix_sign_by_largest(pair.vector);
  return make_order(std::move(pair));
}

SpectralOrder top_eigen_order(const Matrix& m) {
  check_symmetric(m, "top_eigen_order");
  PowerIterationOptions opts;
  // Gershgorin shift makes M + sI positive semidefinite, so the largest
  // algebraic eigenvalue becomes the dominant one.
  opts.shift = inf_norm(m);
  auto pair = power_iteration(m, generic_start(static_cast<std::size_t>(m.rows())), opts);
  fix_sign_by_largest(pair.vector);
  return make_order(std::move(pair));
}

}  // namespace swapfree
