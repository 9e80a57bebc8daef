#include "swapfree/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "swapfree/error.hpp"
#include "swapfree/rng.hpp"

namespace swapfree {
namespace {

using Complex = std::complex<double>;

void check_qubits(std::size_t n) {
  if (n > kMaxQubits)
    fail(ErrorCode::limit_exceeded, "dense state vectors are limited to " +
                                        std::to_string(kMaxQubits) + " qubits (n = " +
                                        std::to_string(n) + ")");
}

void check_symmetric(const Matrix& c) {
  require(c.rows() == c.cols(), "coefficient matrix must be square");
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  require((c - c.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "coefficient matrix must be symmetric");
}

double z_of(std::uint64_t x, std::size_t i) { return (x >> i & 1) ? -1.0 : 1.0; }

}  // namespace

double IsingCoefficients::energy(std::uint64_t x) const {
  const auto n = static_cast<std::size_t>(h.size());
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z_of(x, i);
    e += h[static_cast<Eigen::Index>(i)] * zi;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) e += j(i, k) * zi * z_of(x, k);
  }
  return e;
}

IsingCoefficients ising_coefficients(const Matrix& c, IsingMode mode) {
  check_symmetric(c);
  const auto n = c.rows();
  IsingCoefficients out;
  out.j = c / 4.0;
  out.j.diagonal().setZero();
  out.h = Vector::Zero(n);
  out.c0 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double h = -c(i, i) / 2.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == i) continue;
      h -= mode == IsingMode::exact ? (c(i, k) + c(k, i)) / 4.0 : c(i, k) / 4.0;
      out.c0 += c(i, k) / 4.0;
    }
    out.h[i] = h;
    out.c0 += c(i, i) / 2.0;
  }
  return out;
}

double ising_identity_residual(const Matrix& c, const IsingCoefficients& ising) {
  const auto n = static_cast<std::size_t>(c.rows());
  require(n <= 20, "identity check enumerates 2^n states; n must be <= 20");
  double worst = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    double q = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      if (x >> a & 1)
        for (std::size_t b = 0; b < n; ++b)
          if (x >> b & 1) q += c(a, b);
    worst = std::max(worst, std::abs(q - ising.energy(x) - ising.c0));
  }
  return worst;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

StateVector basis_state(std::size_t n, std::uint64_t x) {
  check_qubits(n);
  require(x < (std::uint64_t{1} << n), "basis index out of range");
  StateVector s{n, std::vector<Complex>(std::size_t{1} << n)};
  s.amplitudes[x] = 1.0;
  return s;
}

StateVector dicke_state(std::size_t n, std::size_t k) {
  check_qubits(n);
  require(k <= n, "dicke_state: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  StateVector s{n, std::vector<Complex>(std::size_t{1} << n)};
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, k)));
  for (std::uint64_t x = 0; x < s.amplitudes.size(); ++x)
    if (static_cast<std::size_t>(std::popcount(x)) == k) s.amplitudes[x] = amp;
  return s;
}

StateVector apply_cost_layer(const StateVector& state, const IsingCoefficients& ising,
                             double gamma) {
  if (static_cast<std::size_t>(ising.h.size()) != state.n)
    fail(ErrorCode::dimension_mismatch, "Ising model and state have different qubit counts");
  StateVector out = state;
  for (std::uint64_t x = 0; x < out.amplitudes.size(); ++x)
    out.amplitudes[x] *= std::polar(1.0, -gamma * ising.energy(x));
  return out;
}

XyMixer::XyMixer(const HardwareGraph& g) : n_(g.size()) {
  check_qubits(n_);
  std::vector<std::vector<std::uint64_t>> by_weight(n_ + 1);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_); ++x)
    by_weight[static_cast<std::size_t>(std::popcount(x))].push_back(x);
  for (auto& basis : by_weight) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    std::vector<Eigen::Index> slot(std::size_t{1} << n_, -1);
    for (Eigen::Index a = 0; a < dim; ++a) slot[basis[static_cast<std::size_t>(a)]] = a;
    // (X_i X_j + Y_i Y_j)/2 exchanges the bits at i and j when they differ.
    Matrix h = Matrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      const auto x = basis[static_cast<std::size_t>(a)];
      for (const auto& [i, j] : g.edges())
        if ((x >> i & 1) != (x >> j & 1)) {
          const auto y = x ^ (std::uint64_t{1} << i) ^ (std::uint64_t{1} << j);
          h(slot[y], a) += 1.0;
        }
    }
    Block b;
    b.basis = std::move(basis);
    if (dim > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
      b.vectors = eig.eigenvectors();
      b.values = eig.eigenvalues();
    }
    blocks_.push_back(std::move(b));
  }
}

StateVector XyMixer::apply(const StateVector& state, double beta_angle) const {
  if (state.n != n_)
    fail(ErrorCode::dimension_mismatch, "mixer and state have different qubit counts");
  StateVector out{n_, std::vector<Complex>(state.amplitudes.size())};
  for (const auto& b : blocks_) {
    const auto dim = static_cast<Eigen::Index>(b.basis.size());
    if (dim == 0) continue;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index a = 0; a < dim; ++a) v[a] = state.amplitudes[b.basis[a]];
    Eigen::VectorXcd coeff = b.vectors.transpose().cast<Complex>() * v;
    for (Eigen::Index a = 0; a < dim; ++a) coeff[a] *= std::polar(1.0, -beta_angle * b.values[a]);
    const Eigen::VectorXcd w = b.vectors.cast<Complex>() * coeff;
    for (Eigen::Index a = 0; a < dim; ++a) out.amplitudes[b.basis[a]] = w[a];
  }
  return out;
}

StateVector apply_xy_mixer_layer(const StateVector& state, const HardwareGraph& g,
                                 double beta_angle) {
  return XyMixer(g).apply(state, beta_angle);
}

StateVector apply_layers(const StateVector& state, const IsingCoefficients& ising,
                         const XyMixer& mixer, const std::vector<QaoaLayerParams>& layers) {
  StateVector s = state;
  for (const auto& layer : layers)
    s = mixer.apply(apply_cost_layer(s, ising, layer.gamma), layer.beta_angle);
  return s;
}

double weight_leakage(const StateVector& state, std::size_t k) {
  double s = 0.0;
  for (std::uint64_t x = 0; x < state.amplitudes.size(); ++x)
    if (static_cast<std::size_t>(std::popcount(x)) != k) s += std::norm(state.amplitudes[x]);
  return s;
}

QaoaResult idealized_qaoa_solve(const Matrix& c, std::size_t k, std::uint64_t cap) {
  require(c.rows() == c.cols(), "idealized_qaoa_solve needs a square matrix");
  const auto n = static_cast<std::size_t>(c.rows());
  QaoaResult best;
  bool have = false;
  for_each_combination(
      n, k,
      [&](const std::vector<std::size_t>& idx) {
        const double v = quadratic_form(c, idx);
        const Selection z = to_selection(idx);
        if (!have || v < best.value || (v == best.value && lex_less(z, best.z))) {
          best = {z, v};
          have = true;
        }
      },
      cap);
  return best;
}

QCheckReport qaoa_invariant_check(std::size_t n, std::size_t k, std::size_t trials,
                                  std::uint64_t seed, double tol) {
  require(n >= 2, "qcheck needs at least two qubits");
  require(k <= n, "k must not exceed n");
  require(trials >= 1, "qcheck needs at least one trial");
  check_qubits(n);

  QCheckReport report;
  report.trials = trials;

  const auto dicke = dicke_state(n, k);
  const double expect = 1.0 / std::sqrt(static_cast<double>(binomial(n, k)));
  for (std::uint64_t x = 0; x < dicke.amplitudes.size(); ++x) {
    const double target = static_cast<std::size_t>(std::popcount(x)) == k ? expect : 0.0;
    report.dicke_error = std::max(report.dicke_error, std::abs(dicke.amplitudes[x] - target));
  }

  const auto swapped = apply_xy_mixer_layer(basis_state(2, 0b01), HardwareGraph::path(2),
                                            std::acos(-1.0) / 2);
  report.swap_error = std::abs(swapped.amplitudes[0b10] - Complex(0.0, -1.0));
  for (std::uint64_t x : {0b00, 0b01, 0b11})
    report.swap_error = std::max(report.swap_error, std::abs(swapped.amplitudes[x]));

  SplitMix64 rng(seed);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) c(i, j) = c(j, i) = 2.0 * rng.uniform() - 1.0;
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    const auto exact = ising_coefficients(c, IsingMode::exact);
    report.identity_residual =
        std::max(report.identity_residual, ising_identity_residual(c, exact) / scale);
    report.printed_residual =
        std::max(report.printed_residual,
                 ising_identity_residual(c, ising_coefficients(c, IsingMode::printed)) / scale);

    const double density = std::max(min_connected_density(n), 0.2 + 0.8 * rng.uniform());
    const auto g = random_connected_graph(n, density, rng.next());
    StateVector psi{n, std::vector<Complex>(dim)};
    double norm2 = 0.0;
    for (std::uint64_t x = 0; x < dim; ++x) {
      if (static_cast<std::size_t>(std::popcount(x)) != k) continue;
      psi.amplitudes[x] = Complex(rng.normal(), rng.normal());
      norm2 += std::norm(psi.amplitudes[x]);
    }
    for (auto& a : psi.amplitudes) a /= std::sqrt(norm2);
    std::vector<QaoaLayerParams> layers(2);
    for (auto& l : layers) {
      l.gamma = 2.0 * std::acos(-1.0) * rng.uniform();
      l.beta_angle = 2.0 * std::acos(-1.0) * rng.uniform();
    }
    const auto out = apply_layers(psi, exact, XyMixer(g), layers);
    report.leakage = std::max(report.leakage, weight_leakage(out, k));
    report.norm_drift = std::max(report.norm_drift, std::abs(out.norm() - 1.0));
  }
  report.passed = report.identity_residual <= 1e-12 && report.leakage <= tol &&
                  report.norm_drift <= tol && report.dicke_error <= tol &&
                  report.swap_error <= tol;
  return report;
}

}  // namespace swapfree
