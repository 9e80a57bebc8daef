#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "swapfree/combinations.hpp"
#include "swapfree/graph.hpp"

namespace swapfree {

/// H_C = sum_{i != j} J(i, j) Z_i Z_j + sum_i h_i Z_i with Z|0> = |0>,
/// Z|1> = -|1>, so that x^T C x = <x|H_C|x> + c0.
struct IsingCoefficients {
  Matrix j;  // symmetric, zero diagonal
  Vector h;
  double c0 = 0.0;

  /// <x|H_C|x> for the basis state whose bit i is x_i.
  double energy(std::uint64_t x) const;
};

enum class IsingMode {
  exact,    // h_i = -C_ii/2 - sum_{j != i} (C_ij + C_ji)/4
  printed,  // h_i = -C_ii/2 - sum_{j != i} C_ij/4 (does not satisfy the identity)
};

IsingCoefficients ising_coefficients(const Matrix& c, IsingMode mode = IsingMode::exact);

/// Largest |x^T C x - <x|H_C|x> - c0| over all 2^n basis states.
double ising_identity_residual(const Matrix& c, const IsingCoefficients& ising);

constexpr std::size_t kMaxQubits = 14;

/// Dense state over n qubits; bit i of the amplitude index is qubit i.
struct StateVector {
  std::size_t n = 0;
  std::vector<std::complex<double>> amplitudes;

  double norm() const;
};

StateVector basis_state(std::size_t n, std::uint64_t x);

/// Equal superposition of the C(n, k) weight-k basis states.
StateVector dicke_state(std::size_t n, std::size_t k);

/// Multiplies each amplitude by exp(-i gamma E(x)).
StateVector apply_cost_layer(const StateVector& state, const IsingCoefficients& ising,
                             double gamma);

/// exp(-i beta H_M) with H_M = 1/2 sum_{ij in E} (X_i X_j + Y_i Y_j), prepared
/// once per graph from the eigendecomposition of each Hamming-weight block.
class XyMixer {
 public:
  explicit XyMixer(const HardwareGraph& g);

  std::size_t qubits() const { return n_; }
  StateVector apply(const StateVector& state, double beta_angle) const;

 private:
  struct Block {
    std::vector<std::uint64_t> basis;
    Matrix vectors;
    Vector values;
  };
  std::size_t n_;
  std::vector<Block> blocks_;
};

StateVector apply_xy_mixer_layer(const StateVector& state, const HardwareGraph& g,
                                 double beta_angle);

struct QaoaLayerParams {
  double gamma = 0.0;
  double beta_angle = 0.0;
};

/// Alternating layers, cost first: ... U_M(beta_1) U_C(gamma_1) |state>.
StateVector apply_layers(const StateVector& state, const IsingCoefficients& ising,
                         const XyMixer& mixer, const std::vector<QaoaLayerParams>& layers);

/// Squared norm outside the weight-k sector.
double weight_leakage(const StateVector& state, std::size_t k);

struct QCheckReport {
  std::size_t trials = 0;
  double identity_residual = 0.0;  // worst exact-mode residual, relative to max |C_ij|
  double printed_residual = 0.0;   // same for the printed coefficients (informational)
  double leakage = 0.0;            // worst weight leakage after random layers
  double norm_drift = 0.0;         // worst | ||psi|| - 1 |
  double dicke_error = 0.0;        // max |amplitude - C(n,k)^-1/2| over the weight-k sector
  double swap_error = 0.0;         // two-qubit mixer at pi/2 against -i|10>
  bool passed = false;
};

/// Random symmetric cost matrices, random connected graphs and random
/// weight-k states pushed through two cost/mixer layers each. Passes when the
/// exact identity holds to 1e-12 and every other error stays within `tol`.
QCheckReport qaoa_invariant_check(std::size_t n, std::size_t k, std::size_t trials,
                                  std::uint64_t seed, double tol = 1e-10);

struct QaoaResult {
  Selection z = 0;
  double value = 0.0;
};

/// min z^T C z over weight-k vectors; ties go to the lexicographically
/// smallest z.
QaoaResult idealized_qaoa_solve(const Matrix& c, std::size_t k,
                                std::uint64_t cap = kEnumerationCap);

}  // namespace swapfree
