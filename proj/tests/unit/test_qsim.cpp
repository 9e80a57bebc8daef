#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "swapfree/error.hpp"
#include "swapfree/qsim.hpp"

using namespace swapfree;

namespace {

Matrix chat4() {
  return build_problem_matrix(similarity_from_correlation(testing::corr4()), 1.0, 1.0, 2, 4)
      .chat;
}

StateVector random_weight_state(std::size_t n, std::size_t k, std::uint64_t seed) {
  SplitMix64 rng(seed);
  StateVector s{n, std::vector<std::complex<double>>(std::size_t{1} << n)};
  double norm = 0.0;
  for (std::uint64_t x = 0; x < s.amplitudes.size(); ++x)
    if (static_cast<std::size_t>(std::popcount(x)) == k) {
      s.amplitudes[x] = {rng.normal(), rng.normal()};
      norm += std::norm(s.amplitudes[x]);
    }
  for (auto& a : s.amplitudes) a /= std::sqrt(norm);
  return s;
}

}  // namespace

TEST_SUITE("qsim") {
  TEST_CASE("exact coefficients reproduce the quadratic form") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Matrix c = testing::random_symmetric(6, seed);
      CHECK(ising_identity_residual(c, ising_coefficients(c)) < 1e-12);
      Matrix asym = c;
      asym(0, 3) += 0.7;
      CHECK_THROWS_AS(ising_coefficients(asym), Error);
    }
  }

  TEST_CASE("printed coefficients miss half the linear term") {
    const Matrix c = testing::random_symmetric(5, 9);
    CHECK(ising_identity_residual(c, ising_coefficients(c, IsingMode::printed)) > 1e-3);
  }

  TEST_CASE("coefficients of a two-variable form") {
    Matrix c(2, 2);
    c << 1.0, 2.0, 2.0, 3.0;
    const auto ising = ising_coefficients(c);
    // x^T C x at x = (1, 1) is 8.
    CHECK(ising.energy(0b11) + ising.c0 == doctest::Approx(8.0));
    CHECK(ising.energy(0b00) + ising.c0 == doctest::Approx(0.0).epsilon(1e-14));
    // Both orderings of the pair are summed.
    CHECK(ising.j(0, 1) == doctest::Approx(0.5));
  }

  TEST_CASE("dicke state") {
    const auto s = dicke_state(5, 2);
    CHECK(s.norm() == doctest::Approx(1.0));
    CHECK(weight_leakage(s, 2) == 0.0);
    CHECK(std::abs(s.amplitudes[0b00011] - 1.0 / std::sqrt(10.0)) < 1e-15);
    CHECK(std::abs(s.amplitudes[0b00111]) == 0.0);
  }

  TEST_CASE("two-qubit mixer at a quarter turn swaps the excitation") {
    const auto g = HardwareGraph::path(2);
    const auto out = apply_xy_mixer_layer(basis_state(2, 0b01), g, M_PI / 2.0);
    CHECK(std::abs(out.amplitudes[0b10] - std::complex<double>(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(out.amplitudes[0b01]) < 1e-14);
  }

  TEST_CASE("layers keep the norm and the Hamming weight") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto g = random_connected_graph(7, 0.4, seed);
      const auto ising = ising_coefficients(testing::random_symmetric(7, seed));
      const XyMixer mixer(g);
      const auto s = apply_layers(random_weight_state(7, 3, seed), ising, mixer,
                                  {{0.3, 0.7}, {1.1, -0.4}, {2.0, 0.2}});
      CHECK(std::abs(s.norm() - 1.0) < 1e-12);
      CHECK(weight_leakage(s, 3) < 1e-24);
    }
  }

  TEST_CASE("cost layer only changes phases") {
    const auto ising = ising_coefficients(testing::random_symmetric(4, 1));
    const auto s = random_weight_state(4, 2, 3);
    const auto t = apply_cost_layer(s, ising, 0.9);
    for (std::uint64_t x = 0; x < 16; ++x) {
      CHECK(std::abs(std::abs(t.amplitudes[x]) - std::abs(s.amplitudes[x])) < 1e-15);
      const auto want = s.amplitudes[x] * std::exp(std::complex<double>(0, -0.9 * ising.energy(x)));
      CHECK(std::abs(t.amplitudes[x] - want) < 1e-14);
    }
  }

  TEST_CASE("prepared mixer matches the one-shot layer") {
    const auto g = HardwareGraph::cycle(5);
    const auto s = random_weight_state(5, 2, 4);
    const auto a = XyMixer(g).apply(s, 0.6);
    const auto b = apply_xy_mixer_layer(s, g, 0.6);
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
      CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-14);
  }

  TEST_CASE("idealized solver") {
    const auto r = idealized_qaoa_solve(chat4(), 2);
    CHECK(r.value == doctest::Approx(2.5188001188075164).epsilon(1e-14));
    CHECK(r.z == 0b0101);
    // Ties go to the lexicographically smallest vector: z = (0, 0, 1, 1) before (1, 1, 0, 0).
    const auto tie = idealized_qaoa_solve(Matrix::Zero(4, 4), 2);
    CHECK(tie.z == 0b1100);
  }

  TEST_CASE("invariant check passes and validates its input") {
    const auto r = qaoa_invariant_check(6, 2, 5, 1);
    CHECK(r.passed);
    CHECK(r.trials == 5);
    CHECK(r.identity_residual <= 1e-12);
    CHECK(r.printed_residual > 1e-6);
    CHECK_THROWS_AS(qaoa_invariant_check(3, 4, 1, 0), Error);
    CHECK_THROWS_AS(qaoa_invariant_check(kMaxQubits + 1, 2, 1, 0), Error);
  }
}
