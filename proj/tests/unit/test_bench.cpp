#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "swapfree/approx.hpp"
#include "swapfree/bench.hpp"
#include "swapfree/error.hpp"
#include "swapfree/qsim.hpp"

using namespace swapfree;

TEST_SUITE("bench") {
  TEST_CASE("optimality gap") {
    CHECK(optimality_gap(3.0, 2.0) == doctest::Approx(0.5));
    CHECK(optimality_gap(-1.0, -2.0) == doctest::Approx(0.5));
    CHECK(optimality_gap(2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(optimality_gap(1.0, 0.0), Error);
  }

  TEST_CASE("error probability") {
    CHECK(error_probability(0.0033, 0) == 0.0);
    CHECK(error_probability(0.0033, 1) == doctest::Approx(0.009867365937).epsilon(1e-10));
    CHECK(error_probability(0.01, 5) ==
          doctest::Approx(1.0 - std::pow(0.99, 15)).epsilon(1e-14));
    const auto noise = make_noise_model(0.0033, 2);
    CHECK(noise.p == error_probability(0.0033, 2));
  }

  TEST_CASE("pool sizes") {
    CHECK(top_pool_size(8, 2) == 1);
    CHECK(top_pool_size(20, 4) == 49);
    CHECK(top_pool_size(10, 5) == 3);
  }

  TEST_CASE("scoring Chat against itself recovers the optimum") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = testing::random_problem(10, 10, 3, seed);
      const double opt = idealized_qaoa_solve(p.chat, 3).value;
      CHECK(top_pool_value(p.chat, p.chat, 3) == doctest::Approx(opt).epsilon(1e-14));
      CHECK(argmin_value(p.chat, p.chat, 3) == doctest::Approx(opt).epsilon(1e-14));
    }
  }

  TEST_CASE("top pool never beats the optimum and widens the argmin") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = testing::random_problem(12, 12, 4, seed);
      const Matrix x = p.chat + testing::random_symmetric(12, seed + 40, 0.3);
      const double opt = idealized_qaoa_solve(p.chat, 4).value;
      const double pool = top_pool_value(x, p.chat, 4);
      CHECK(pool >= opt - 1e-12);
      CHECK(pool <= argmin_value(x, p.chat, 4) + 1e-12);
    }
  }

  TEST_CASE("router") {
    Matrix c = Matrix::Zero(3, 3);
    c(0, 2) = c(2, 0) = 0.5;
    CHECK(estimate_swap_count(c, HardwareGraph::path(3), Permutation::identity(3)) == 1);
    CHECK(estimate_swap_count(c, HardwareGraph::path(3), Permutation({0, 2, 1})) == 0);
    const auto p = testing::random_problem(6, 6, 2, 1);
    CHECK(estimate_swap_count(p.chat, HardwareGraph::complete(6), Permutation::identity(6)) == 0);
    CHECK(estimate_swap_count(p.chat, HardwareGraph::path(6), Permutation::identity(6)) > 0);
    // Padded indices have no couplings and cost nothing.
    const auto padded = testing::random_problem(6, 2, 1, 1);
    CHECK(estimate_swap_count(padded.chat, HardwareGraph::path(6), Permutation::identity(6)) == 0);
  }

  TEST_CASE("baseline closed form matches the depolarized average") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto p = testing::random_problem(8, 6, 2, seed);
      const double opt = idealized_qaoa_solve(asset_block(p.chat, 6), 2).value;
      const double avg = uniform_average_value(p.chat);
      CHECK(avg == doctest::Approx((p.chat.trace() + p.chat.sum()) / 4.0).epsilon(1e-12));
      for (double prob : {0.0, 0.1, 0.5, 1.0}) {
        NoiseModel noise;
        noise.p = prob;
        CHECK(baseline_expected_value(p.chat, noise, opt) ==
              doctest::Approx((1.0 - prob) * opt + prob * avg).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("asset block") {
    const Matrix m = testing::random_symmetric(5, 1);
    const Matrix b = asset_block(m, 3);
    CHECK(b.rows() == 3);
    CHECK(b(2, 1) == m(2, 1));
  }
}
