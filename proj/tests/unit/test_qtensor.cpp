#include <doctest.h>

#include "helpers.hpp"
#include "swapfree/error.hpp"
#include "swapfree/qtensor.hpp"

using namespace swapfree;

TEST_SUITE("qtensor") {
  TEST_CASE("tensor of a permutation satisfies every condition") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      std::vector<std::size_t> map{0, 1, 2, 3, 4};
      SplitMix64 rng(seed);
      shuffle(map, rng);
      const auto q = qtensor_from_permutation(Permutation(map));
      CHECK(validate_qtensor(q).empty());
    }
  }

  TEST_CASE("applying the tensor of P relabels the matrix") {
    const Permutation p({2, 0, 3, 1});
    const Matrix m = testing::random_symmetric(4, 5);
    const auto q = qtensor_from_permutation(p);
    CHECK(testing::max_abs(apply_qtensor(q, m) - apply_permutation(p, m)) < 1e-15);
  }

  TEST_CASE("zero tensor breaks only the assignment sums") {
    const QTensor q(3);
    CHECK(validate_qtensor(q) ==
          std::vector<QCondition>{QCondition::row_sums, QCondition::column_sums});
  }

  TEST_CASE("a dropped product breaks the lower envelope") {
    auto q = qtensor_from_permutation(Permutation::identity(3));
    q(0, 0, 1, 1) = 0.0;
    CHECK(validate_qtensor(q) == std::vector<QCondition>{QCondition::lower_mccormick});
  }

  TEST_CASE("an inflated product breaks the upper envelope and the box") {
    auto q = qtensor_from_permutation(Permutation::identity(3));
    q(0, 0, 1, 2) = 2.0;
    CHECK(validate_qtensor(q) ==
          std::vector<QCondition>{QCondition::upper_mccormick, QCondition::box});
  }

  TEST_CASE("fractional diagonal breaks integrality") {
    QTensor q(2);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t l = 0; l < 2; ++l)
          for (std::size_t j = 0; j < 2; ++j) q(k, i, l, j) = 0.25;
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < 2; ++i) q(k, i, k, i) = 0.5;
    const auto v = validate_qtensor(q);
    CHECK(v == std::vector<QCondition>{QCondition::integrality});
    CHECK(to_string(QCondition::integrality).size() > 0);
  }

  TEST_CASE("size cap") { CHECK_THROWS_AS(QTensor(kQTensorCap + 1), Error); }
}
