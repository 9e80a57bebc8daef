#include <doctest.h>

#include <limits>

#include "helpers.hpp"
#include "swapfree/combinations.hpp"
#include "swapfree/error.hpp"

using namespace swapfree;

TEST_SUITE("combinations") {
  TEST_CASE("binomial coefficients") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(64, 32) == 1832624140942590534ULL);
    CHECK(binomial(200, 100) == std::numeric_limits<std::uint64_t>::max());
  }

  TEST_CASE("lexicographic enumeration") {
    std::vector<std::vector<std::size_t>> seen;
    for_each_combination(4, 2, [&](const std::vector<std::size_t>& c) { seen.push_back(c); });
    const std::vector<std::vector<std::size_t>> want{{0, 1}, {0, 2}, {0, 3},
                                                     {1, 2}, {1, 3}, {2, 3}};
    CHECK(seen == want);
    std::size_t count = 0;
    for_each_combination(10, 4, [&](const std::vector<std::size_t>&) { ++count; });
    CHECK(count == 210);
  }

  TEST_CASE("edge sizes") {
    std::size_t count = 0;
    for_each_combination(3, 0, [&](const std::vector<std::size_t>& c) {
      CHECK(c.empty());
      ++count;
    });
    CHECK(count == 1);
    count = 0;
    for_each_combination(3, 3, [&](const std::vector<std::size_t>&) { ++count; });
    CHECK(count == 1);
  }

  TEST_CASE("cap") {
    try {
      for_each_combination(30, 15, [](const std::vector<std::size_t>&) {});
      FAIL("expected the cap");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::limit_exceeded);
    }
    CHECK_NOTHROW(check_enumerable(30, 15, binomial(30, 15)));
  }

  TEST_CASE("selections") {
    const std::vector<std::size_t> idx{0, 3, 5};
    const auto z = to_selection(idx);
    CHECK(z == 0b101001);
    CHECK(selected_indices(z, 8) == idx);
    // z = (0, 1) precedes z = (1, 0).
    CHECK(lex_less(0b10, 0b01));
    CHECK_FALSE(lex_less(0b01, 0b10));
    CHECK_FALSE(lex_less(0b11, 0b11));
  }

  TEST_CASE("quadratic form") {
    const Matrix m = testing::random_symmetric(5, 2);
    const std::vector<std::size_t> idx{1, 4};
    Vector z = Vector::Zero(5);
    z(1) = z(4) = 1.0;
    CHECK(quadratic_form(m, idx) == doctest::Approx(z.dot(m * z)).epsilon(1e-14));
  }
}
