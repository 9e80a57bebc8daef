#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "swapfree/error.hpp"
#include "swapfree/ingest.hpp"

using namespace swapfree;

TEST_SUITE("ingest") {
  TEST_CASE("similarity of a single correlation value") {
    Matrix corr(2, 2);
    for (double r : {1.0, 0.0, -1.0}) {
      corr << 1.0, r, r, 1.0;
      const auto s = similarity_from_correlation(corr);
      CHECK(s.values(0, 0) == 0.0);
      CHECK(s.values(0, 1) == doctest::Approx(1.0 - std::exp(-(1.0 - r))));
    }
    corr << 1.0, 0.0, 0.0, 1.0;
    CHECK(similarity_from_correlation(corr).values(0, 1) ==
          doctest::Approx(0.6321206).epsilon(1e-7));
    corr << 1.0, -1.0, -1.0, 1.0;
    CHECK(similarity_from_correlation(corr).values(0, 1) ==
          doctest::Approx(0.8646647).epsilon(1e-7));
  }

  TEST_CASE("similarity rejects malformed correlations") {
    Matrix corr(2, 2);
    corr << 1.0, 0.3, 0.2, 1.0;
    CHECK_THROWS_AS(similarity_from_correlation(corr), Error);
    corr << 1.0, 1.5, 1.5, 1.0;
    CHECK_THROWS_AS(similarity_from_correlation(corr), Error);
  }

  TEST_CASE("similarity is decreasing in the correlation") {
    Matrix corr(2, 2);
    double last = 1e9;
    for (double r = -1.0; r <= 1.0; r += 0.125) {
      corr << 1.0, r, r, 1.0;
      const double c = similarity_from_correlation(corr).values(0, 1);
      CHECK(c < last);
      last = c;
    }
  }

  TEST_CASE("problem matrix for two assets") {
    Matrix corr(2, 2);
    corr << 1.0, 0.2, 0.2, 1.0;
    const auto s = similarity_from_correlation(corr);
    const double c = s.values(0, 1);
    const auto p = build_problem_matrix(s, 1.0, 1.0, 1, 2);
    CHECK(p.chat(0, 0) == doctest::Approx(c));
    CHECK(p.chat(0, 1) == doctest::Approx(-c / 2));
    CHECK(p.chat(1, 1) == doctest::Approx(c));
  }

  TEST_CASE("padding rows are zero") {
    const auto p = testing::random_problem(4, 2, 1, 7);
    CHECK(p.chat.row(2).isZero());
    CHECK(p.chat.col(3).isZero());
    CHECK(p.assets() == 2);
    CHECK(p.size() == 4);
  }

  TEST_CASE("build_problem_matrix validation") {
    const auto s = similarity_from_correlation(synthetic_correlation(3, 1));
    CHECK_THROWS_AS(build_problem_matrix(s, 1.0, 1.0, 5, 4), Error);
    CHECK_THROWS_AS(build_problem_matrix(s, 0.0, 1.0, 1, 4), Error);
    CHECK_THROWS_AS(build_problem_matrix(s, 1.0, 1.0, 1, 2), Error);
  }

  TEST_CASE("decomposition into degree and laplacian parts") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const double alpha = 0.5 + seed * 0.3, beta = 2.0 - seed * 0.2;
      const auto s = similarity_from_correlation(synthetic_correlation(6, seed));
      const auto p = build_problem_matrix(s, alpha, beta, 2, 6);
      const Matrix d = (s.values * Vector::Ones(6)).asDiagonal();
      const Matrix rebuilt = (beta - alpha / 2) * d + (alpha / 2) * laplacian_part(s);
      CHECK(testing::max_abs(rebuilt - p.chat) <= 1e-12);
    }
  }

  TEST_CASE("laplacian part is a PSD Laplacian") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = similarity_from_correlation(synthetic_correlation(7, seed));
      const Matrix l = laplacian_part(s);
      CHECK((l * Vector::Ones(7)).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(l);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    }
  }

  TEST_CASE("linear term folds into the diagonal") {
    const std::size_t m = 8;
    const double alpha = 1.3, beta = 0.7;
    const auto s = similarity_from_correlation(synthetic_correlation(m, 3));
    const auto p = build_problem_matrix(s, alpha, beta, 2, m);
    for (std::uint64_t x = 0; x < (1u << m); ++x) {
      Vector z(m);
      for (std::size_t i = 0; i < m; ++i) z[i] = (x >> i) & 1;
      const double lhs = beta * Vector::Ones(m).dot(s.values * z) - alpha / 2 * z.dot(s.values * z);
      CHECK(lhs == doctest::Approx(z.dot(p.chat * z)).epsilon(1e-12));
    }
  }

  TEST_CASE("pearson correlation from returns") {
    Matrix r(3, 5);
    r << 1, 2, 3, 2, 1,
         1, 2, 3, 2, 1,
         -1, -2, -3, -2, -1;
    const auto c = correlation_from_returns(r);
    CHECK(c(0, 1) == doctest::Approx(1.0));
    CHECK(c(0, 2) == doctest::Approx(-1.0));
    CHECK(c.diagonal().isOnes());
  }

  TEST_CASE("random returns give a PSD correlation") {
    SplitMix64 rng(5);
    Matrix r(4, 50);
    for (Eigen::Index i = 0; i < r.size(); ++i) r.data()[i] = rng.normal();
    const auto c = correlation_from_returns(r);
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    CHECK(c.cwiseAbs().maxCoeff() <= 1.0);
  }

  TEST_CASE("zero-variance asset is named in the error") {
    Matrix r(2, 3);
    r << 1, 2, 3, 4, 4, 4;
    try {
      correlation_from_returns(r);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
    CHECK_THROWS_AS(correlation_from_returns(Matrix::Ones(2, 1)), Error);
  }

  TEST_CASE("synthetic correlations are valid and seeded") {
    const auto a = synthetic_correlation(6, 9);
    CHECK(a.diagonal().isOnes(1e-12));
    CHECK(a == a.transpose());
    CHECK(a == synthetic_correlation(6, 9));
    CHECK_FALSE(a == synthetic_correlation(6, 10));
    CHECK(testing::max_abs(select_assets(a, {1, 4}) - a({1, 4}, {1, 4})) == 0.0);
  }
}
