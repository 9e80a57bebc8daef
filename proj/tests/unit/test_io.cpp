#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "helpers.hpp"
#include "swapfree/error.hpp"
#include "swapfree/io.hpp"

using namespace swapfree;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("graph text round trip") {
    const auto g = random_connected_graph(9, 0.4, 2);
    CHECK(parse_graph(format_graph(g)) == g);
    CHECK(parse_graph("# header\n3 2\n\n0 1\n  1 2\n") == HardwareGraph::path(3));
  }

  TEST_CASE("malformed graphs are io errors") {
    CHECK(code_of([] { parse_graph(""); }) == ErrorCode::io);
    CHECK(code_of([] { parse_graph("3 2\n0 1\n"); }) == ErrorCode::io);
    CHECK(code_of([] { parse_graph("3 1\n0 3\n"); }) == ErrorCode::io);
    CHECK(code_of([] { parse_graph("3 2\n0 1\n1 0\n"); }) == ErrorCode::io);
    CHECK(code_of([] { parse_graph("3 1\n0 x\n"); }) == ErrorCode::io);
    CHECK(code_of([] { parse_graph("3 1\n0 1 2\n"); }) == ErrorCode::io);
  }

  TEST_CASE("numeric csv with and without labels") {
    const auto a = parse_csv_matrix("1,2\n3,4\n");
    CHECK(a.labels.empty());
    CHECK(a.values(1, 0) == 3.0);
    const auto b = parse_csv_matrix("x,y\n1,2.5\n");
    CHECK(b.labels == std::vector<std::string>{"x", "y"});
    CHECK(b.values(0, 1) == 2.5);
    CHECK(code_of([] { parse_csv_matrix("1,2\n3\n"); }) == ErrorCode::io);
    CHECK(code_of([] { parse_csv_matrix("1,2\n3,z\n"); }) == ErrorCode::io);
  }

  TEST_CASE("matrix csv round trip is exact") {
    const Matrix m = testing::random_symmetric(4, 3);
    const auto back = parse_csv_matrix(format_matrix_csv(m, {"a", "b", "c", "d"}));
    CHECK(back.values == m);
    CHECK(back.labels.size() == 4);
  }

  TEST_CASE("correlation csv") {
    const auto a = parse_correlation_csv("A,B\n1,0.5\n0.5,1\n");
    CHECK(a.labels == std::vector<std::string>{"A", "B"});
    CHECK(a.values(0, 1) == 0.5);
    const auto b = parse_correlation_csv(",A,B\nA,1,-0.2\nB,-0.2,1\n");
    CHECK(b.labels == std::vector<std::string>{"A", "B"});
    CHECK(b.values(1, 0) == -0.2);
    CHECK(code_of([] { parse_correlation_csv("A,B\n1,0.5\n"); }) == ErrorCode::io);
  }

  TEST_CASE("returns csv") {
    const auto a = parse_returns_csv("asset,t1,t2,t3\nX,0.1,0.2,0.3\nY,0.3,0.1,0.2\n");
    CHECK(a.labels == std::vector<std::string>{"X", "Y"});
    CHECK(a.values.cols() == 3);
    const auto b = parse_returns_csv("X,0.1,0.2\nY,0.3,0.1\n");
    CHECK(b.labels.size() == 2);
    CHECK(code_of([] { parse_returns_csv("X,0.1\n"); }) == ErrorCode::io);
    CHECK(code_of([] { parse_returns_csv("X,0.1,0.2\nY,0.3\n"); }) == ErrorCode::io);
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "swapfree_io_test_returns.csv").string();
    write_text_file(path, "X,0.1,0.2,0.4\nY,0.3,0.1,0.0\nZ,0.0,0.5,0.1\n");
    const auto c = load_correlation(path, DataMode::returns);
    CHECK(c.values.rows() == 3);
    CHECK(c.values(1, 1) == doctest::Approx(1.0));
    std::filesystem::remove(path);
    CHECK(code_of([&] { read_text_file(path); }) == ErrorCode::io);
    CHECK(code_of([&] { read_graph_file(path); }) == ErrorCode::io);
  }

  TEST_CASE("certificate json") {
    SdpCertificate cert;
    cert.lambda = 0.25;
    cert.x = Matrix::Identity(2, 2);
    cert.dual_y = Matrix::Zero(2, 2);
    cert.permutation = Permutation({1, 0});
    cert.status = SdpStatus::optimal;
    const auto j = nlohmann::json::parse(certificate_to_json(cert));
    CHECK(j["lambda"].get<double>() == 0.25);
    CHECK(j["status"] == "optimal");
    CHECK(j["permutation"] == nlohmann::json::array({1, 0}));
    CHECK(j["x"][1][1].get<double>() == 1.0);
    CHECK(j.contains("dual_y"));
  }
}
