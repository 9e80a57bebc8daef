#include "swapfree/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swapfree/error.hpp"
#include "swapfree/ingest.hpp"

namespace swapfree {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool parse_double(const std::string& field, double& out) {
  const auto t = trim(field);
  if (t.empty()) return false;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(trim(field));
  return out;
}

nlohmann::json matrix_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

HardwareGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream fields(t);
    long long a = -1, b = -1;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra) || a < 0 || b < 0)
      fail(ErrorCode::io, "graph line " + std::to_string(line_no) +
                              ": expected two non-negative integers, got '" + t + "'");
    if (!have_header) {
      n = static_cast<std::size_t>(a);
      m = static_cast<std::size_t>(b);
      have_header = true;
    } else {
      edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
  }
  if (!have_header) fail(ErrorCode::io, "graph file is empty");
  if (edges.size() != m)
    fail(ErrorCode::io, "graph header announces " + std::to_string(m) + " edges but " +
                            std::to_string(edges.size()) + " follow");
  try {
    return HardwareGraph(n, std::move(edges));
  } catch (const Error& e) {
    fail(ErrorCode::io, std::string("invalid graph: ") + e.what());
  }
}

std::string format_graph(const HardwareGraph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io, "write to '" + path + "' failed");
}

HardwareGraph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

CsvMatrix parse_csv_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  CsvMatrix out;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    std::vector<double> row;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_double(f, v)) {
        if (rows.empty() && out.labels.empty()) {
          out.labels = fields;
          row.clear();
          break;
        }
        fail(ErrorCode::io, "CSV line " + std::to_string(line_no) + ": '" + f +
                                "' is not a number");
      }
      row.push_back(v);
    }
    if (!row.empty()) {
      if (!rows.empty() && row.size() != rows.front().size())
        fail(ErrorCode::io, "CSV line " + std::to_string(line_no) + " has " +
                                std::to_string(row.size()) + " fields, expected " +
                                std::to_string(rows.front().size()));
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) fail(ErrorCode::io, "CSV holds no numeric rows");
  if (!out.labels.empty() && out.labels.size() != rows.front().size())
    fail(ErrorCode::io, "CSV header has " + std::to_string(out.labels.size()) +
                            " fields but rows have " + std::to_string(rows.front().size()));
  out.values.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return out;
}

CsvMatrix read_csv_matrix(const std::string& path) {
  return parse_csv_matrix(read_text_file(path));
}

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line))
    if (!trim(line).empty()) rows.push_back(split_csv_line(line));
  return rows;
}

bool all_numeric(const std::vector<std::string>& fields, std::size_t from) {
  double v = 0.0;
  for (std::size_t i = from; i < fields.size(); ++i)
    if (!parse_double(fields[i], v)) return false;
  return true;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

std::vector<double> numeric_fields(const std::vector<std::string>& fields, std::size_t from,
                                   std::size_t row_no) {
  std::vector<double> out;
  for (std::size_t i = from; i < fields.size(); ++i) {
    double v = 0.0;
    if (!parse_double(fields[i], v))
      fail(ErrorCode::io, "CSV row " + std::to_string(row_no) + ": '" + fields[i] +
                              "' is not a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace

CsvMatrix parse_correlation_csv(const std::string& text) {
  auto rows = csv_rows(text);
  if (rows.size() < 2) fail(ErrorCode::io, "correlation CSV needs a header and data rows");
  CsvMatrix out;
  out.labels = rows.front();
  if (!out.labels.empty() && out.labels.front().empty()) out.labels.erase(out.labels.begin());
  const std::size_t m = out.labels.size();
  if (rows.size() != m + 1)
    fail(ErrorCode::io, "correlation CSV has " + std::to_string(m) + " labels but " +
                            std::to_string(rows.size() - 1) + " data rows");
  std::vector<std::vector<double>> values;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    std::size_t from = 0;
    if (f.size() == m + 1) from = 1;
    else if (f.size() != m)
      fail(ErrorCode::io, "correlation CSV row " + std::to_string(r) + " has " +
                              std::to_string(f.size()) + " fields, expected " +
                              std::to_string(m));
    values.push_back(numeric_fields(f, from, r));
  }
  out.values = to_matrix(values);
  return out;
}

CsvMatrix parse_returns_csv(const std::string& text) {
  auto rows = csv_rows(text);
  if (!rows.empty() && !all_numeric(rows.front(), 1)) rows.erase(rows.begin());
  if (rows.empty()) fail(ErrorCode::io, "returns CSV holds no asset rows");
  CsvMatrix out;
  std::vector<std::vector<double>> values;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() < 3)
      fail(ErrorCode::io, "returns CSV row " + std::to_string(r) +
                              " needs a label and at least two periods");
    if (!values.empty() && f.size() - 1 != values.front().size())
      fail(ErrorCode::io, "returns CSV row " + std::to_string(r) + " has " +
                              std::to_string(f.size() - 1) + " periods, expected " +
                              std::to_string(values.front().size()));
    out.labels.push_back(f.front());
    values.push_back(numeric_fields(f, 1, r));
  }
  out.values = to_matrix(values);
  return out;
}

CsvMatrix load_correlation(const std::string& path, DataMode mode) {
  const auto text = read_text_file(path);
  if (mode == DataMode::correlation) return parse_correlation_csv(text);
  auto returns = parse_returns_csv(text);
  return {correlation_from_returns(returns.values), std::move(returns.labels)};
}

std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  if (!labels.empty()) out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

std::string certificate_to_json(const SdpCertificate& cert, int indent) {
  nlohmann::json j;
  j["lambda"] = cert.lambda;
  j["dual_value"] = cert.dual_value;
  j["primal_dual_gap"] = cert.primal_dual_gap;
  j["status"] = to_string(cert.status);
  j["iterations"] = cert.iterations;
  j["permutation"] = cert.permutation.map();
  j["x"] = matrix_json(cert.x);
  j["dual_y"] = matrix_json(cert.dual_y);
  return j.dump(indent);
}

}  // namespace swapfree
