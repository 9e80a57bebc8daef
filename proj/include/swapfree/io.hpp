#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swapfree/approx.hpp"
#include "swapfree/graph.hpp"

namespace swapfree {

/// Graph text format: a header line "n m" followed by m lines "i j" with
/// 0-based endpoints. Blank lines and lines starting with '#' are skipped.
HardwareGraph parse_graph(const std::string& text);
std::string format_graph(const HardwareGraph& g);
HardwareGraph read_graph_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// Numeric CSV with an optional header row. Labels come from the header when
/// its first field does not parse as a number.
struct CsvMatrix {
  Matrix values;
  std::vector<std::string> labels;
};

CsvMatrix parse_csv_matrix(const std::string& text);
CsvMatrix read_csv_matrix(const std::string& path);

/// Square correlation matrix under a header row of asset labels. Rows may
/// also start with their label.
CsvMatrix parse_correlation_csv(const std::string& text);

/// One asset per row: a label followed by its per-period returns. A first
/// line whose value fields are not numeric is taken as a header and skipped.
CsvMatrix parse_returns_csv(const std::string& text);

enum class DataMode { correlation, returns };

/// Correlation matrix and labels from either layout.
CsvMatrix load_correlation(const std::string& path, DataMode mode);

std::string format_matrix_csv(const Matrix& m, const std::vector<std::string>& labels = {});

/// JSON document with lambda, gap, status, dual value, the permutation and
/// the X and Y matrices as nested row arrays.
std::string certificate_to_json(const SdpCertificate& cert, int indent = 2);

}  // namespace swapfree
