#include "swapfree/qtensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swapfree/error.hpp"

namespace swapfree {

QTensor::QTensor(std::size_t n) : n_(n) {
  if (n > kQTensorCap)
    fail(ErrorCode::limit_exceeded, "q tensor holds n^4 entries; n = " + std::to_string(n) +
                                        " exceeds the cap of " + std::to_string(kQTensorCap));
  q_.assign(n * n * n * n, 0.0);
}

std::string_view to_string(QCondition c) {
  switch (c) {
    case QCondition::row_sums: return "(i) row sums";
    case QCondition::column_sums: return "(ii) column sums";
    case QCondition::upper_mccormick: return "(iii) upper McCormick";
    case QCondition::lower_mccormick: return "(iv) lower McCormick";
    case QCondition::box: return "(v) box";
    case QCondition::integrality: return "(vi) integrality";
  }
  return "unknown";
}

std::vector<QCondition> validate_qtensor(const QTensor& q, double tol) {
  const auto n = q.size();
  bool bad[7] = {};
  auto diag = [&](std::size_t k, std::size_t i) { return q(k, i, k, i); };

  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += diag(k, i);
    if (std::abs(s - 1.0) > tol) bad[1] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += diag(k, i);
    if (std::abs(s - 1.0) > tol) bad[2] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double a = diag(k, i);
      if (std::min(std::abs(a), std::abs(a - 1.0)) > tol) bad[6] = true;
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) {
          const double v = q(k, i, l, j);
          const double b = diag(l, j);
          if (v > a + tol || v > b + tol) bad[3] = true;
          if (v < a + b - 1.0 - tol) bad[4] = true;
          if (v < -tol || v > 1.0 + tol) bad[5] = true;
        }
    }
  std::vector<QCondition> out;
  for (int c = 1; c <= 6; ++c)
    if (bad[c]) out.push_back(static_cast<QCondition>(c));
  return out;
}

QTensor qtensor_from_permutation(const Permutation& p) {
  const auto n = p.size();
  QTensor q(n);
  const Matrix pm = p.matrix();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (pm(k, i) == 0.0) continue;
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) q(k, i, l, j) = pm(k, i) * pm(l, j);
    }
  return q;
}

Matrix apply_qtensor(const QTensor& q, const Matrix& m) {
  const auto n = q.size();
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n)
    fail(ErrorCode::dimension_mismatch, "matrix size does not match the q tensor");
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) s += q(k, i, l, j) * m(k, l);
      out(i, j) = s;
    }
  return out;
}

}  // namespace swapfree
