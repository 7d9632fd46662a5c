#include "robba/linalg.hpp"

#include <algorithm>

namespace robba {

QMatrix q_zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols, mpq_class(0)); }

QMatrix q_identity(std::size_t n) {
  QMatrix m = q_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix q_from_integers(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (long x : r) out.back().emplace_back(x);
  }
  return QMatrix::from_rows(out);
}

bool is_zero(const QMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const mpq_class& x) { return x == 0; });
}

RowEchelon rref(const QMatrix& input) {
  QMatrix m(input);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(pivot, j));
    const mpq_class inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const mpq_class f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVector> kernel_basis(const QMatrix& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(m.cols(), mpq_class(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

CokernelProjector::CokernelProjector(const QMatrix& m) : image_(rref(m.transposed())) {
  std::vector<bool> is_pivot(m.rows(), false);
  for (auto c : image_.pivots) is_pivot[c] = true;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!is_pivot[i]) positions_.push_back(i);
}

QVector CokernelProjector::project(QVector y) const {
  for (std::size_t r = 0; r < image_.pivots.size(); ++r) {
    const mpq_class f = y[image_.pivots[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] -= f * image_.reduced(r, j);
  }
  QVector out;
  out.reserve(positions_.size());
  for (auto i : positions_) out.push_back(y[i]);
  return out;
}

std::vector<std::size_t> cokernel_positions(const QMatrix& m) { return CokernelProjector(m).positions(); }

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw Mismatch("right-hand side length mismatch");
  QMatrix aug = q_zero(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto e = rref(aug);
  QVector x(m.cols(), mpq_class(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

QMatrix inverse(const QMatrix& m) {
  if (!m.square()) throw Mismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug = q_zero(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw NonUnit("singular matrix");
  QMatrix inv = q_zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

QVector apply(const QMatrix& m, const QVector& x) {
  if (x.size() != m.cols()) throw Mismatch("vector length mismatch");
  QVector y(m.rows(), mpq_class(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (x[j] != 0 && m(i, j) != 0) y[i] += m(i, j) * x[j];
  return y;
}

bool is_nilpotent(const QMatrix& m) {
  if (!m.square()) return false;
  if (m.rows() == 0) return true;
  // m is nilpotent iff m^(2^k) = 0 with 2^k >= n.
  QMatrix power(m);
  std::size_t reach = 1;
  while (reach < m.rows()) {
    power = power * power;
    reach *= 2;
  }
  return is_zero(power);
}

QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m = q_zero(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

QMatrix multiply_sparse(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw Mismatch("matrix product shape mismatch");
  QMatrix out = q_zero(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const mpq_class& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += x * b(k, j);
    }
  return out;
}

std::string to_string(const mpq_class& x) { return x.get_str(); }

}  // namespace robba
