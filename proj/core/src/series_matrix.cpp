#include "robba/series_matrix.hpp"

#include <algorithm>
#include <climits>

namespace robba {

SeriesMatrix series_identity(int p, RingTag tag, std::size_t n, int hi) {
  SeriesMatrix m = series_zero(p, tag, n, n, hi);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = TruncatedSeries::constant(p, 1, tag, hi);
  return m;
}

SeriesMatrix series_zero(int p, RingTag tag, std::size_t rows, std::size_t cols, int hi) {
  return SeriesMatrix(rows, cols, TruncatedSeries::zero(p, tag, hi));
}

SeriesMatrix series_constant(const QMatrix& m, int p, RingTag tag, int hi) {
  return m.map([&](const mpq_class& x) { return TruncatedSeries::constant(PAdicScalar(p, x), tag, hi); });
}

SeriesMatrix derive(const SeriesMatrix& m, Derivation mode) {
  return m.map([mode](const TruncatedSeries& s) { return derive(s, mode); });
}

SeriesMatrix apply_frobenius(const FrobeniusLift& frob, const SeriesMatrix& m) {
  return m.map([&](const TruncatedSeries& s) { return frob.apply(s); });
}

SeriesMatrix scale(const TruncatedSeries& s, const SeriesMatrix& m) {
  return m.map([&](const TruncatedSeries& x) { return s * x; });
}

SeriesMatrix shifted(const SeriesMatrix& m, int k) {
  return m.map([k](const TruncatedSeries& x) { return x.shifted(k); });
}

SeriesMatrix as_laurent(const SeriesMatrix& m) {
  return m.map([](const TruncatedSeries& x) { return x.as_laurent(); });
}

SeriesMatrix truncated(const SeriesMatrix& m, int hi) {
  return m.map([hi](const TruncatedSeries& x) { return x.truncated(hi); });
}

ScalarMatrix coefficient(const SeriesMatrix& m, int k) {
  return m.map([k](const TruncatedSeries& x) { return x.coeff(k); });
}

QMatrix values(const ScalarMatrix& m) {
  return m.map([](const PAdicScalar& x) { return x.value(); });
}

SeriesMatrix inverse(const SeriesMatrix& input) {
  if (!input.square()) throw Mismatch("inverse of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return input;
  const int p = input(0, 0).prime();
  RingTag tag = RingTag::Plus;
  for (const auto& x : input.data()) tag = joined_tag(tag, x.tag());
  SeriesMatrix a(input);
  SeriesMatrix inv = series_identity(p, tag, n, max_hi(input));
  if (tag == RingTag::Laurent) inv = as_laurent(inv);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    int best_val = INT_MAX;
    for (std::size_t r = col; r < n; ++r) {
      const auto v = a(r, col).valuation();
      if (v && *v < best_val) {
        best_val = *v;
        best = r;
      }
    }
    if (best == n) throw NonUnit("matrix is singular within its window (column " + std::to_string(col) + ")");
    if (tag == RingTag::Plus && best_val != 0)
      throw NonUnit("constant-term matrix is singular; not invertible over S_K");
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(best, j), a(col, j));
        std::swap(inv(best, j), inv(col, j));
      }
    }
    const TruncatedSeries pivot_inv = invert_unit(a(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = pivot_inv * a(col, j);
      inv(col, j) = pivot_inv * inv(col, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const TruncatedSeries f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
      // The pivot column is zero by construction; keep it exactly so.
      a(r, col) = TruncatedSeries::zero(p, a(r, col).tag(), a(r, col).hi());
    }
  }
  return inv;
}

bool all_plus(const SeriesMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(), [](const auto& x) { return x.tag() == RingTag::Plus; });
}

int min_hi(const SeriesMatrix& m) {
  int h = INT_MAX;
  for (const auto& x : m.data()) h = std::min(h, x.hi());
  return h;
}

int max_hi(const SeriesMatrix& m) {
  int h = INT_MIN;
  for (const auto& x : m.data()) h = std::max(h, x.hi());
  return h;
}

int min_lo(const SeriesMatrix& m) {
  int l = INT_MAX;
  for (const auto& x : m.data()) l = std::min(l, x.lo());
  return l;
}

std::string Discrepancy::describe() const {
  return "entry (" + std::to_string(row) + "," + std::to_string(col) + ") at t^" + std::to_string(exponent);
}

Comparison compare(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Mismatch("matrix shape mismatch");
  Comparison c;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      c.compared += a(i, j).common_known(b(i, j));
      if (c.first) continue;
      if (auto k = a(i, j).first_difference(b(i, j))) c.first = Discrepancy{i, j, *k};
    }
  }
  return c;
}

SeriesVector multiply(const SeriesMatrix& m, const SeriesVector& v) {
  if (m.cols() != v.size()) throw Mismatch("matrix-vector shape mismatch");
  SeriesVector out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    TruncatedSeries acc = m(i, 0) * v[0];
    for (std::size_t k = 1; k < v.size(); ++k) acc = acc + m(i, k) * v[k];
    out.push_back(std::move(acc));
  }
  return out;
}

SeriesVector add(const SeriesVector& a, const SeriesVector& b) {
  if (a.size() != b.size()) throw Mismatch("vector length mismatch");
  SeriesVector out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

SeriesVector subtract(const SeriesVector& a, const SeriesVector& b) {
  if (a.size() != b.size()) throw Mismatch("vector length mismatch");
  SeriesVector out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  return out;
}

SeriesVector derive(const SeriesVector& v) {
  SeriesVector out;
  for (const auto& x : v) out.push_back(derive(x));
  return out;
}

SeriesVector apply_frobenius(const FrobeniusLift& frob, const SeriesVector& v) {
  SeriesVector out;
  for (const auto& x : v) out.push_back(frob.apply(x));
  return out;
}

SeriesVector scale(const TruncatedSeries& s, const SeriesVector& v) {
  SeriesVector out;
  for (const auto& x : v) out.push_back(s * x);
  return out;
}

}  // namespace robba
