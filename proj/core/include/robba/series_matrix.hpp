#pragma once

#include <optional>
#include <string>

#include "robba/frobenius.hpp"
#include "robba/linalg.hpp"
#include "robba/matrix.hpp"
#include "robba/series.hpp"

namespace robba {

using SeriesMatrix = Matrix<TruncatedSeries>;
using ScalarMatrix = Matrix<PAdicScalar>;

SeriesMatrix series_identity(int p, RingTag tag, std::size_t n, int hi);
SeriesMatrix series_zero(int p, RingTag tag, std::size_t rows, std::size_t cols, int hi);
SeriesMatrix series_constant(const QMatrix& m, int p, RingTag tag, int hi);

SeriesMatrix derive(const SeriesMatrix& m, Derivation mode = Derivation::Ordinary);
SeriesMatrix apply_frobenius(const FrobeniusLift& frob, const SeriesMatrix& m);
SeriesMatrix scale(const TruncatedSeries& s, const SeriesMatrix& m);
SeriesMatrix shifted(const SeriesMatrix& m, int k);
SeriesMatrix as_laurent(const SeriesMatrix& m);
SeriesMatrix truncated(const SeriesMatrix& m, int hi);

/// Coefficient matrix at t^k.
ScalarMatrix coefficient(const SeriesMatrix& m, int k);
QMatrix values(const ScalarMatrix& m);

/// Inverse by Gauss-Jordan elimination with lowest-valuation pivots.
/// Throws NonUnit when no usable pivot exists.
SeriesMatrix inverse(const SeriesMatrix& m);

/// Every entry PLUS.
bool all_plus(const SeriesMatrix& m);
int min_hi(const SeriesMatrix& m);
int max_hi(const SeriesMatrix& m);
int min_lo(const SeriesMatrix& m);

/// Location of the first coefficient where two matrices disagree.
struct Discrepancy {
  std::size_t row;
  std::size_t col;
  int exponent;
  std::string describe() const;
};

struct Comparison {
  std::optional<Discrepancy> first;
  /// Number of (entry, exponent) pairs both sides determine.
  long compared = 0;
  bool ok() const { return !first && compared > 0; }
};

Comparison compare(const SeriesMatrix& a, const SeriesMatrix& b);

/// Series vectors (coordinate columns).
using SeriesVector = std::vector<TruncatedSeries>;

SeriesVector multiply(const SeriesMatrix& m, const SeriesVector& v);
SeriesVector add(const SeriesVector& a, const SeriesVector& b);
SeriesVector subtract(const SeriesVector& a, const SeriesVector& b);
SeriesVector derive(const SeriesVector& v);
SeriesVector apply_frobenius(const FrobeniusLift& frob, const SeriesVector& v);
SeriesVector scale(const TruncatedSeries& s, const SeriesVector& v);

}  // namespace robba
