#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "robba/matrix.hpp"

namespace robba {

/// Exact rational matrices and vectors. No floating point anywhere.
using QMatrix = Matrix<mpq_class>;
using QVector = std::vector<mpq_class>;

QMatrix q_zero(std::size_t rows, std::size_t cols);
QMatrix q_identity(std::size_t n);
QMatrix q_from_integers(const std::vector<std::vector<long>>& rows);

bool is_zero(const QMatrix& m);

struct RowEchelon {
  QMatrix reduced;                  ///< reduced row echelon form
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

RowEchelon rref(const QMatrix& m);
std::size_t rank(const QMatrix& m);

/// Basis of {x : m x = 0}.
std::vector<QVector> kernel_basis(const QMatrix& m);

/// Coordinates (row indices) forming a complement of the column space;
/// the standard vectors at these positions represent a basis of coker(m).
std::vector<std::size_t> cokernel_positions(const QMatrix& m);

/// Reduces vectors of the target space modulo the column space of m and reads
/// off coordinates on the complement returned by cokernel_positions.
class CokernelProjector {
 public:
  explicit CokernelProjector(const QMatrix& m);
  const std::vector<std::size_t>& positions() const { return positions_; }
  QVector project(QVector y) const;

 private:
  RowEchelon image_;  // rows span the column space of m
  std::vector<std::size_t> positions_;
};

/// Some x with m x = b, if one exists.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

/// Throws NonUnit when singular.
QMatrix inverse(const QMatrix& m);

QVector apply(const QMatrix& m, const QVector& x);

/// m^k == 0 for k = rows.
bool is_nilpotent(const QMatrix& m);

/// Columns of the matrix as vectors, and the reverse.
QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

/// Product that skips zero entries of the left factor.
QMatrix multiply_sparse(const QMatrix& a, const QMatrix& b);

std::string to_string(const mpq_class& x);

}  // namespace robba
