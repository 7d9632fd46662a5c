#pragma once

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <string>

namespace robba {

/// Saturating precision exponent. `kExact` means the value is known exactly.
inline constexpr int kExact = std::numeric_limits<int>::max();

/// p-adic valuation of a nonzero rational.
int valuation(const mpq_class& x, int p);

/// Element of Q_p represented by an exact rational together with an absolute
/// precision m: the true value is only known modulo p^m. Inexact values are
/// kept in a canonical reduced form (an integer in [0, p^(m-v)) times p^v),
/// so two scalars with equal (value, precision) denote the same ball.
class PAdicScalar {
 public:
  PAdicScalar() = default;
  PAdicScalar(int p, mpq_class value, int precision = kExact);

  static PAdicScalar exact(int p, long numerator, long denominator = 1);
  static PAdicScalar zero(int p, int precision = kExact) { return PAdicScalar(p, 0, precision); }

  int prime() const { return p_; }
  const mpq_class& value() const { return value_; }
  int precision() const { return precision_; }
  bool is_exact() const { return precision_ == kExact; }

  /// Zero modulo p^precision (for exact scalars: exactly zero).
  bool is_zero() const { return value_ == 0; }
  bool is_exact_zero() const { return is_exact() && value_ == 0; }

  /// Effective valuation: v(value) for a nonzero ball, the precision for an
  /// inexact zero, and nullopt (infinity) for an exact zero.
  std::optional<int> valuation() const;

  /// Same ball with precision lowered to `m` (never raised).
  PAdicScalar truncated(int m) const;

  PAdicScalar operator-() const;
  PAdicScalar operator+(const PAdicScalar& o) const;
  PAdicScalar operator-(const PAdicScalar& o) const;
  PAdicScalar operator*(const PAdicScalar& o) const;
  /// Throws NonUnit when the divisor is zero within its precision.
  PAdicScalar operator/(const PAdicScalar& o) const;
  PAdicScalar& operator+=(const PAdicScalar& o) { return *this = *this + o; }
  PAdicScalar& operator-=(const PAdicScalar& o) { return *this = *this - o; }
  PAdicScalar& operator*=(const PAdicScalar& o) { return *this = *this * o; }

  /// Multiplication by an exact integer; cheaper than building a scalar.
  PAdicScalar scaled(long k) const;

  /// Congruence modulo p^min(precisions).
  bool congruent(const PAdicScalar& o) const;

  /// Structural identity of the representation.
  bool operator==(const PAdicScalar& o) const {
    return p_ == o.p_ && precision_ == o.precision_ && value_ == o.value_;
  }
  bool operator!=(const PAdicScalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void normalize();

  int p_ = 2;
  mpq_class value_ = 0;
  int precision_ = kExact;
};

/// Saturating helpers for precision exponents.
int precision_add(int a, int b);
int precision_min(int a, int b);

}  // namespace robba
