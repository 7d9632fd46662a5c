#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "robba/padic_scalar.hpp"

namespace robba {

/// PLUS models the plus ring S_K (no negative exponents); LAURENT models the
/// bounded Robba ring with a finite principal part.
enum class RingTag { Plus, Laurent };

std::string to_string(RingTag tag);
RingTag ring_tag_from_string(const std::string& s);

/// Finite window [lo, hi] of a power or Laurent series with p-adic coefficients.
///
/// Coefficients below `lo` are exactly zero. Coefficients above `hi` are
/// unknown; every operation reports only the exponents its inputs determine.
/// An empty window (hi == lo - 1) is allowed and carries no information.
class TruncatedSeries {
 public:
  TruncatedSeries(int p, RingTag tag, int lo, int hi, std::vector<PAdicScalar> coeffs);

  static TruncatedSeries zero(int p, RingTag tag, int hi);
  static TruncatedSeries constant(const PAdicScalar& c, RingTag tag, int hi);
  static TruncatedSeries constant(int p, long c, RingTag tag, int hi) {
    return constant(PAdicScalar::exact(p, c), tag, hi);
  }
  /// c * t^k known (zero elsewhere) on [min(k, 0), hi].
  static TruncatedSeries monomial(const PAdicScalar& c, int k, RingTag tag, int hi);
  /// Exact integer coefficients starting at exponent `lo`; window ends at the last one.
  static TruncatedSeries from_integers(int p, RingTag tag, int lo, const std::vector<long>& coeffs);

  int prime() const { return p_; }
  RingTag tag() const { return tag_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool empty() const { return hi_ < lo_; }
  const std::vector<PAdicScalar>& coefficients() const { return coeffs_; }

  /// Exact zero below lo; throws TruncationInsufficient above hi.
  PAdicScalar coeff(int k) const;
  bool known(int k) const { return k <= hi_; }

  /// Least exponent whose coefficient is not an exact zero; hi + 1 when none.
  int effective_lo() const;
  /// t-adic valuation; nullopt (UNKNOWN) when every window coefficient vanishes.
  std::optional<int> valuation() const;
  /// Smallest coefficient precision on the window (kExact if all exact).
  int min_precision() const;

  TruncatedSeries as_laurent() const;
  /// Re-tag as PLUS; throws InvalidInput if a negative exponent is nonzero.
  TruncatedSeries as_plus() const;
  /// Forget coefficients above `hi`.
  TruncatedSeries truncated(int hi) const;
  /// Lower every coefficient's precision to at most `m`.
  TruncatedSeries with_precision(int m) const;
  /// Multiply by t^k (exact; PLUS results need k >= -effective_lo()).
  TruncatedSeries shifted(int k) const;

  TruncatedSeries operator-() const;
  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const PAdicScalar& c) const;
  TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }

  /// Coefficientwise congruence at the smaller precision on the common window.
  bool congruent(const TruncatedSeries& o) const;
  /// First exponent where congruence fails, if any.
  std::optional<int> first_difference(const TruncatedSeries& o) const;
  /// Number of exponents both sides determine.
  int common_known(const TruncatedSeries& o) const;

  bool operator==(const TruncatedSeries& o) const;
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  int p_;
  RingTag tag_;
  int lo_;
  int hi_;
  std::vector<PAdicScalar> coeffs_;
};

/// Coercion rule for binary operations: PLUS op PLUS stays PLUS, anything else is LAURENT.
RingTag joined_tag(RingTag a, RingTag b);

enum class Derivation { Ordinary, Logarithmic };

/// d/dt (ordinary) or t d/dt (logarithmic), term by term.
TruncatedSeries derive(const TruncatedSeries& f, Derivation mode = Derivation::Ordinary);

/// Integration of f with zero constant term.
struct Antiderivative {
  TruncatedSeries series;
  /// (exponent of the result, v_p of the divisor) for each coefficient divided by a multiple of p.
  std::vector<std::pair<int, int>> precision_loss;
};

/// The t^-1 coefficient that prevents a Laurent antiderivative.
struct Obstruction {
  PAdicScalar residue;
};

std::variant<Antiderivative, Obstruction> antiderivative(const TruncatedSeries& f);

/// Multiplicative inverse. PLUS inputs need a constant term that is nonzero
/// within precision; LAURENT inputs are factored as t^v times such a series.
TruncatedSeries invert_unit(const TruncatedSeries& f);

}  // namespace robba
