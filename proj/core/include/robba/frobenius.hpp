#pragma once

#include "robba/series.hpp"

namespace robba {

/// Frobenius lift t -> u * t^q on the coefficient rings; the identity on Q_p.
class FrobeniusLift {
 public:
  /// Throws InvalidInput unless q is a positive power of p, u is a PLUS
  /// series and u(0) = 1 mod p.
  FrobeniusLift(int q, TruncatedSeries u);

  /// The lift with u = 1, known on [0, window].
  static FrobeniusLift standard(int p, int q, int window = 256);
  static FrobeniusLift standard(int p) { return standard(p, p); }

  int prime() const { return u_.prime(); }
  int q() const { return q_; }
  const TruncatedSeries& u() const { return u_; }

  /// sigma(t) = u t^q.
  const TruncatedSeries& sigma_t() const { return sigma_t_; }
  /// d/dt sigma(t).
  const TruncatedSeries& sigma_t_derivative() const { return dsigma_t_; }
  /// (t d/dt sigma(t)) / sigma(t) = q + t u'/u; congruent to q mod t.
  const TruncatedSeries& log_factor() const { return log_factor_; }

  /// f(sigma(t)). Throws TruncationInsufficient when the u window cannot
  /// determine any output coefficient.
  TruncatedSeries apply(const TruncatedSeries& f) const;

  bool operator==(const FrobeniusLift& o) const { return q_ == o.q_ && u_ == o.u_; }

 private:
  int q_;
  TruncatedSeries u_;
  TruncatedSeries u_inverse_;
  TruncatedSeries sigma_t_;
  TruncatedSeries dsigma_t_;
  TruncatedSeries log_factor_;
};

}  // namespace robba
