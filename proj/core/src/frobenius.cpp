#include "robba/frobenius.hpp"

#include <algorithm>

#include "robba/errors.hpp"

namespace robba {

namespace {

bool is_power_of(int q, int p) {
  if (q < p) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

TruncatedSeries checked_u(int q, TruncatedSeries u) {
  if (u.tag() != RingTag::Plus) throw InvalidInput("Frobenius unit u must be a PLUS series");
  if (!is_power_of(q, u.prime())) {
    throw InvalidInput("q = " + std::to_string(q) + " is not a positive power of p = " + std::to_string(u.prime()));
  }
  if (u.empty()) throw InvalidInput("Frobenius unit u has an empty window");
  const PAdicScalar diff = u.coeff(0) - PAdicScalar::exact(u.prime(), 1);
  const auto v = diff.valuation();
  if (v && *v < 1) throw InvalidInput("Frobenius unit u must satisfy u(0) = 1 mod p");
  return u;
}

TruncatedSeries make_log_factor(int q, const TruncatedSeries& u, const TruncatedSeries& u_inv) {
  const int p = u.prime();
  TruncatedSeries ratio = derive(u).shifted(1) * u_inv;
  return ratio + TruncatedSeries::constant(PAdicScalar::exact(p, q), RingTag::Plus, ratio.hi());
}

}  // namespace

FrobeniusLift::FrobeniusLift(int q, TruncatedSeries u)
    : q_(q),
      u_(checked_u(q, std::move(u))),
      u_inverse_(invert_unit(u_)),
      sigma_t_(u_.shifted(q_)),
      dsigma_t_(derive(sigma_t_)),
      log_factor_(make_log_factor(q_, u_, u_inverse_)) {}

FrobeniusLift FrobeniusLift::standard(int p, int q, int window) {
  return FrobeniusLift(q, TruncatedSeries::constant(p, 1, RingTag::Plus, window));
}

TruncatedSeries FrobeniusLift::apply(const TruncatedSeries& f) const {
  if (f.prime() != prime()) throw Mismatch("Frobenius lift and series over different primes");
  const int p = prime();
  const int el = f.effective_lo();
  if (f.empty() || el > f.hi()) {
    // Known zero up to hi, so sigma(f) is known zero up to q*(hi+1) - 1.
    const int hi = q_ * (f.hi() + 1) - 1;
    if (f.tag() == RingTag::Plus) return TruncatedSeries::zero(p, RingTag::Plus, hi);
    const int lo = q_ * f.lo();
    return TruncatedSeries(p, RingTag::Laurent, lo, hi, std::vector<PAdicScalar>(hi - lo + 1, PAdicScalar::zero(p)));
  }
  // sum_i a_i u^i t^(q i): the u-power window bounds the output from above.
  const int hi = std::min(q_ * (f.hi() + 1) - 1, q_ * el + u_.hi());
  const int lo = f.tag() == RingTag::Plus ? 0 : q_ * f.lo();
  if (hi < q_ * el) {
    throw TruncationInsufficient("u is known only to t^" + std::to_string(u_.hi()) +
                                 "; sigma of a series starting at t^" + std::to_string(el) +
                                 " needs inverse powers of u beyond that window");
  }
  std::vector<PAdicScalar> out(hi - lo + 1, PAdicScalar::zero(p));

  auto add_term = [&](int i, const TruncatedSeries& upow) {
    const PAdicScalar a = f.coeff(i);
    if (a.is_exact_zero()) return;
    const int shift = q_ * i;
    for (int k = 0; k <= upow.hi() && k + shift <= hi; ++k) {
      const PAdicScalar& c = upow.coefficients()[k];
      if (c.is_exact_zero()) continue;
      out[k + shift - lo] += a * c;
    }
  };

  // Powers of u are truncated to the exponents that can still reach the output.
  const int top_neg = std::max(0, -el);
  const int first = std::max(el, 0);
  TruncatedSeries power = TruncatedSeries::constant(p, 1, RingTag::Plus, hi - q_ * first);
  for (int i = 1; i <= first; ++i) power = (power * u_).truncated(hi - q_ * first);
  for (int i = first; i <= f.hi(); ++i) {
    if (i > first) power = (power * u_).truncated(hi - q_ * i);
    if (q_ * i > hi) break;
    add_term(i, power);
  }
  if (top_neg > 0) {
    // u^i for i < 0 is needed up to t^(hi - q i), which grows with |i|.
    const int need = hi - q_ * el;
    TruncatedSeries inv_power = u_inverse_.truncated(need);
    for (int i = -1; i >= el; --i) {
      if (i < -1) inv_power = (inv_power * u_inverse_).truncated(need);
      add_term(i, inv_power);
    }
  }
  return TruncatedSeries(p, f.tag(), lo, hi, std::move(out));
}

}  // namespace robba
