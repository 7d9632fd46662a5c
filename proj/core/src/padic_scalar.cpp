#include "robba/padic_scalar.hpp"

#include <algorithm>
#include <sstream>

#include "robba/errors.hpp"

namespace robba {

namespace {

int remove_factor(mpz_class& n, int p) {
  if (n == 0) return 0;
  mpz_class prime(p);
  return static_cast<int>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

mpz_class power(int p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

int valuation(const mpq_class& x, int p) {
  if (x == 0) throw InvalidInput("valuation of zero");
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  return remove_factor(num, p) - remove_factor(den, p);
}

int precision_add(int a, int b) {
  if (a == kExact || b == kExact) return kExact;
  const long s = static_cast<long>(a) + b;
  if (s >= kExact) return kExact - 1;
  if (s <= std::numeric_limits<int>::min()) return std::numeric_limits<int>::min() + 1;
  return static_cast<int>(s);
}

int precision_min(int a, int b) { return std::min(a, b); }

PAdicScalar::PAdicScalar(int p, mpq_class value, int precision)
    : p_(p), value_(std::move(value)), precision_(precision) {
  if (p < 2) throw InvalidInput("prime must be >= 2");
  value_.canonicalize();
  normalize();
}

PAdicScalar PAdicScalar::exact(int p, long numerator, long denominator) {
  if (denominator == 0) throw InvalidInput("zero denominator");
  return PAdicScalar(p, mpq_class(numerator, denominator), kExact);
}

void PAdicScalar::normalize() {
  if (precision_ == kExact || value_ == 0) return;
  mpz_class num = value_.get_num();
  mpz_class den = value_.get_den();
  const int v = remove_factor(num, p_) - remove_factor(den, p_);
  if (v >= precision_) {
    value_ = 0;
    return;
  }
  const mpz_class modulus = power(p_, precision_ - v);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  mpz_class unit = num * inv;
  mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
  if (v >= 0) {
    value_ = mpq_class(unit * power(p_, v));
  } else {
    value_ = mpq_class(unit, power(p_, -v));
    value_.canonicalize();
  }
}

std::optional<int> PAdicScalar::valuation() const {
  if (value_ == 0) {
    if (is_exact()) return std::nullopt;
    return precision_;
  }
  const int v = robba::valuation(value_, p_);
  return std::min(v, precision_);
}

PAdicScalar PAdicScalar::truncated(int m) const {
  if (m >= precision_) return *this;
  return PAdicScalar(p_, value_, m);
}

PAdicScalar PAdicScalar::operator-() const {
  PAdicScalar r(*this);
  r.value_ = -value_;
  r.normalize();
  return r;
}

PAdicScalar PAdicScalar::operator+(const PAdicScalar& o) const {
  if (p_ != o.p_) throw Mismatch("scalars over different primes");
  return PAdicScalar(p_, value_ + o.value_, std::min(precision_, o.precision_));
}

PAdicScalar PAdicScalar::operator-(const PAdicScalar& o) const {
  if (p_ != o.p_) throw Mismatch("scalars over different primes");
  return PAdicScalar(p_, value_ - o.value_, std::min(precision_, o.precision_));
}

PAdicScalar PAdicScalar::operator*(const PAdicScalar& o) const {
  if (p_ != o.p_) throw Mismatch("scalars over different primes");
  if (is_exact() && o.is_exact()) return PAdicScalar(p_, value_ * o.value_, kExact);
  const auto va = valuation();
  const auto vb = o.valuation();
  const int left = vb ? precision_add(precision_, *vb) : kExact;
  const int right = va ? precision_add(o.precision_, *va) : kExact;
  return PAdicScalar(p_, value_ * o.value_, std::min(left, right));
}

PAdicScalar PAdicScalar::operator/(const PAdicScalar& o) const {
  if (p_ != o.p_) throw Mismatch("scalars over different primes");
  if (o.value_ == 0) throw NonUnit("division by a scalar that is zero within its precision");
  const int vb = robba::valuation(o.value_, p_);
  if (is_exact() && o.is_exact()) return PAdicScalar(p_, value_ / o.value_, kExact);
  const auto va = valuation();
  const int left = precision_add(precision_, -vb);
  int right = kExact;
  if (!o.is_exact() && va) right = precision_add(o.precision_, *va - 2 * vb);
  return PAdicScalar(p_, value_ / o.value_, std::min(left, right));
}

PAdicScalar PAdicScalar::scaled(long k) const {
  if (k == 0) return PAdicScalar(p_, 0, kExact);
  if (is_exact()) return PAdicScalar(p_, value_ * k, kExact);
  const int vk = robba::valuation(mpq_class(k), p_);
  return PAdicScalar(p_, value_ * k, precision_add(precision_, vk));
}

bool PAdicScalar::congruent(const PAdicScalar& o) const {
  if (p_ != o.p_) return false;
  const mpq_class diff = value_ - o.value_;
  if (diff == 0) return true;
  const int m = std::min(precision_, o.precision_);
  if (m == kExact) return false;
  return robba::valuation(diff, p_) >= m;
}

std::string PAdicScalar::to_string() const {
  std::ostringstream os;
  os << value_.get_str();
  if (!is_exact()) os << " + O(" << p_ << "^" << precision_ << ")";
  return os.str();
}

}  // namespace robba
