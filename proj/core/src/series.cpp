#include "robba/series.hpp"

#include <algorithm>
#include <sstream>

#include "robba/errors.hpp"

namespace robba {

namespace {

// Running sum of products a_i * b_j with the product precision rule applied per term.
struct ProductSum {
  mpq_class value = 0;
  int precision = kExact;

  void add(const PAdicScalar& a, const std::optional<int>& va, const PAdicScalar& b,
           const std::optional<int>& vb) {
    value += a.value() * b.value();
    if (a.is_exact() && b.is_exact()) return;
    const int left = vb ? precision_add(a.precision(), *vb) : kExact;
    const int right = va ? precision_add(b.precision(), *va) : kExact;
    precision = std::min({precision, left, right});
  }

  PAdicScalar finish(int p) const { return PAdicScalar(p, value, precision); }
};

std::vector<std::optional<int>> valuations(const std::vector<PAdicScalar>& cs) {
  std::vector<std::optional<int>> v;
  v.reserve(cs.size());
  for (const auto& c : cs) v.push_back(c.valuation());
  return v;
}

}  // namespace

std::string to_string(RingTag tag) { return tag == RingTag::Plus ? "PLUS" : "LAURENT"; }

RingTag ring_tag_from_string(const std::string& s) {
  if (s == "PLUS") return RingTag::Plus;
  if (s == "LAURENT") return RingTag::Laurent;
  throw InvalidInput("unknown ring tag '" + s + "'");
}

RingTag joined_tag(RingTag a, RingTag b) {
  return (a == RingTag::Plus && b == RingTag::Plus) ? RingTag::Plus : RingTag::Laurent;
}

TruncatedSeries::TruncatedSeries(int p, RingTag tag, int lo, int hi, std::vector<PAdicScalar> coeffs)
    : p_(p), tag_(tag), lo_(lo), hi_(hi), coeffs_(std::move(coeffs)) {
  if (p < 2) throw InvalidInput("prime must be >= 2");
  if (hi < lo - 1) throw InvalidInput("window hi < lo - 1");
  if (tag == RingTag::Plus && lo != 0) throw InvalidInput("PLUS series must have lo = 0");
  if (coeffs_.size() != static_cast<std::size_t>(hi - lo + 1))
    throw InvalidInput("coefficient count does not match window");
  for (const auto& c : coeffs_)
    if (c.prime() != p) throw Mismatch("coefficient over a different prime");
}

TruncatedSeries TruncatedSeries::zero(int p, RingTag tag, int hi) {
  const int lo = 0;
  return TruncatedSeries(p, tag, lo, hi, std::vector<PAdicScalar>(hi - lo + 1, PAdicScalar::zero(p)));
}

TruncatedSeries TruncatedSeries::constant(const PAdicScalar& c, RingTag tag, int hi) {
  auto s = zero(c.prime(), tag, hi);
  if (hi >= 0) s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const PAdicScalar& c, int k, RingTag tag, int hi) {
  if (tag == RingTag::Plus && k < 0) throw InvalidInput("negative exponent in a PLUS series");
  const int lo = std::min(k, 0);
  std::vector<PAdicScalar> cs(std::max(0, hi - lo + 1), PAdicScalar::zero(c.prime()));
  if (k <= hi) cs[k - lo] = c;
  return TruncatedSeries(c.prime(), tag, lo, std::max(hi, lo - 1), std::move(cs));
}

TruncatedSeries TruncatedSeries::from_integers(int p, RingTag tag, int lo, const std::vector<long>& coeffs) {
  std::vector<PAdicScalar> cs;
  cs.reserve(coeffs.size());
  for (long c : coeffs) cs.push_back(PAdicScalar::exact(p, c));
  return TruncatedSeries(p, tag, lo, lo + static_cast<int>(coeffs.size()) - 1, std::move(cs));
}

PAdicScalar TruncatedSeries::coeff(int k) const {
  if (k > hi_) {
    throw TruncationInsufficient("coefficient of t^" + std::to_string(k) + " is beyond the window [" +
                                 std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
  }
  if (k < lo_) return PAdicScalar::zero(p_);
  return coeffs_[k - lo_];
}

int TruncatedSeries::effective_lo() const {
  for (int k = lo_; k <= hi_; ++k)
    if (!coeffs_[k - lo_].is_exact_zero()) return k;
  return hi_ + 1;
}

std::optional<int> TruncatedSeries::valuation() const {
  for (int k = lo_; k <= hi_; ++k)
    if (!coeffs_[k - lo_].is_zero()) return k;
  return std::nullopt;
}

int TruncatedSeries::min_precision() const {
  int m = kExact;
  for (const auto& c : coeffs_) m = std::min(m, c.precision());
  return m;
}

TruncatedSeries TruncatedSeries::as_laurent() const {
  TruncatedSeries r(*this);
  r.tag_ = RingTag::Laurent;
  return r;
}

TruncatedSeries TruncatedSeries::as_plus() const {
  if (tag_ == RingTag::Plus) return *this;
  for (int k = lo_; k < 0 && k <= hi_; ++k) {
    if (!coeffs_[k - lo_].is_exact_zero())
      throw InvalidInput("series has a nonzero coefficient at t^" + std::to_string(k));
  }
  const int hi = std::max(hi_, -1);
  std::vector<PAdicScalar> cs;
  for (int k = 0; k <= hi; ++k) cs.push_back(coeff(k));
  return TruncatedSeries(p_, RingTag::Plus, 0, hi, std::move(cs));
}

TruncatedSeries TruncatedSeries::truncated(int hi) const {
  if (hi >= hi_) return *this;
  hi = std::max(hi, lo_ - 1);
  std::vector<PAdicScalar> cs(coeffs_.begin(), coeffs_.begin() + (hi - lo_ + 1));
  return TruncatedSeries(p_, tag_, lo_, hi, std::move(cs));
}

TruncatedSeries TruncatedSeries::with_precision(int m) const {
  TruncatedSeries r(*this);
  for (auto& c : r.coeffs_) c = c.truncated(m);
  return r;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
  if (tag_ == RingTag::Laurent) return TruncatedSeries(p_, tag_, lo_ + k, hi_ + k, coeffs_);
  if (k >= 0) {
    std::vector<PAdicScalar> cs(k, PAdicScalar::zero(p_));
    cs.insert(cs.end(), coeffs_.begin(), coeffs_.end());
    return TruncatedSeries(p_, tag_, 0, hi_ + k, std::move(cs));
  }
  if (effective_lo() < -k) throw InvalidInput("shift would leave the PLUS ring");
  std::vector<PAdicScalar> cs(coeffs_.begin() + std::min<int>(-k, coeffs_.size()), coeffs_.end());
  return TruncatedSeries(p_, tag_, 0, hi_ + k, std::move(cs));
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  if (p_ != o.p_) throw Mismatch("series over different primes");
  const RingTag tag = joined_tag(tag_, o.tag_);
  const int lo = std::min(lo_, o.lo_);
  const int hi = std::min(hi_, o.hi_);
  std::vector<PAdicScalar> cs;
  cs.reserve(std::max(0, hi - lo + 1));
  for (int k = lo; k <= hi; ++k) cs.push_back(coeff(k) + o.coeff(k));
  return TruncatedSeries(p_, tag, lo, std::max(hi, lo - 1), std::move(cs));
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  if (p_ != o.p_) throw Mismatch("series over different primes");
  const RingTag tag = joined_tag(tag_, o.tag_);
  const int ela = effective_lo();
  const int elb = o.effective_lo();
  const int lo = lo_ + o.lo_;
  const int hi = std::min(hi_ + elb, o.hi_ + ela);
  if (hi < lo && !empty() && !o.empty()) {
    throw TruncationInsufficient("product determines no coefficient: windows [" + std::to_string(lo_) + ", " +
                                 std::to_string(hi_) + "] and [" + std::to_string(o.lo_) + ", " +
                                 std::to_string(o.hi_) + "]");
  }
  const int top = std::max(hi, lo - 1);
  std::vector<ProductSum> acc(top - lo + 1);
  const auto va = valuations(coeffs_);
  const auto vb = valuations(o.coeffs_);
  for (int i = ela; i <= hi_ && i + o.lo_ <= top; ++i) {
    const auto& a = coeffs_[i - lo_];
    if (a.is_exact_zero()) continue;
    for (int j = elb; j <= o.hi_ && i + j <= top; ++j) {
      const auto& b = o.coeffs_[j - o.lo_];
      if (b.is_exact_zero()) continue;
      acc[i + j - lo].add(a, va[i - lo_], b, vb[j - o.lo_]);
    }
  }
  std::vector<PAdicScalar> cs;
  cs.reserve(acc.size());
  for (const auto& s : acc) cs.push_back(s.finish(p_));
  return TruncatedSeries(p_, tag, lo, top, std::move(cs));
}

TruncatedSeries TruncatedSeries::operator*(const PAdicScalar& c) const {
  TruncatedSeries r(*this);
  for (auto& x : r.coeffs_) x = x * c;
  return r;
}

int TruncatedSeries::common_known(const TruncatedSeries& o) const {
  return std::max(0, std::min(hi_, o.hi_) - std::min(lo_, o.lo_) + 1);
}

std::optional<int> TruncatedSeries::first_difference(const TruncatedSeries& o) const {
  if (p_ != o.p_) throw Mismatch("series over different primes");
  const int hi = std::min(hi_, o.hi_);
  for (int k = std::min(lo_, o.lo_); k <= hi; ++k)
    if (!coeff(k).congruent(o.coeff(k))) return k;
  return std::nullopt;
}

bool TruncatedSeries::congruent(const TruncatedSeries& o) const { return !first_difference(o).has_value(); }

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return p_ == o.p_ && tag_ == o.tag_ && lo_ == o.lo_ && hi_ == o.hi_ && coeffs_ == o.coeffs_;
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = lo_; k <= hi_; ++k) {
    const auto& c = coeffs_[k - lo_];
    if (c.is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*t^" << k;
  }
  if (first) os << "0";
  os << " + O(t^" << hi_ + 1 << ")";
  return os.str();
}

TruncatedSeries derive(const TruncatedSeries& f, Derivation mode) {
  const int p = f.prime();
  if (mode == Derivation::Logarithmic) {
    std::vector<PAdicScalar> cs;
    cs.reserve(f.coefficients().size());
    for (int k = f.lo(); k <= f.hi(); ++k) cs.push_back(f.coeff(k).scaled(k));
    return TruncatedSeries(p, f.tag(), f.lo(), f.hi(), std::move(cs));
  }
  const int lo = f.tag() == RingTag::Plus ? 0 : f.lo() - 1;
  const int hi = f.hi() - 1;
  std::vector<PAdicScalar> cs;
  for (int k = lo; k <= hi; ++k) cs.push_back(f.coeff(k + 1).scaled(k + 1));
  return TruncatedSeries(p, f.tag(), lo, std::max(hi, lo - 1), std::move(cs));
}

std::variant<Antiderivative, Obstruction> antiderivative(const TruncatedSeries& f) {
  const int p = f.prime();
  if (f.lo() <= -1) {
    const auto r = f.coeff(-1);
    if (!r.is_zero()) return Obstruction{r};
  }
  const int lo = f.tag() == RingTag::Plus ? 0 : std::min(f.lo() + 1, 0);
  const int hi = f.hi() + 1;
  std::vector<PAdicScalar> cs;
  std::vector<std::pair<int, int>> loss;
  for (int k = lo; k <= hi; ++k) {
    if (k == 0) {
      cs.push_back(PAdicScalar::zero(p));
      continue;
    }
    const PAdicScalar divisor = PAdicScalar::exact(p, k);
    cs.push_back(f.coeff(k - 1) / divisor);
    const int v = valuation(mpq_class(k), p);
    if (v > 0 && k - 1 >= f.lo()) loss.emplace_back(k, v);
  }
  return Antiderivative{TruncatedSeries(p, f.tag(), lo, hi, std::move(cs)), std::move(loss)};
}

namespace {

TruncatedSeries invert_power_series(const TruncatedSeries& g) {
  // g is PLUS-shaped with g_0 nonzero within precision.
  const int p = g.prime();
  const int hi = g.hi();
  const PAdicScalar g0 = g.coeff(0);
  const PAdicScalar one = PAdicScalar::exact(p, 1);
  std::vector<PAdicScalar> inv;
  inv.reserve(hi + 1);
  inv.push_back(one / g0);
  std::vector<std::optional<int>> vg;
  for (int i = 0; i <= hi; ++i) vg.push_back(g.coeff(i).valuation());
  std::vector<std::optional<int>> vinv{inv[0].valuation()};
  for (int k = 1; k <= hi; ++k) {
    ProductSum s;
    for (int i = 1; i <= k; ++i) {
      const PAdicScalar gi = g.coeff(i);
      if (gi.is_exact_zero()) continue;
      s.add(gi, vg[i], inv[k - i], vinv[k - i]);
    }
    inv.push_back(-(s.finish(p) / g0));
    vinv.push_back(inv.back().valuation());
  }
  return TruncatedSeries(p, RingTag::Plus, 0, hi, std::move(inv));
}

}  // namespace

TruncatedSeries invert_unit(const TruncatedSeries& f) {
  const int p = f.prime();
  if (f.tag() == RingTag::Plus) {
    if (f.empty()) throw TruncationInsufficient("cannot invert a series with an empty window");
    if (f.coeff(0).is_zero()) throw NonUnit("constant term is zero within precision; not a unit of S_K");
    return invert_power_series(f);
  }
  int v = f.lo();
  while (v <= f.hi() && f.coeff(v).is_exact_zero()) ++v;
  if (v > f.hi()) throw NonUnit("series is zero on its window");
  if (f.coeff(v).is_zero()) {
    throw NonUnit("leading coefficient at t^" + std::to_string(v) + " is zero only within precision");
  }
  std::vector<PAdicScalar> cs;
  for (int k = v; k <= f.hi(); ++k) cs.push_back(f.coeff(k));
  const TruncatedSeries g(p, RingTag::Plus, 0, f.hi() - v, std::move(cs));
  const TruncatedSeries ginv = invert_power_series(g);
  return TruncatedSeries(p, RingTag::Laurent, -v, ginv.hi() - v, ginv.coefficients());
}

}  // namespace robba
