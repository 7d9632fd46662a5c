#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's arithmetic: series are plain exponent -> rational maps,
// ranks go through fraction-free elimination on boost integers.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <gmpxx.h>

#include "robba/linalg.hpp"
#include "robba/series.hpp"

namespace oracle {

using Poly = std::map<int, mpq_class>;
using BigInt = boost::multiprecision::cpp_int;

inline Poly poly_of(const robba::TruncatedSeries& s) {
  Poly out;
  for (int k = s.lo(); k <= s.hi(); ++k)
    if (s.coeff(k).value() != 0) out[k] = s.coeff(k).value();
  return out;
}

inline mpq_class at(const Poly& f, int k) {
  auto it = f.find(k);
  return it == f.end() ? mpq_class(0) : it->second;
}

/// Schoolbook product keeping exponents <= hi.
inline Poly multiply(const Poly& a, const Poly& b, int hi) {
  Poly out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b)
      if (i + j <= hi) out[i + j] += x * y;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline Poly derivative(const Poly& f) {
  Poly out;
  for (const auto& [k, c] : f)
    if (k != 0) out[k - 1] = c * k;
  return out;
}

/// 1/u for u(0) != 0, exponents <= hi, by the recursion u * v = 1.
inline Poly inverse(const Poly& u, int hi) {
  std::vector<mpq_class> v(hi + 1);
  const mpq_class u0 = at(u, 0);
  for (int n = 0; n <= hi; ++n) {
    mpq_class acc = n == 0 ? 1 : 0;
    for (int k = 1; k <= n; ++k) acc -= at(u, k) * v[n - k];
    v[n] = acc / u0;
  }
  Poly out;
  for (int n = 0; n <= hi; ++n)
    if (v[n] != 0) out[n] = v[n];
  return out;
}

/// f(u t^q) for a series with finite principal part, exponents <= hi.
inline Poly substitute(const Poly& f, const Poly& u, int q, int hi) {
  Poly out;
  for (const auto& [e, c] : f) {
    const int need = hi - q * e;
    if (need < 0) continue;
    Poly base = e >= 0 ? u : inverse(u, need);
    Poly upow{{0, 1}};
    for (int k = 0; k < std::abs(e); ++k) upow = multiply(upow, base, need);
    for (const auto& [j, x] : upow)
      if (q * e + j <= hi) out[q * e + j] += c * x;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline BigInt to_big(const mpz_class& z) { return BigInt(z.get_str()); }

/// Rank by Bareiss fraction-free elimination after clearing row denominators.
inline std::size_t rank(const robba::QMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class scaled = m(i, j) * l;
      a[i][j] = to_big(scaled.get_num());
    }
  }
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline robba::QMatrix minus_identity(const robba::QMatrix& m) {
  robba::QMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) -= 1;
  return out;
}

/// Lyndon test by comparing against every proper rotation.
inline bool is_lyndon(const std::vector<int>& w) {
  for (std::size_t s = 1; s < w.size(); ++s) {
    std::vector<int> rot(w.begin() + s, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + s);
    if (!(w < rot)) return false;
  }
  return !w.empty();
}

inline long count_lyndon(int g, int n) {
  long total = 0;
  std::vector<int> w(n, 0);
  while (true) {
    if (is_lyndon(w)) ++total;
    int i = n - 1;
    while (i >= 0 && w[i] == g - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
  return total;
}

/// Coefficients c_0..c_n of 1 / (1 - 2g s + s^2).
inline std::vector<long> surface_hilbert(int g, int n) {
  std::vector<long> c(n + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= n; ++k) c[k] = 2L * g * c[k - 1] - (k >= 2 ? c[k - 2] : 0);
  return c;
}

}  // namespace oracle
