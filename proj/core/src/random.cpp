#include "robba/random.hpp"

#include <array>

namespace robba::random {

Rng case_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

long integer(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

int pick_prime(Rng& rng, std::initializer_list<int> primes) {
  const long i = integer(rng, 0, static_cast<long>(primes.size()) - 1);
  return *(primes.begin() + i);
}

TruncatedSeries series(Rng& rng, int p, RingTag tag, int lo, int hi, long bound, int precision) {
  std::vector<PAdicScalar> cs;
  for (int k = lo; k <= hi; ++k) cs.emplace_back(p, mpq_class(integer(rng, -bound, bound)), precision);
  return TruncatedSeries(p, tag, lo, hi, std::move(cs));
}

FrobeniusLift frobenius(Rng& rng, int p, int window, bool standard) {
  if (standard) return FrobeniusLift::standard(p, p, window);
  std::vector<PAdicScalar> cs;
  cs.emplace_back(p, mpq_class(1 + p * integer(rng, -1, 1)));
  for (int k = 1; k <= window; ++k) cs.emplace_back(p, mpq_class(integer(rng, 0, 2) == 0 ? integer(rng, -2, 2) : 0));
  return FrobeniusLift(p, TruncatedSeries(p, RingTag::Plus, 0, window, std::move(cs)));
}

QMatrix unimodular(Rng& rng, std::size_t n, int steps) {
  QMatrix m = q_identity(n);
  if (n < 2) {
    if (n == 1 && integer(rng, 0, 1)) m(0, 0) = -1;
    return m;
  }
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(integer(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(integer(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long c = integer(rng, -2, 2);
    for (std::size_t k = 0; k < n; ++k) m(i, k) += c * m(j, k);
  }
  return m;
}

QMatrix integer_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  QMatrix m = q_zero(rows, cols);
  for (auto& x : m.data()) x = integer(rng, -bound, bound);
  return m;
}

namespace {

SeriesMatrix sparse_series_matrix(Rng& rng, int p, std::size_t n, int lo, int hi, long bound) {
  SeriesMatrix m = series_zero(p, RingTag::Plus, n, n, hi);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<PAdicScalar> cs(static_cast<std::size_t>(hi + 1), PAdicScalar::zero(p));
      for (int k = lo; k <= hi; ++k)
        if (integer(rng, 0, 2) == 0) cs[static_cast<std::size_t>(k)] = PAdicScalar(p, mpq_class(integer(rng, -bound, bound)));
      m(i, j) = TruncatedSeries(p, RingTag::Plus, 0, hi, std::move(cs));
    }
  return m;
}

}  // namespace

PhiNablaModule sk_module(Rng& rng, int p, std::size_t rank, int hi, const FrobeniusLift& frob) {
  const SeriesMatrix g = sparse_series_matrix(rng, p, rank, 0, hi, 3);
  const SeriesMatrix a = solve_frobenius_matrix(g, unimodular(rng, rank), frob, hi);
  return PhiNablaModule{BaseRing::SK, g, a, frob, std::nullopt, false, false};
}

PhiNModule phin(Rng& rng, long q, std::size_t dim, bool nonzero) {
  if (!nonzero) {
    QMatrix phi = unimodular(rng, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) phi(i, k) *= integer(rng, 1, 3);
    if (rank(phi) < dim) phi = q_identity(dim);
    return PhiNModule{q, phi, q_zero(dim, dim)};
  }
  if (dim < 2) throw InvalidInput("a nonzero nilpotent N needs dimension >= 2");
  QMatrix n = q_zero(dim, dim), d = q_zero(dim, dim);
  std::size_t start = 0;
  bool first = true;
  while (start < dim) {
    const std::size_t left = dim - start;
    std::size_t size = static_cast<std::size_t>(integer(rng, first ? 2 : 1, static_cast<long>(left)));
    first = false;
    const long c = integer(rng, 1, 3) * (integer(rng, 0, 1) ? 1 : -1);
    mpq_class w = c;
    for (std::size_t i = 0; i < size; ++i) {
      d(start + i, start + i) = w;
      w *= q;
      if (i + 1 < size) n(start + i, start + i + 1) = 1;
    }
    start += size;
  }
  const QMatrix P = unimodular(rng, dim);
  const QMatrix Pinv = inverse(P);
  return PhiNModule{q, Pinv * d * P, Pinv * n * P};
}

LogPhiNablaModule log_module(Rng& rng, int p, std::size_t rank, int hi, const FrobeniusLift& frob, bool nonzero_residue) {
  const PhiNModule res = phin(rng, frob.q(), rank, nonzero_residue);
  SeriesMatrix g = sparse_series_matrix(rng, p, rank, 1, hi, 3);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      g(i, j) = g(i, j) + TruncatedSeries::constant(PAdicScalar(p, res.N(i, j)), RingTag::Plus, hi);
  const SeriesMatrix a = solve_log_frobenius_matrix(g, res.Phi, frob, hi);
  return LogPhiNablaModule{g, a, frob, std::nullopt};
}

SeriesMatrix unit_matrix(Rng& rng, int p, std::size_t n, int hi) {
  SeriesMatrix m = sparse_series_matrix(rng, p, n, 1, hi, 2);
  const QMatrix u = unimodular(rng, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = m(i, j) + TruncatedSeries::constant(PAdicScalar(p, u(i, j)), RingTag::Plus, hi);
  return m;
}

PhiNablaModule dagger_module(Rng& rng, std::size_t rank) {
  constexpr int kHi = 10;
  constexpr int kLo = -4;
  for (int attempt = 0; attempt < 50; ++attempt) {
    const int p = pick_prime(rng, {2, 3});
    const FrobeniusLift frob = frobenius(rng, p, 3 * kHi, integer(rng, 0, 1) == 0);
    PhiNablaModule m = [&] {
      if (integer(rng, 0, 1) == 0) {
        const PhiNablaModule e = base_change(sk_module(rng, p, rank, kHi + 2, frob));
        // P = diag(t^k_i) U with U unimodular.
        const QMatrix u = unimodular(rng, rank);
        SeriesMatrix P = series_zero(p, RingTag::Laurent, rank, rank, 3 * kHi);
        for (std::size_t i = 0; i < rank; ++i) {
          const int k = static_cast<int>(integer(rng, -1, 1));
          for (std::size_t j = 0; j < rank; ++j)
            P(i, j) = TruncatedSeries::monomial(PAdicScalar(p, u(i, j)), k, RingTag::Laurent, 3 * kHi);
        }
        return gauge_transform(e, P);
      }
      return to_dagger(log_module(rng, p, rank, kHi + 1, frob, rank >= 2 && integer(rng, 0, 1) == 0));
    }();
    m.G = truncated(m.G, kHi);
    m.A = truncated(m.A, kHi);
    if (min_lo(m.G) < kLo || min_lo(m.A) < kLo) continue;
    if (validate(m).ok()) return m;
  }
  throw Error("could not draw a valid module over E-dagger");
}

}  // namespace robba::random
