#pragma once

#include <cstdint>
#include <random>

#include "robba/monodromy.hpp"
#include "robba/pi1.hpp"

// Seeded generators for randomized suites and benchmarks. Case i of a suite
// draws from case_rng(seed, i), so results do not depend on how cases are
// partitioned across threads.
namespace robba::random {

using Rng = std::mt19937_64;

Rng case_rng(std::uint64_t seed, std::uint64_t index);

long integer(Rng& rng, long lo, long hi);
int pick_prime(Rng& rng, std::initializer_list<int> primes);

/// Integer coefficients in [-bound, bound]; inexact with the given precision unless kExact.
TruncatedSeries series(Rng& rng, int p, RingTag tag, int lo, int hi, long bound = 9, int precision = kExact);

/// u = 1 + p c_0 + c_1 t + ... known on [0, window].
FrobeniusLift frobenius(Rng& rng, int p, int window, bool standard = false);

/// Product of random elementary integer matrices: determinant ±1.
QMatrix unimodular(Rng& rng, std::size_t n, int steps = 6);
QMatrix integer_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);

/// Module over S_K: G random with small integer coefficients on [0, hi],
/// A solved order by order from a unimodular A(0).
PhiNablaModule sk_module(Rng& rng, int p, std::size_t rank, int hi, const FrobeniusLift& frob);

/// nonzero = true: N of Jordan type with a block of size >= 2 and Φ = c diag(1, q, q^2, ...)
/// on each block, both conjugated by a unimodular matrix. nonzero = false: N = 0
/// and Φ a random invertible integer matrix.
PhiNModule phin(Rng& rng, long q, std::size_t dim, bool nonzero);

/// Log module over S_K with residue from phin(), A solved to t^hi.
LogPhiNablaModule log_module(Rng& rng, int p, std::size_t rank, int hi, const FrobeniusLift& frob, bool nonzero_residue);

/// Unit matrix over S_K: unimodular constant term plus random higher terms.
SeriesMatrix unit_matrix(Rng& rng, int p, std::size_t n, int hi);

/// Validated module over E†, entries on windows inside [-4, 10]: either a
/// base change twisted by a Laurent gauge diag(t^k_i) U, or the regular
/// module of a log module.
PhiNablaModule dagger_module(Rng& rng, std::size_t rank);

}  // namespace robba::random
