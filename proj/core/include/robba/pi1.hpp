#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "robba/monodromy.hpp"

namespace robba {

inline constexpr int kMaxLevel = 4;

using Word = std::vector<int>;

/// Lyndon words over {0..g-1} of length <= L, ordered by length then lexicographically.
std::vector<Word> lyndon_words(int g, int L);

/// Standard factorization w = uv, v the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w);

/// (1/n) Σ_{d|n} μ(d) g^{n/d}.
long witt_dimension(int g, int n);

struct HallBasis {
  int generators = 0;
  int level = 0;
  std::vector<Word> words;
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
};

/// Throws InvalidInput unless g >= 1 and 1 <= L <= 4.
HallBasis hall_basis(int g, int L);

/// Element of the free associative algebra: word -> coefficient.
using Polynomial = std::map<Word, mpq_class>;

/// Bracketed Hall element of a Lyndon word expanded into words.
Polynomial expand(const Word& lyndon);

using SparseVector = std::vector<std::pair<std::size_t, mpq_class>>;

/// Graded nilpotent Lie algebra on levels 1..L with filtration-preserving Φ, N.
struct NilpotentLieData {
  int level = 0;
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  /// table[i][j] = [e_i, e_j] (empty when zero or beyond level L).
  std::vector<std::vector<SparseVector>> table;
  long q = 0;
  QMatrix Phi;
  QMatrix N;

  std::size_t dim() const;
  std::size_t offset(int lvl) const;  // index of the first basis vector of level lvl
  int level_of(std::size_t i) const;
  QVector bracket(const QVector& x, const QVector& y) const;
  QVector basis_vector(std::size_t i) const;
};

/// Empty algebra with the given graded dims and zero brackets; Phi = 1, N = 0.
NilpotentLieData make_lie_data(const std::vector<std::size_t>& dims, long q);

ValidationReport validate(const NilpotentLieData& d);
void require_valid(const NilpotentLieData& d);

/// Free nilpotent Lie algebra on the basis of H1 truncated at level L, with
/// Φ extended as an automorphism and N as a derivation.
NilpotentLieData free_nilpotent(const PhiNModule& h1, int L);

/// Same with Φ and N prescribed on generators as arbitrary vectors of the
/// truncated algebra (so N may raise the level).
NilpotentLieData free_nilpotent(int g, int L, long q, const std::vector<QVector>& phi_on_generators,
                                const std::vector<QVector>& n_on_generators);

/// Quotient by the ideal generated by ω = Σ [a_i, b_i], a_i = e_i, b_i = e_{g+i}.
NilpotentLieData impose_surface_relation(const NilpotentLieData& d, int g);

/// Levels 1..n-1 (the mirror of U/U[n]).
NilpotentLieData lcs_quotient(const NilpotentLieData& d, int n);

PhiNModule abelianization(const NilpotentLieData& d);

/// New basis f_j = Σ_i S(i, j) e_i; S must be invertible and degree-preserving.
NilpotentLieData change_basis(const NilpotentLieData& d, const QMatrix& S);

struct ReductionVerdict {
  bool good = false;
  QMatrix level4N;
  std::vector<std::string> caveats;
};

/// good iff N vanishes on lcs_quotient(d, 4). Needs L >= 3.
ReductionVerdict good_reduction_verdict(const NilpotentLieData& d);

using EulerOracle = std::function<long(int n, long rank)>;

/// h1(U_n^∨) = 2 + rank (2g - 2).
EulerOracle default_euler_oracle(int g);

/// h1(U_n^∨) = 1 + h2 + rank (2g - 2) with h2 read off the enveloping-algebra
/// Hilbert series 1 / (1 - 2g s + s^2) of the surface Lie algebra.
EulerOracle hall_euler_oracle(int g);

/// rk U_1 = 1, rk U_{n+1} = rk U_n + h1(U_n^∨).
std::vector<long> universal_rank_recursion(int g, int L, const EulerOracle& oracle);

/// Ranks of U_1..U_L from the PBW dimensions of the surface Lie algebra built
/// by impose_surface_relation on the free algebra.
std::vector<long> hall_model_ranks(int g, int L);

}  // namespace robba
