#include <gtest/gtest.h>

#include "oracles.hpp"
#include "robba/phinabla.hpp"
#include "robba/random.hpp"

using namespace robba;

namespace {

PhiNablaModule trivial(int p, std::size_t r, int hi = 8) {
  return PhiNablaModule{BaseRing::SK, series_zero(p, RingTag::Plus, r, r, hi), series_identity(p, RingTag::Plus, r, hi),
                        FrobeniusLift::standard(p, p, 4 * hi)};
}

PhiNablaModule constant_connection(const QMatrix& B, int p, int hi) {
  auto frob = FrobeniusLift::standard(p, p, 4 * hi);
  auto G = series_constant(B, p, RingTag::Plus, hi);
  return PhiNablaModule{BaseRing::SK, G, solve_frobenius_matrix(G, q_identity(B.rows()), frob, hi), frob};
}

QMatrix times(long c, const QMatrix& m) {
  return m.map([c](const mpq_class& x) { return mpq_class(x * c); });
}

bool matrices_agree(const SeriesMatrix& a, const SeriesMatrix& b) {
  return compare(a, b).ok();
}

}  // namespace

TEST(Validate, TrivialAndConstantA) {
  EXPECT_TRUE(validate(trivial(3, 1)).ok());
  auto m = trivial(3, 1);
  m.A = series_constant(q_from_integers({{3}}), 3, RingTag::Plus, 8);
  EXPECT_TRUE(validate(m).ok());
}

TEST(Validate, RejectsNonHorizontalPhi) {
  auto m = trivial(3, 1);
  m.G = series_constant(q_from_integers({{1}}), 3, RingTag::Plus, 8);
  const auto r = validate(m);
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.first_failure().find("horizontality"), std::string::npos);
  EXPECT_THROW(require_valid(m), ValidationFailed);
}

TEST(Validate, RejectsNonUnitA) {
  auto m = trivial(3, 2);
  m.A = series_constant(q_from_integers({{1, 0}, {0, 0}}), 3, RingTag::Plus, 8);
  EXPECT_FALSE(validate(m).ok());
}

TEST(Validate, LogModuleNilpotentResidue) {
  // With u = 1 and Glog = N constant, the degree-k part of the log identity
  // reads k A_k + N A_k - q A_k N = 0, invertible for k >= 1, so A = A(0).
  const int p = 3;
  auto frob = FrobeniusLift::standard(p, p, 40);
  const QMatrix N = q_from_integers({{0, 1}, {0, 0}});
  const QMatrix a0 = q_from_integers({{1, 0}, {0, p}});
  ASSERT_EQ(N * a0, times(p, a0 * N));
  auto Glog = series_constant(N, p, RingTag::Plus, 10);
  auto A = solve_log_frobenius_matrix(Glog, a0, frob, 10);
  LogPhiNablaModule L{Glog, A, frob};
  EXPECT_TRUE(validate(L).ok()) << validate(L).first_failure();
  EXPECT_EQ(values(coefficient(A, 0)), a0);
  for (int k = 1; k <= 10; ++k) EXPECT_TRUE(is_zero(values(coefficient(A, k)))) << k;
}

TEST(Validate, LogResidueMustBeNilpotent) {
  const int p = 3;
  auto frob = FrobeniusLift::standard(p, p, 40);
  auto Glog = series_constant(q_from_integers({{1}}), p, RingTag::Plus, 6);
  LogPhiNablaModule L{Glog, series_identity(p, RingTag::Plus, 1, 6), frob};
  EXPECT_FALSE(validate(L).ok());
  EXPECT_THROW(solve_log_frobenius_matrix(series_constant(q_from_integers({{0, 1}, {0, 0}}), p, RingTag::Plus, 6),
                                          q_identity(2), frob, 6),
               InvalidInput);
}

TEST(Validate, RandomLogModulesSatisfyConstantTermRelation) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto rng = random::case_rng(21, i);
    const int p = random::pick_prime(rng, {2, 3});
    auto frob = random::frobenius(rng, p, 40);
    const bool nonzero = i % 2 == 0;
    auto L = random::log_module(rng, p, nonzero ? 2 + i % 2 : 1 + i % 3, 8, frob, nonzero);
    ASSERT_TRUE(validate(L).ok()) << validate(L).first_failure();
    const QMatrix N = values(coefficient(L.Glog, 0));
    const QMatrix A0 = values(coefficient(L.A, 0));
    EXPECT_EQ(N * A0, times(frob.q(), A0 * N));
  }
}

TEST(Gauge, IdentityIsNoOp) {
  auto rng = random::case_rng(22, 0);
  auto m = random::sk_module(rng, 3, 2, 8, FrobeniusLift::standard(3, 3, 40));
  auto g = gauge_transform(m, series_identity(3, RingTag::Plus, 2, 8));
  EXPECT_TRUE(matrices_agree(g.G, m.G));
  EXPECT_TRUE(matrices_agree(g.A, m.A));
}

TEST(Gauge, DiagOneTOnTrivialRankTwo) {
  // Direct substitution: G' = P^-1 dP = diag(0, 1/t), A' = P^-1 sigma(P) = diag(1, u t^(q-1)).
  const int p = 3;
  auto m = base_change(trivial(p, 2));
  SeriesMatrix P = series_identity(p, RingTag::Laurent, 2, 8);
  P(1, 1) = TruncatedSeries::monomial(PAdicScalar::exact(p, 1), 1, RingTag::Laurent, 8);
  auto g = gauge_transform(m, P);
  EXPECT_TRUE(validate(g).ok()) << validate(g).first_failure();
  EXPECT_TRUE(g.G(0, 0).valuation() == std::nullopt);
  EXPECT_TRUE(g.G(0, 1).valuation() == std::nullopt);
  EXPECT_EQ(g.G(1, 1).coeff(-1).value(), 1);
  for (int k = 0; k <= g.G(1, 1).hi(); ++k) EXPECT_TRUE(g.G(1, 1).coeff(k).is_zero());
  EXPECT_EQ(g.A(1, 1).coeff(p - 1).value(), 1);
  EXPECT_EQ(g.A(0, 0).coeff(0).value(), 1);
}

TEST(Constructions, TensorWithTrivialIsIdentity) {
  auto rng = random::case_rng(23, 0);
  auto frob = FrobeniusLift::standard(3, 3, 40);
  auto m = random::sk_module(rng, 3, 2, 8, frob);
  auto one = PhiNablaModule{BaseRing::SK, series_zero(3, RingTag::Plus, 1, 1, 8),
                            series_identity(3, RingTag::Plus, 1, 8), frob};
  auto t = tensor(m, one);
  EXPECT_TRUE(matrices_agree(t.G, m.G));
  EXPECT_TRUE(matrices_agree(t.A, m.A));
}

TEST(Constructions, DualOfTensorIsTensorOfDuals) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = random::case_rng(24, i);
    const int p = random::pick_prime(rng, {2, 3});
    auto frob = random::frobenius(rng, p, 40);
    auto a = random::sk_module(rng, p, 1 + i % 2, 8, frob);
    auto b = random::sk_module(rng, p, 2, 8, frob);
    auto lhs = dual(tensor(a, b));
    auto rhs = tensor(dual(a), dual(b));
    EXPECT_TRUE(matrices_agree(lhs.G, rhs.G));
    EXPECT_TRUE(matrices_agree(lhs.A, rhs.A));
  }
}

TEST(Constructions, PreserveHorizontality) {
  for (std::uint64_t i = 0; i < 15; ++i) {
    auto rng = random::case_rng(25, i);
    const int p = random::pick_prime(rng, {2, 3});
    auto frob = random::frobenius(rng, p, 40);
    auto a = random::sk_module(rng, p, 1 + i % 2, 8, frob);
    auto b = random::sk_module(rng, p, 1 + (i + 1) % 2, 8, frob);
    EXPECT_TRUE(validate(tensor(a, b)).ok());
    EXPECT_TRUE(validate(dual(a)).ok());
    EXPECT_TRUE(validate(direct_sum(a, b)).ok());
    EXPECT_TRUE(validate(base_change(a)).ok());
    EXPECT_TRUE(validate(gauge_transform(a, random::unit_matrix(rng, p, a.rank(), 8))).ok());
  }
}

TEST(Constructions, MismatchedLiftsRejected) {
  auto a = trivial(3, 1);
  auto b = trivial(5, 1);
  EXPECT_THROW(tensor(a, b), Mismatch);
}

TEST(BaseChange, TrivialAndConstantConnection) {
  auto t = base_change(trivial(3, 1));
  EXPECT_EQ(t.ring, BaseRing::EDagger);
  EXPECT_TRUE(t.nonsingular);
  EXPECT_TRUE(validate(t).ok());
  auto m = constant_connection(q_from_integers({{1}}), 3, 8);
  ASSERT_TRUE(validate(m).ok()) << validate(m).first_failure();
  auto b = base_change(m);
  EXPECT_TRUE(b.nonsingular);
  EXPECT_EQ(b.G(0, 0).coeff(0).value(), 1);
  EXPECT_TRUE(validate(b).ok());
}

TEST(LogRoundTrip, TrivialAndConstant) {
  auto m = trivial(3, 2);
  auto l = to_log(m);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_FALSE(l.Glog(i, j).valuation().has_value());
  auto back = from_log(l);
  EXPECT_TRUE(matrices_agree(back.G, m.G));

  const QMatrix B = q_from_integers({{1, 2}, {0, -1}});
  auto c = constant_connection(B, 3, 8);
  auto cl = to_log(c);
  EXPECT_EQ(values(coefficient(cl.Glog, 1)), B);
  EXPECT_EQ(values(coefficient(from_log(cl).G, 0)), B);
}

TEST(LogRoundTrip, NonzeroResidueRefused) {
  const int p = 3;
  auto frob = FrobeniusLift::standard(p, p, 40);
  const QMatrix N = q_from_integers({{0, 1}, {0, 0}});
  auto Glog = series_constant(N, p, RingTag::Plus, 8);
  LogPhiNablaModule L{Glog, solve_log_frobenius_matrix(Glog, q_from_integers({{1, 0}, {0, p}}), frob, 8), frob};
  try {
    from_log(L);
    FAIL() << "from_log accepted a nonzero residue";
  } catch (const NonSingularityViolation& e) {
    EXPECT_EQ(values(e.residue()), N);
  }
}

TEST(LogRoundTrip, ToDaggerIsValid) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = random::case_rng(26, i);
    const int p = random::pick_prime(rng, {2, 3});
    auto frob = random::frobenius(rng, p, 40);
    auto L = random::log_module(rng, p, 2, 8, frob, true);
    auto d = to_dagger(L);
    EXPECT_TRUE(d.regular);
    EXPECT_TRUE(validate(d).ok()) << validate(d).first_failure();
  }
}

TEST(FlagBasis, StrictlyUpperChecked) {
  auto m = constant_connection(q_from_integers({{0, 1}, {0, 0}}), 3, 8);
  m.flag_basis = series_identity(3, RingTag::Plus, 2, 8);
  EXPECT_TRUE(validate(m).ok());
  auto bad = constant_connection(q_from_integers({{0, 0}, {1, 0}}), 3, 8);
  bad.flag_basis = series_identity(3, RingTag::Plus, 2, 8);
  EXPECT_FALSE(validate(bad).ok());
  EXPECT_TRUE(strictly_upper_violation(bad.G).has_value());
}
