#include "robba/phinabla.hpp"

#include <algorithm>

namespace robba {

namespace {

void check_shapes(const SeriesMatrix& g, const SeriesMatrix& a, const FrobeniusLift& frob, const char* what) {
  if (!g.square() || !a.square() || g.rows() != a.rows() || g.rows() == 0)
    throw Mismatch(std::string(what) + ": connection and Frobenius matrices must be square of equal rank >= 1");
  for (const auto& x : g.data())
    if (x.prime() != frob.prime()) throw Mismatch(std::string(what) + ": connection entry over a different prime");
  for (const auto& x : a.data())
    if (x.prime() != frob.prime()) throw Mismatch(std::string(what) + ": Frobenius entry over a different prime");
}

void check_frobenius_match(const FrobeniusLift& a, const FrobeniusLift& b) {
  if (!(a == b)) throw Mismatch("modules carry different Frobenius lifts");
}

std::string comparison_detail(const Comparison& c) {
  if (c.first) return "first failing coefficient: " + c.first->describe();
  if (c.compared == 0) return "no coefficient is determined on both sides; widen the windows";
  return "checked " + std::to_string(c.compared) + " coefficients";
}

// Unit test for the Frobenius matrix: constant term invertible over S_K,
// or invertible over the Laurent ring.
void check_unit(ValidationReport& report, const SeriesMatrix& a, bool plus) {
  if (plus) {
    const std::size_t r = rank(values(coefficient(a, 0)));
    report.add("frobenius_unit", r == a.rows(),
               r == a.rows() ? "A(0) invertible" : "A(0) has rank " + std::to_string(r));
    return;
  }
  try {
    (void)inverse(a);
    report.add("frobenius_unit", true, "A invertible within window");
  } catch (const Error& e) {
    report.add("frobenius_unit", false, e.what());
  }
}

void check_flag(ValidationReport& report, const std::optional<SeriesMatrix>& flag, const SeriesMatrix& g,
                Derivation mode) {
  if (!flag) return;
  try {
    const SeriesMatrix pinv = inverse(*flag);
    const SeriesMatrix g2 = pinv * g * *flag + pinv * derive(*flag, mode);
    if (auto bad = strictly_upper_violation(g2)) {
      report.add("flag_triangular", false, "connection not strictly upper triangular in flag basis: " + bad->describe());
    } else {
      report.add("flag_triangular", true, "connection strictly upper triangular in flag basis");
    }
  } catch (const Error& e) {
    report.add("flag_triangular", false, std::string("flag basis unusable: ") + e.what());
  }
}

// Drops the (zero) constant term of a PLUS series and divides by t.
TruncatedSeries divide_by_t(const TruncatedSeries& s) {
  std::vector<PAdicScalar> cs;
  for (int k = 1; k <= s.hi(); ++k) cs.push_back(s.coeff(k));
  return TruncatedSeries(s.prime(), RingTag::Plus, 0, s.hi() - 1, std::move(cs));
}

std::vector<QMatrix> exact_coefficients(const SeriesMatrix& m, int upto, const char* what) {
  for (const auto& x : m.data()) {
    if (x.hi() < upto)
      throw TruncationInsufficient(std::string(what) + " is known only to t^" + std::to_string(x.hi()) +
                                   ", need t^" + std::to_string(upto));
    for (int k = x.lo(); k <= upto; ++k)
      if (!x.coeff(k).is_exact()) throw InvalidInput(std::string(what) + " must have exact coefficients");
  }
  std::vector<QMatrix> out;
  for (int k = 0; k <= upto; ++k) out.push_back(values(coefficient(m, k)));
  return out;
}

std::vector<mpq_class> exact_values(const TruncatedSeries& s, int upto) {
  std::vector<mpq_class> out;
  for (int k = 0; k <= upto; ++k) out.push_back(s.coeff(k).value());
  return out;
}

SeriesMatrix assemble(const std::vector<QMatrix>& coeffs, int p) {
  const std::size_t r = coeffs.front().rows();
  SeriesMatrix out = series_zero(p, RingTag::Plus, r, r, -1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<PAdicScalar> cs;
      for (const auto& c : coeffs) cs.emplace_back(p, c(i, j));
      out(i, j) = TruncatedSeries(p, RingTag::Plus, 0, static_cast<int>(coeffs.size()) - 1, std::move(cs));
    }
  return out;
}

}  // namespace

std::string to_string(BaseRing ring) { return ring == BaseRing::SK ? "S_K" : "E_DAGGER"; }

BaseRing base_ring_from_string(const std::string& s) {
  if (s == "S_K") return BaseRing::SK;
  if (s == "E_DAGGER") return BaseRing::EDagger;
  throw InvalidInput("unknown ring '" + s + "'");
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name + ": " + c.detail;
  return {};
}

void ValidationReport::add(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error("validation failed: " + report.first_failure()), report_(std::move(report)) {}

NonSingularityViolation::NonSingularityViolation(ScalarMatrix residue)
    : Error("log module has nonzero residue N; it is not the log module of a (phi,nabla)-module over S_K"),
      residue_(std::move(residue)) {}

std::optional<Discrepancy> strictly_upper_violation(const SeriesMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i && j < m.cols(); ++j) {
      const auto& x = m(i, j);
      for (int k = x.lo(); k <= x.hi(); ++k)
        if (!x.coeff(k).is_zero()) return Discrepancy{i, j, k};
    }
  return std::nullopt;
}

ValidationReport validate(const PhiNablaModule& m) {
  ValidationReport report;
  try {
    check_shapes(m.G, m.A, m.frob, "module");
  } catch (const Error& e) {
    report.add("shape", false, e.what());
    return report;
  }
  report.add("shape", true, "rank " + std::to_string(m.rank()));
  const bool plus = m.ring == BaseRing::SK;
  if (plus) {
    const bool tags = all_plus(m.G) && all_plus(m.A);
    report.add("ring", tags, tags ? "all entries in S_K" : "module over S_K has LAURENT entries");
    if (!tags) return report;
  }
  check_unit(report, m.A, plus);
  try {
    const SeriesMatrix lhs = derive(m.A) + m.G * m.A;
    const SeriesMatrix rhs = scale(m.frob.sigma_t_derivative(), m.A * apply_frobenius(m.frob, m.G));
    const Comparison c = compare(lhs, rhs);
    report.add("horizontality", c.ok(), comparison_detail(c));
  } catch (const Error& e) {
    report.add("horizontality", false, e.what());
  }
  check_flag(report, m.flag_basis, m.G, Derivation::Ordinary);
  return report;
}

ValidationReport validate(const LogPhiNablaModule& m) {
  ValidationReport report;
  try {
    check_shapes(m.Glog, m.A, m.frob, "log module");
  } catch (const Error& e) {
    report.add("shape", false, e.what());
    return report;
  }
  report.add("shape", true, "rank " + std::to_string(m.rank()));
  const bool tags = all_plus(m.Glog) && all_plus(m.A);
  report.add("ring", tags, tags ? "all entries in S_K" : "log module must be over S_K");
  if (!tags) return report;
  check_unit(report, m.A, true);
  try {
    const SeriesMatrix lhs = derive(m.A, Derivation::Logarithmic) + m.Glog * m.A;
    const SeriesMatrix rhs = scale(m.frob.log_factor(), m.A * apply_frobenius(m.frob, m.Glog));
    const Comparison c = compare(lhs, rhs);
    report.add("log_horizontality", c.ok(), comparison_detail(c));
  } catch (const Error& e) {
    report.add("log_horizontality", false, e.what());
  }
  try {
    const ScalarMatrix n = coefficient(m.Glog, 0);
    ScalarMatrix power = n;
    for (std::size_t k = 1; k < m.rank(); ++k) power = power * n;
    const bool nil = std::all_of(power.data().begin(), power.data().end(), [](const auto& x) { return x.is_zero(); });
    report.add("residue_nilpotent", nil, nil ? "N^r = 0" : "residue Glog(0) is not nilpotent");
  } catch (const Error& e) {
    report.add("residue_nilpotent", false, e.what());
  }
  check_flag(report, m.flag_basis, m.Glog, Derivation::Logarithmic);
  return report;
}

void require_valid(const PhiNablaModule& m) {
  auto r = validate(m);
  if (!r.ok()) throw ValidationFailed(std::move(r));
}

void require_valid(const LogPhiNablaModule& m) {
  auto r = validate(m);
  if (!r.ok()) throw ValidationFailed(std::move(r));
}

PhiNablaModule gauge_transform(const PhiNablaModule& m, const SeriesMatrix& P) {
  if (P.rows() != m.rank() || !P.square()) throw Mismatch("gauge matrix has the wrong shape");
  if (m.ring == BaseRing::SK && !all_plus(P)) throw NonUnit("gauge matrix for a module over S_K must lie in S_K");
  const SeriesMatrix pinv = inverse(P);
  PhiNablaModule out{m.ring,
                     pinv * m.G * P + pinv * derive(P),
                     pinv * m.A * apply_frobenius(m.frob, P),
                     m.frob,
                     std::nullopt,
                     m.nonsingular,
                     m.regular};
  if (m.flag_basis) out.flag_basis = pinv * *m.flag_basis;
  if (out.ring == BaseRing::EDagger) {
    out.G = as_laurent(out.G);
    out.A = as_laurent(out.A);
  }
  return out;
}

LogPhiNablaModule gauge_transform(const LogPhiNablaModule& m, const SeriesMatrix& P) {
  if (P.rows() != m.rank() || !P.square()) throw Mismatch("gauge matrix has the wrong shape");
  if (!all_plus(P)) throw NonUnit("gauge matrix for a log module must lie in S_K");
  const SeriesMatrix pinv = inverse(P);
  LogPhiNablaModule out{pinv * m.Glog * P + pinv * derive(P, Derivation::Logarithmic),
                        pinv * m.A * apply_frobenius(m.frob, P), m.frob, std::nullopt};
  if (m.flag_basis) out.flag_basis = pinv * *m.flag_basis;
  return out;
}

PhiNablaModule tensor(const PhiNablaModule& a, const PhiNablaModule& b) {
  check_frobenius_match(a.frob, b.frob);
  const int p = a.prime();
  const BaseRing ring = (a.ring == BaseRing::SK && b.ring == BaseRing::SK) ? BaseRing::SK : BaseRing::EDagger;
  const RingTag tag = ring == BaseRing::SK ? RingTag::Plus : RingTag::Laurent;
  const SeriesMatrix ia = series_identity(p, tag, a.rank(), max_hi(b.G));
  const SeriesMatrix ib = series_identity(p, tag, b.rank(), max_hi(a.G));
  PhiNablaModule out{ring, kron(a.G, ib) + kron(ia, b.G), kron(a.A, b.A), a.frob, std::nullopt,
                     a.nonsingular && b.nonsingular, a.regular && b.regular};
  if (a.flag_basis && b.flag_basis) out.flag_basis = kron(*a.flag_basis, *b.flag_basis);
  if (ring == BaseRing::EDagger) {
    out.G = as_laurent(out.G);
    out.A = as_laurent(out.A);
  }
  return out;
}

PhiNablaModule dual(const PhiNablaModule& m) {
  return PhiNablaModule{m.ring, -m.G.transposed(), inverse(m.A.transposed()), m.frob, std::nullopt, m.nonsingular,
                        m.regular};
}

PhiNablaModule direct_sum(const PhiNablaModule& a, const PhiNablaModule& b) {
  check_frobenius_match(a.frob, b.frob);
  const int p = a.prime();
  const BaseRing ring = (a.ring == BaseRing::SK && b.ring == BaseRing::SK) ? BaseRing::SK : BaseRing::EDagger;
  const RingTag tag = ring == BaseRing::SK ? RingTag::Plus : RingTag::Laurent;
  const int hi = std::max({max_hi(a.G), max_hi(b.G), max_hi(a.A), max_hi(b.A)});
  const TruncatedSeries zero = TruncatedSeries::zero(p, tag, hi);
  PhiNablaModule out{ring,         block_diagonal(a.G, b.G, zero),
                     block_diagonal(a.A, b.A, zero),
                     a.frob,       std::nullopt,
                     a.nonsingular && b.nonsingular,
                     a.regular && b.regular};
  if (a.flag_basis && b.flag_basis) out.flag_basis = block_diagonal(*a.flag_basis, *b.flag_basis, zero);
  if (ring == BaseRing::EDagger) {
    out.G = as_laurent(out.G);
    out.A = as_laurent(out.A);
  }
  return out;
}

PhiNablaModule base_change(const PhiNablaModule& m) {
  if (m.ring != BaseRing::SK) throw InvalidInput("base_change expects a module over S_K");
  require_valid(m);
  PhiNablaModule out{BaseRing::EDagger, as_laurent(m.G), as_laurent(m.A), m.frob, std::nullopt, true, true};
  if (m.flag_basis) out.flag_basis = as_laurent(*m.flag_basis);
  return out;
}

LogPhiNablaModule to_log(const PhiNablaModule& m) {
  if (m.ring != BaseRing::SK) throw InvalidInput("to_log expects a module over S_K");
  require_valid(m);
  return LogPhiNablaModule{shifted(m.G, 1), m.A, m.frob, m.flag_basis};
}

PhiNablaModule from_log(const LogPhiNablaModule& l) {
  require_valid(l);
  const ScalarMatrix n = coefficient(l.Glog, 0);
  for (const auto& x : n.data())
    if (!x.is_zero()) throw NonSingularityViolation(n);
  return PhiNablaModule{BaseRing::SK, l.Glog.map(divide_by_t), l.A, l.frob, l.flag_basis, false, false};
}

PhiNablaModule to_dagger(const LogPhiNablaModule& l) {
  require_valid(l);
  PhiNablaModule out{BaseRing::EDagger, shifted(as_laurent(l.Glog), -1), as_laurent(l.A), l.frob, std::nullopt, false,
                     true};
  if (l.flag_basis) out.flag_basis = as_laurent(*l.flag_basis);
  return out;
}

SeriesMatrix solve_frobenius_matrix(const SeriesMatrix& G, const QMatrix& a0, const FrobeniusLift& frob, int hi) {
  if (!all_plus(G)) throw InvalidInput("connection matrix must lie in S_K");
  if (!G.square() || a0.rows() != G.rows() || !a0.square()) throw Mismatch("shape mismatch");
  const int p = frob.prime();
  const auto g = exact_coefficients(G, std::max(hi - 1, 0), "connection matrix");
  const auto s = exact_coefficients(apply_frobenius(frob, G), std::max(hi - 1, 0), "sigma(G)");
  const auto ds = exact_values(frob.sigma_t_derivative(), std::max(hi - 1, 0));
  std::vector<QMatrix> a{a0};
  for (int k = 0; k + 1 <= hi; ++k) {
    QMatrix rhs = q_zero(a0.rows(), a0.cols());
    for (int x = 0; x <= k; ++x) {
      if (ds[x] == 0) continue;
      for (int b = 0; x + b <= k; ++b) {
        QMatrix term = a[b] * s[k - x - b];
        for (auto& v : term.data()) v *= ds[x];
        rhs = rhs + term;
      }
    }
    for (int i = 0; i <= k; ++i) rhs = rhs - g[i] * a[k - i];
    for (std::size_t i = 0; i < rhs.rows(); ++i)
      for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(i, j) /= (k + 1);
    a.push_back(rhs);
  }
  return assemble(a, p);
}

SeriesMatrix solve_log_frobenius_matrix(const SeriesMatrix& Glog, const QMatrix& a0, const FrobeniusLift& frob,
                                        int hi) {
  if (!all_plus(Glog)) throw InvalidInput("log connection matrix must lie in S_K");
  if (!Glog.square() || a0.rows() != Glog.rows() || !a0.square()) throw Mismatch("shape mismatch");
  const int p = frob.prime();
  const std::size_t r = a0.rows();
  const auto g = exact_coefficients(Glog, hi, "log connection matrix");
  const auto s = exact_coefficients(apply_frobenius(frob, Glog), hi, "sigma(Glog)");
  const auto lambda = exact_values(frob.log_factor(), hi);
  const QMatrix& n = g[0];
  QMatrix qa0n = a0 * n;
  for (auto& x : qa0n.data()) x *= frob.q();
  if (n * a0 != qa0n) throw InvalidInput("A(0) does not satisfy N A(0) = q A(0) N for the residue N");

  std::vector<QMatrix> a{a0};
  for (int k = 1; k <= hi; ++k) {
    // k A_k + N A_k - q A_k N = sum_{x+b+c=k, b<k} λ_x A_b S_c - sum_{i+j=k, j<k} G_i A_j
    QMatrix rhs = q_zero(r, r);
    for (int x = 0; x <= k; ++x) {
      if (lambda[x] == 0) continue;
      for (int b = 0; b < k && x + b <= k; ++b) {
        QMatrix term = a[b] * s[k - x - b];
        for (auto& v : term.data()) v *= lambda[x];
        rhs = rhs + term;
      }
    }
    for (int i = 1; i <= k; ++i) rhs = rhs - g[i] * a[k - i];
    QMatrix op = q_zero(r * r, r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const std::size_t row = i * r + j;
        op(row, row) += k;
        for (std::size_t l = 0; l < r; ++l) {
          op(row, l * r + j) += n(i, l);
          op(row, i * r + l) -= frob.q() * n(l, j);
        }
      }
    QVector b(r * r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) b[i * r + j] = rhs(i, j);
    const auto x = solve(op, b);
    if (!x) throw InvalidInput("degree " + std::to_string(k) + " equation for A has no solution");
    QMatrix ak = q_zero(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) ak(i, j) = (*x)[i * r + j];
    a.push_back(ak);
  }
  return assemble(a, p);
}

}  // namespace robba
