#include "robba/monodromy.hpp"

namespace robba {

namespace {

QMatrix scaled(QMatrix m, const mpq_class& c) {
  for (auto& x : m.data()) x *= c;
  return m;
}

QMatrix product(const QMatrix& a, const QMatrix& b) { return a.rows() == 0 ? a : a * b; }

}  // namespace

ValidationReport validate(const PhiNModule& v) {
  ValidationReport report;
  const std::size_t n = v.Phi.rows();
  const bool shape = v.Phi.square() && v.N.square() && v.N.rows() == n;
  report.add("shape", shape, shape ? "dim " + std::to_string(n) : "Phi and N must be square of equal size");
  if (!shape) return report;
  report.add("q", v.q >= 2, v.q >= 2 ? "q = " + std::to_string(v.q) : "q must be at least 2");
  const bool invertible = rank(v.Phi) == n;
  report.add("phi_invertible", invertible, invertible ? "" : "Phi is singular");
  const bool nil = is_nilpotent(v.N);
  report.add("n_nilpotent", nil, nil ? "" : "N is not nilpotent");
  const bool rel = product(v.N, v.Phi) == scaled(product(v.Phi, v.N), v.q);
  report.add("n_phi_relation", rel, rel ? "N Phi = q Phi N" : "N Phi != q Phi N");
  return report;
}

void require_valid(const PhiNModule& v) {
  auto r = validate(v);
  if (!r.ok()) throw ValidationFailed(std::move(r));
}

PhiNModule residue(const LogPhiNablaModule& l) {
  require_valid(l);
  const ScalarMatrix n = coefficient(l.Glog, 0);
  const ScalarMatrix a = coefficient(l.A, 0);
  for (const auto* m : {&n, &a})
    for (const auto& x : m->data())
      if (!x.is_exact())
        throw PrecisionExhausted("residue needs exact constant terms; found one known modulo p^" +
                                 std::to_string(x.precision()));
  PhiNModule out{l.frob.q(), values(a), values(n)};
  auto report = validate(out);
  // Log-horizontality at t = 0 forces both invariants.
  if (!report.ok()) throw Error("residue of a validated log module fails " + report.first_failure());
  return out;
}

NonsingularVerdict is_nonsingular(const LogPhiNablaModule& l) {
  require_valid(l);
  NonsingularVerdict verdict;
  const ScalarMatrix n = coefficient(l.Glog, 0);
  int floor = kExact;
  bool zero = true;
  for (const auto& x : n.data()) {
    if (!x.is_zero()) zero = false;
    if (!x.is_exact()) floor = std::min(floor, x.precision());
  }
  if (!zero) {
    verdict.residue = n;
    return verdict;
  }
  verdict.nonsingular = true;
  verdict.module = from_log(l);
  if (floor != kExact)
    verdict.caveats.push_back("residue vanishes only modulo p^" + std::to_string(floor));
  return verdict;
}

PhiNModule phiN_tensor(const PhiNModule& a, const PhiNModule& b) {
  if (a.q != b.q) throw Mismatch("tensor of (phi,N)-modules with different q");
  return PhiNModule{a.q, kron(a.Phi, b.Phi), kron(a.N, q_identity(b.dim())) + kron(q_identity(a.dim()), b.N)};
}

PhiNModule phiN_dual(const PhiNModule& v) {
  return PhiNModule{v.q, inverse(v.Phi.transposed()), -v.N.transposed()};
}

PhiNModule phiN_conjugate(const PhiNModule& v, const QMatrix& P) {
  const QMatrix pinv = inverse(P);
  return PhiNModule{v.q, pinv * v.Phi * P, pinv * v.N * P};
}

PhiNModule phiN_unit(long q) { return PhiNModule{q, q_identity(1), q_zero(1, 1)}; }

std::size_t nilpotence_index(const QMatrix& n) {
  if (!n.square()) throw Mismatch("nilpotence index of a non-square matrix");
  if (n.rows() == 0) return 0;
  QMatrix power = q_identity(n.rows());
  for (std::size_t k = 0; k <= n.rows(); ++k) {
    if (is_zero(power)) return k;
    power = power * n;
  }
  throw InvalidInput("matrix is not nilpotent");
}

}  // namespace robba
