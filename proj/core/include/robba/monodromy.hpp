#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robba/phinabla.hpp"

namespace robba {

/// Finite-dimensional space with invertible Φ and nilpotent N, NΦ = qΦN.
struct PhiNModule {
  long q = 0;
  QMatrix Phi;
  QMatrix N;

  std::size_t dim() const { return Phi.rows(); }
  bool operator==(const PhiNModule& o) const { return q == o.q && Phi == o.Phi && N == o.N; }
};

ValidationReport validate(const PhiNModule& v);
void require_valid(const PhiNModule& v);

/// Φ = A(0), N = Glog(0). Both must be exact.
PhiNModule residue(const LogPhiNablaModule& l);

struct NonsingularVerdict {
  bool nonsingular = false;
  /// from_log(L) when nonsingular.
  std::optional<PhiNablaModule> module;
  /// The residue N when singular.
  std::optional<ScalarMatrix> residue;
  std::vector<std::string> caveats;
};

/// Nonsingular iff the residue vanishes within precision.
NonsingularVerdict is_nonsingular(const LogPhiNablaModule& l);

PhiNModule phiN_tensor(const PhiNModule& a, const PhiNModule& b);
PhiNModule phiN_dual(const PhiNModule& v);
/// Φ' = P⁻¹ΦP, N' = P⁻¹NP.
PhiNModule phiN_conjugate(const PhiNModule& v, const QMatrix& P);
PhiNModule phiN_unit(long q);

/// Least k with N^k = 0 (0 for the empty space); throws InvalidInput if N is not nilpotent.
std::size_t nilpotence_index(const QMatrix& n);

}  // namespace robba
