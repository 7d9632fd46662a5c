#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robba/series_matrix.hpp"

namespace robba {

enum class BaseRing { SK, EDagger };

std::string to_string(BaseRing ring);
BaseRing base_ring_from_string(const std::string& s);

/// Free (φ,∇)-module of rank r presented in a basis e_1..e_r.
///
/// Conventions, fixed for the whole library:
///   ∇ acts on coordinate columns as  ∇v = ∂_t v + G v;
///   φ(v) = A σ(v), i.e. column j of A is φ of the pulled-back basis vector e_j.
/// Horizontality of φ (∇∘φ = φ̃∘∇ with φ̃ = ∂_t(σ(t))·φ) is then the matrix identity
///   ∂_t(A) + G A = ∂_t(σ(t)) · A · σ(G).
struct PhiNablaModule {
  BaseRing ring = BaseRing::SK;
  SeriesMatrix G;
  SeriesMatrix A;
  FrobeniusLift frob;
  /// Optional flag basis P: the columns give a basis in which the
  /// connection matrix is strictly upper triangular (declared unipotence).
  std::optional<SeriesMatrix> flag_basis;
  /// Set by base_change: the module is non-singular by construction.
  bool nonsingular = false;
  /// Set by to_dagger: the module came from a log module over S_K.
  bool regular = false;

  std::size_t rank() const { return G.rows(); }
  int prime() const { return frob.prime(); }
};

/// Logarithmic (φ,∇)-module over S_K: ∇^log v = δ_t v + Glog v with δ_t = t ∂_t,
/// and the identity δ_t(A) + Glog A = (δ_t σ(t) / σ(t)) · A · σ(Glog).
struct LogPhiNablaModule {
  SeriesMatrix Glog;
  SeriesMatrix A;
  FrobeniusLift frob;
  std::optional<SeriesMatrix> flag_basis;

  std::size_t rank() const { return Glog.rows(); }
  int prime() const { return frob.prime(); }
};

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const;
  /// First failing check rendered as "name: detail"; empty when ok.
  std::string first_failure() const;
  void add(std::string name, bool pass, std::string detail = {});
};

/// Thrown by operations that require a validated module.
class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// from_log on a log module with nonzero residue.
class NonSingularityViolation : public Error {
 public:
  explicit NonSingularityViolation(ScalarMatrix residue);
  const ScalarMatrix& residue() const { return residue_; }

 private:
  ScalarMatrix residue_;
};

ValidationReport validate(const PhiNablaModule& m);
ValidationReport validate(const LogPhiNablaModule& m);

/// Throw ValidationFailed unless the report passes.
void require_valid(const PhiNablaModule& m);
void require_valid(const LogPhiNablaModule& m);

/// Change of basis v = P v':  G' = P⁻¹GP + P⁻¹∂_t P,  A' = P⁻¹ A σ(P).
PhiNablaModule gauge_transform(const PhiNablaModule& m, const SeriesMatrix& P);
LogPhiNablaModule gauge_transform(const LogPhiNablaModule& m, const SeriesMatrix& P);

PhiNablaModule tensor(const PhiNablaModule& a, const PhiNablaModule& b);
PhiNablaModule dual(const PhiNablaModule& m);
PhiNablaModule direct_sum(const PhiNablaModule& a, const PhiNablaModule& b);

/// The same matrices over the bounded Robba ring, flagged non-singular.
PhiNablaModule base_change(const PhiNablaModule& m);

/// Glog = t G.
LogPhiNablaModule to_log(const PhiNablaModule& m);
/// G = t⁻¹ Glog; throws NonSingularityViolation when Glog(0) != 0.
PhiNablaModule from_log(const LogPhiNablaModule& l);
/// The regular module (M ⊗ E†, t⁻¹ ∇^log) attached to a log module.
PhiNablaModule to_dagger(const LogPhiNablaModule& l);

/// Frobenius matrix with A(0) = a0 solving ∂A + GA = σ'(t) A σ(G) degree by degree
/// up to t^hi. G must be a PLUS matrix.
SeriesMatrix solve_frobenius_matrix(const SeriesMatrix& G, const QMatrix& a0, const FrobeniusLift& frob, int hi);

/// Frobenius matrix with A(0) = a0 solving δA + Glog A = λ A σ(Glog) degree by degree
/// up to t^hi. Requires N a0 = q a0 N for N = Glog(0); throws InvalidInput otherwise.
SeriesMatrix solve_log_frobenius_matrix(const SeriesMatrix& Glog, const QMatrix& a0, const FrobeniusLift& frob,
                                        int hi);

/// Entry (i, j) of a strictly-upper-triangular check failing, if any.
std::optional<Discrepancy> strictly_upper_violation(const SeriesMatrix& m);

}  // namespace robba
