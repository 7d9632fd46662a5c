#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robba/phinabla.hpp"

namespace robba {

/// The two-term complex  M --d0--> M ⊕ M --d1--> M  with
///   d0(m)    = (∇m, (φ - 1)m)
///   d1(x, y) = (1 - φ̃)x + ∇y,   φ̃ = ∂_t(σ(t))·φ.
/// d1∘d0 = ∇φ - φ̃∇, which vanishes exactly when φ is horizontal.
class CMComplex {
 public:
  /// Use build_complex; this skips the composition check.
  explicit CMComplex(PhiNablaModule m) : m_(std::move(m)) {}

  const PhiNablaModule& module() const { return m_; }

  SeriesVector nabla(const SeriesVector& v) const;
  SeriesVector phi(const SeriesVector& v) const;
  SeriesVector phi_tilde(const SeriesVector& v) const;
  std::pair<SeriesVector, SeriesVector> d0(const SeriesVector& v) const;
  SeriesVector d1(const SeriesVector& x, const SeriesVector& y) const;

 private:
  PhiNablaModule m_;
};

struct CompositionCheck {
  long compared = 0;
  std::size_t probes = 0;
  /// First probe/coordinate/exponent with d1∘d0 nonzero beyond precision.
  std::optional<std::string> failure;
  /// Smallest precision among the compared coefficients (kExact if all exact).
  int precision_floor = kExact;
  bool ok() const { return !failure && compared > 0; }
};

/// Probe vectors e_i t^k for k in [lo, hi].
std::vector<SeriesVector> monomial_probes(const PhiNablaModule& m, int lo, int hi, int window);

CompositionCheck check_composition(const CMComplex& c, const std::vector<SeriesVector>& probes);

/// Validates M, builds the complex and checks d1∘d0 = 0 on monomial probes.
/// Throws Error if the composition is nonzero beyond precision.
CMComplex build_complex(const PhiNablaModule& m);

struct FixedAndCofixed {
  std::vector<QVector> fixed;     // basis of ker(Φ - I)
  std::vector<QVector> cofixed;   // standard vectors spanning coker(Φ - I)
};

FixedAndCofixed phi_fixed_and_coinvariants(const QMatrix& phi);

enum class Regime { Series, Finite };

struct Dimension {
  long value = 0;
  bool window_limited = false;
};

struct CohomologyReport {
  Regime regime = Regime::Finite;
  Dimension h0F;
  Dimension h1F;
  Dimension h2F;
  /// de Rham dimensions detected on the window (SERIES) or supplied (FINITE).
  long h0dR = 0;
  long h1dR = 0;
  QMatrix phi0;
  QMatrix phi1;
  std::vector<QVector> h0_representatives;  // φ-fixed elements of H^0_dR
  std::vector<QVector> h2_representatives;  // classes spanning H^1_dR / (Φ1 - 1)
  /// SERIES regime: H^1_dR class i is represented by e_{coord} t^{exponent}.
  std::vector<std::pair<std::size_t, int>> h1_classes;
  std::string precision_note;
  std::vector<std::string> caveats;
  int window_lo = 0;
  int window_hi = 0;

  bool window_limited() const { return h0F.window_limited || h1F.window_limited || h2F.window_limited; }
};

/// H^0_F = H^0_dR^{φ=1}, 0 → (H^0_dR)_{φ=1} → H^1_F → (H^1_dR)^{φ=1} → 0, H^2_F = (H^1_dR)_{φ=1}.
CohomologyReport finite_cohomology(const QMatrix& phi0, const QMatrix& phi1);

struct CohomologyOptions {
  /// Coordinates of unknown vectors live on exponents [-depth, window];
  /// depth is ignored over S_K.
  int window = 10;
  int depth = 4;
  /// Every coefficient the computation reads must be known modulo at least p^precision.
  int precision = 12;
};

CohomologyReport cohomology(const PhiNablaModule& m, const CohomologyOptions& options = {});

struct NodeReport {
  std::size_t node;
  bool composition_zero;
  long kernel_dim;
  long image_dim;
  long defect() const { return kernel_dim - image_dim; }
};

struct ExactnessReport {
  std::vector<NodeReport> nodes;
  bool exact() const;
};

/// 0 → V0 --f[0]--> V1 --f[1]--> V2 --f[2]--> V3 --f[3]--> V4.
/// Maps are dims[i+1] × dims[i] matrices. Exactness is checked at V0..V3.
ExactnessReport five_term_check(const std::vector<std::size_t>& dims, const std::vector<QMatrix>& maps);

}  // namespace robba
