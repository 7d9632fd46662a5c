#include "robba/frobcoh.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace robba {

namespace {

RingTag module_tag(const PhiNablaModule& m) { return m.ring == BaseRing::SK ? RingTag::Plus : RingTag::Laurent; }

SeriesVector monomial_vector(const PhiNablaModule& m, std::size_t coord, int k, int window) {
  const RingTag tag = (m.ring == BaseRing::SK && k >= 0) ? RingTag::Plus : RingTag::Laurent;
  const int p = m.prime();
  SeriesVector v(m.rank(), TruncatedSeries::zero(p, tag, window));
  v[coord] = TruncatedSeries::monomial(PAdicScalar::exact(p, 1), k, tag, window);
  return v;
}

// Coordinates (k - lo) * r + i  <->  coefficient of t^k in coordinate i.
SeriesVector polynomial_vector(const PhiNablaModule& m, const QVector& x, int lo, int window) {
  const std::size_t r = m.rank();
  const int p = m.prime();
  const RingTag tag = lo < 0 ? RingTag::Laurent : module_tag(m);
  const int base = std::min(lo, 0);
  SeriesVector v;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<PAdicScalar> cs(window - base + 1, PAdicScalar::zero(p));
    for (std::size_t idx = i; idx < x.size(); idx += r) {
      const int k = lo + static_cast<int>(idx / r);
      cs[k - base] = PAdicScalar(p, x[idx]);
    }
    v.emplace_back(p, tag, base, window, std::move(cs));
  }
  return v;
}

struct Tracker {
  int precision;
  int floor = kExact;
  void note(const PAdicScalar& c, const char* what, std::size_t coord, int k) {
    if (c.is_exact()) return;
    if (c.precision() < precision)
      throw PrecisionExhausted(std::string(what) + ": coefficient of t^" + std::to_string(k) + " in coordinate " +
                               std::to_string(coord) + " known only modulo p^" + std::to_string(c.precision()) +
                               ", need p^" + std::to_string(precision));
    floor = std::min(floor, c.precision());
  }
};

int effective_lo(const SeriesVector& v) {
  int lo = INT_MAX;
  for (const auto& s : v)
    if (s.effective_lo() <= s.hi()) lo = std::min(lo, s.effective_lo());
  return lo;
}

int known_hi(const SeriesVector& v) {
  int hi = INT_MAX;
  for (const auto& s : v) hi = std::min(hi, s.hi());
  return hi;
}

int lowest_exponent(const SeriesMatrix& m) {
  int lo = 0;
  for (const auto& s : m.data())
    if (s.effective_lo() <= s.hi()) lo = std::min(lo, s.effective_lo());
  return lo;
}

struct Linearized {
  QMatrix matrix;
  int row_lo = 0;
  int row_hi = -1;
};

// Matrix of a linear operator from the coordinate window [lo, hi] to the rows
// it determines, capped at `cap`.
Linearized linearize(const PhiNablaModule& m, const std::function<SeriesVector(const SeriesVector&)>& op, int lo,
                     int hi, int cap, int window, Tracker& tracker, const char* what) {
  const std::size_t r = m.rank();
  std::vector<SeriesVector> outs;
  int row_lo = INT_MAX;
  int row_hi = cap;
  for (int k = lo; k <= hi; ++k)
    for (std::size_t i = 0; i < r; ++i) {
      outs.push_back(op(monomial_vector(m, i, k, window)));
      row_lo = std::min(row_lo, effective_lo(outs.back()));
      row_hi = std::min(row_hi, known_hi(outs.back()));
    }
  if (row_lo == INT_MAX) row_lo = lo;
  if (m.ring == BaseRing::SK) row_lo = std::max(row_lo, 0);
  Linearized out;
  out.row_lo = row_lo;
  out.row_hi = row_hi;
  const std::size_t rows = row_hi >= row_lo ? static_cast<std::size_t>(row_hi - row_lo + 1) * r : 0;
  out.matrix = q_zero(rows, outs.size());
  for (std::size_t col = 0; col < outs.size(); ++col)
    for (std::size_t i = 0; i < r; ++i)
      for (int j = row_lo; j <= row_hi; ++j) {
        const PAdicScalar c = outs[col][i].coeff(j);
        tracker.note(c, what, i, j);
        out.matrix(static_cast<std::size_t>(j - row_lo) * r + i, col) = c.value();
      }
  return out;
}

QMatrix stack(const QMatrix& a, const QMatrix& b) {
  QMatrix out = q_zero(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

QMatrix minus_identity(const QMatrix& phi) {
  QMatrix out(phi);
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) -= 1;
  return out;
}

struct WindowResult {
  int lo = 0;
  int hi = 0;
  long h0F = 0;
  long h0dR = 0;
  long h1dR = 0;
  std::vector<QVector> fixed;
  std::vector<QVector> horizontal;
  QMatrix phi0;
  bool phi0_ok = true;
  QMatrix phi1;
  bool phi1_ok = true;
  std::vector<std::pair<std::size_t, int>> classes;
  std::vector<std::string> caveats;
};

WindowResult compute_on_window(const CMComplex& c, int lo, int hi, Tracker& tracker) {
  const PhiNablaModule& m = c.module();
  const std::size_t r = m.rank();
  const int q = m.frob.q();
  const int window = q * (std::max(hi, 0) + 2) + 8;
  const int low_g = lowest_exponent(m.G);
  const int low_a = lowest_exponent(m.A);
  auto nabla = [&](const SeriesVector& v) { return c.nabla(v); };

  // Row j of ∇v involves coordinates up to max(j + 1, j - low_g), so rows
  // stop at hi + reach; shrink hi until G determines all of them.
  const int reach = std::min(-1, low_g);
  Linearized d = linearize(m, nabla, lo, hi, hi + reach, window, tracker, "connection");
  while (d.row_hi < hi + reach) {
    hi = d.row_hi - reach;
    if (hi < std::max(lo, 0))
      throw TruncationInsufficient("connection matrix is not known far enough to determine any window starting at t^" +
                                   std::to_string(lo));
    d = linearize(m, nabla, lo, hi, hi + reach, window, tracker, "connection");
  }

  WindowResult out;
  out.lo = lo;
  out.hi = hi;
  out.horizontal = kernel_basis(d.matrix);
  out.h0dR = static_cast<long>(out.horizontal.size());

  // Φ0: φ on horizontal sections. Coordinates above hi only reach rows above
  // hi + low_a, so rows [lo, hi + low_a] of φ(v) are those of the full section.
  const std::size_t n0 = out.horizontal.size();
  out.phi0 = q_zero(n0, n0);
  if (n0 > 0) {
    std::vector<SeriesVector> images;
    int top = hi + std::min(low_a, 0);
    for (const auto& v : out.horizontal) {
      images.push_back(c.phi(polynomial_vector(m, v, lo, window)));
      top = std::min(top, known_hi(images.back()));
      if (effective_lo(images.back()) < lo) out.phi0_ok = false;
    }
    const std::size_t rows = static_cast<std::size_t>(std::max(top - lo + 1, 0)) * r;
    QMatrix basis = q_zero(rows, n0);
    for (std::size_t j = 0; j < n0; ++j)
      for (std::size_t row = 0; row < rows; ++row) basis(row, j) = out.horizontal[j][row];
    if (rank(basis) < n0) out.phi0_ok = false;
    for (std::size_t j = 0; j < n0 && out.phi0_ok; ++j) {
      QVector target(rows);
      for (int k = lo; k <= top; ++k)
        for (std::size_t i = 0; i < r; ++i) {
          const PAdicScalar x = images[j][i].coeff(k);
          tracker.note(x, "phi on horizontal section", i, k);
          target[static_cast<std::size_t>(k - lo) * r + i] = x.value();
        }
      const auto coords = solve(basis, target);
      if (!coords) {
        out.phi0_ok = false;
        break;
      }
      for (std::size_t i = 0; i < n0; ++i) out.phi0(i, j) = (*coords)[i];
    }
  }
  if (out.phi0_ok) {
    for (const auto& x : kernel_basis(minus_identity(out.phi0))) {
      QVector v(out.horizontal.empty() ? 0 : out.horizontal.front().size(), mpq_class(0));
      for (std::size_t j = 0; j < n0; ++j)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += x[j] * out.horizontal[j][k];
      out.fixed.push_back(std::move(v));
    }
  } else {
    // Fall back to the joint kernel of ∇ and φ - 1 on the rows both determine.
    out.caveats.push_back("phi on horizontal sections is not determined by the window");
    auto phi_minus_1 = [&](const SeriesVector& v) { return subtract(c.phi(v), v); };
    const Linearized f = linearize(m, phi_minus_1, lo, hi, hi + std::min(low_a, 0), window, tracker, "Frobenius");
    out.fixed = kernel_basis(stack(d.matrix, f.matrix));
  }
  out.h0F = static_cast<long>(out.fixed.size());

  // H^1_dR classes: standard monomials outside the image of ∇ on the row window.
  const CokernelProjector coker(d.matrix);
  for (auto pos : coker.positions()) out.classes.emplace_back(pos % r, d.row_lo + static_cast<int>(pos / r));
  out.h1dR = static_cast<long>(out.classes.size());
  out.phi1 = q_zero(out.classes.size(), out.classes.size());
  for (std::size_t j = 0; j < out.classes.size(); ++j) {
    const auto [coord, k] = out.classes[j];
    const SeriesVector image = c.phi_tilde(monomial_vector(m, coord, k, window));
    if (known_hi(image) < d.row_hi) {
      out.phi1_ok = false;
      continue;
    }
    QVector y(d.matrix.rows(), mpq_class(0));
    for (std::size_t i = 0; i < r; ++i) {
      const auto& s = image[i];
      for (int e = s.lo(); e <= s.hi(); ++e) {
        const PAdicScalar x = s.coeff(e);
        if (e < d.row_lo || e > d.row_hi) {
          if (!x.is_zero()) out.phi1_ok = false;
          continue;
        }
        tracker.note(x, "phi-tilde on class", i, e);
        y[static_cast<std::size_t>(e - d.row_lo) * r + i] = x.value();
      }
    }
    const QVector projected = coker.project(y);
    for (std::size_t i = 0; i < projected.size(); ++i) out.phi1(i, j) = projected[i];
  }
  if (!out.phi1_ok)
    out.caveats.push_back("phi-tilde moves some H^1_dR class representatives outside the window");
  return out;
}

}  // namespace

SeriesVector CMComplex::nabla(const SeriesVector& v) const { return add(derive(v), multiply(m_.G, v)); }

SeriesVector CMComplex::phi(const SeriesVector& v) const { return multiply(m_.A, apply_frobenius(m_.frob, v)); }

SeriesVector CMComplex::phi_tilde(const SeriesVector& v) const {
  return scale(m_.frob.sigma_t_derivative(), phi(v));
}

std::pair<SeriesVector, SeriesVector> CMComplex::d0(const SeriesVector& v) const {
  return {nabla(v), subtract(phi(v), v)};
}

SeriesVector CMComplex::d1(const SeriesVector& x, const SeriesVector& y) const {
  return add(subtract(x, phi_tilde(x)), nabla(y));
}

std::vector<SeriesVector> monomial_probes(const PhiNablaModule& m, int lo, int hi, int window) {
  std::vector<SeriesVector> out;
  for (int k = lo; k <= hi; ++k)
    for (std::size_t i = 0; i < m.rank(); ++i) out.push_back(monomial_vector(m, i, k, window));
  return out;
}

CompositionCheck check_composition(const CMComplex& c, const std::vector<SeriesVector>& probes) {
  CompositionCheck check;
  for (std::size_t n = 0; n < probes.size(); ++n) {
    const auto [x, y] = c.d0(probes[n]);
    const SeriesVector z = c.d1(x, y);
    ++check.probes;
    for (std::size_t i = 0; i < z.size(); ++i)
      for (int k = z[i].lo(); k <= z[i].hi(); ++k) {
        const PAdicScalar v = z[i].coeff(k);
        ++check.compared;
        if (!v.is_exact()) check.precision_floor = std::min(check.precision_floor, v.precision());
        if (!check.failure && !v.is_zero())
          check.failure = "probe " + std::to_string(n) + ", coordinate " + std::to_string(i) + ", t^" +
                          std::to_string(k) + ": " + v.to_string();
      }
  }
  return check;
}

CMComplex build_complex(const PhiNablaModule& m) {
  require_valid(m);
  CMComplex c(m);
  const int window = std::max(max_hi(m.G), max_hi(m.A)) + 1;
  const int lo = m.ring == BaseRing::SK ? 0 : -2;
  const CompositionCheck check = check_composition(c, monomial_probes(m, lo, 3, window));
  if (!check.ok())
    throw Error("d1 o d0 is not zero: " + check.failure.value_or("no coefficient determined; widen the windows"));
  return c;
}

FixedAndCofixed phi_fixed_and_coinvariants(const QMatrix& phi) {
  if (!phi.square()) throw Mismatch("Frobenius matrix must be square");
  const QMatrix shifted = minus_identity(phi);
  FixedAndCofixed out;
  out.fixed = kernel_basis(shifted);
  for (auto pos : cokernel_positions(shifted)) {
    QVector e(phi.rows(), mpq_class(0));
    e[pos] = 1;
    out.cofixed.push_back(std::move(e));
  }
  return out;
}

CohomologyReport finite_cohomology(const QMatrix& phi0, const QMatrix& phi1) {
  const FixedAndCofixed c0 = phi_fixed_and_coinvariants(phi0);
  const FixedAndCofixed c1 = phi_fixed_and_coinvariants(phi1);
  CohomologyReport report;
  report.regime = Regime::Finite;
  report.h0dR = static_cast<long>(phi0.rows());
  report.h1dR = static_cast<long>(phi1.rows());
  report.phi0 = phi0;
  report.phi1 = phi1;
  report.h0F.value = static_cast<long>(c0.fixed.size());
  report.h1F.value = static_cast<long>(c0.cofixed.size() + c1.fixed.size());
  report.h2F.value = static_cast<long>(c1.cofixed.size());
  report.h0_representatives = c0.fixed;
  report.h2_representatives = c1.cofixed;
  report.precision_note = "exact";
  return report;
}

CohomologyReport cohomology(const PhiNablaModule& m, const CohomologyOptions& options) {
  if (options.window < 1) throw InvalidInput("window must be positive");
  if (options.precision < 1) throw InvalidInput("precision must be positive");
  const CMComplex c = build_complex(m);
  const int lo = m.ring == BaseRing::SK ? 0 : -std::max(options.depth, 0);
  const int hi = options.window;

  Tracker tracker{options.precision};
  const WindowResult full = compute_on_window(c, lo, hi, tracker);
  const int shrunk_lo = m.ring == BaseRing::SK ? full.lo : full.lo + 1;
  const WindowResult shrunk = compute_on_window(c, shrunk_lo, std::max(full.hi - 1, shrunk_lo), tracker);

  CohomologyReport report;
  report.regime = Regime::Series;
  report.window_lo = full.lo;
  report.window_hi = full.hi;
  report.h0dR = full.h0dR;
  report.h1dR = full.h1dR;
  report.phi0 = full.phi0;
  report.phi1 = full.phi1;
  report.h1_classes = full.classes;
  report.h0_representatives = full.fixed;
  report.caveats = full.caveats;
  if (full.hi < hi)
    report.caveats.push_back("window clamped to [" + std::to_string(full.lo) + ", " + std::to_string(full.hi) +
                             "] by the known coefficients of G");

  const FixedAndCofixed c1 = phi_fixed_and_coinvariants(full.phi1);
  report.h2_representatives = c1.cofixed;
  report.h0F.value = full.h0F;
  // dim coker(Φ0 - 1) = dim ker(Φ0 - 1) for a square Φ0.
  report.h1F.value = full.h0F + static_cast<long>(c1.fixed.size());
  report.h2F.value = static_cast<long>(c1.cofixed.size());

  if (!full.phi0_ok) report.h0F.window_limited = true;
  if (shrunk.h0F != full.h0F || shrunk.h0dR != full.h0dR) {
    report.h0F.window_limited = true;
    report.caveats.push_back("H^0 dimensions change when the window shrinks by one");
  }
  // H^1 over a series ring need not be finite-dimensional: only classes
  // detected inside the window are counted, so these are never asserted.
  report.h1F.window_limited = true;
  report.h2F.window_limited = true;
  report.caveats.push_back("H^1_dR counts only classes detected on exponents [" + std::to_string(full.lo) + ", " +
                           std::to_string(full.hi) + "]");
  if (shrunk.h1dR != full.h1dR) report.caveats.push_back("H^1_dR class count changes when the window shrinks by one");

  report.precision_note = tracker.floor == kExact ? "exact" : "modulo p^" + std::to_string(tracker.floor);
  return report;
}

bool ExactnessReport::exact() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const auto& n) { return n.composition_zero && n.defect() == 0; });
}

ExactnessReport five_term_check(const std::vector<std::size_t>& dims, const std::vector<QMatrix>& maps) {
  if (dims.size() != 5 || maps.size() != 4) throw Mismatch("five-term sequence needs 5 spaces and 4 maps");
  for (std::size_t i = 0; i < 4; ++i)
    if (maps[i].rows() != dims[i + 1] || maps[i].cols() != dims[i])
      throw Mismatch("map " + std::to_string(i) + " should be " + std::to_string(dims[i + 1]) + "x" +
                     std::to_string(dims[i]));
  ExactnessReport report;
  for (std::size_t node = 0; node < 4; ++node) {
    NodeReport n{node, true, 0, 0};
    // incoming map (zero into V0), outgoing maps[node]
    n.kernel_dim = static_cast<long>(dims[node] - (dims[node] == 0 || dims[node + 1] == 0 ? 0 : rank(maps[node])));
    if (node > 0) {
      const QMatrix& in = maps[node - 1];
      n.image_dim = static_cast<long>(in.rows() == 0 || in.cols() == 0 ? 0 : rank(in));
      if (dims[node - 1] > 0 && dims[node] > 0 && dims[node + 1] > 0) n.composition_zero = is_zero(maps[node] * in);
    }
    report.nodes.push_back(n);
  }
  return report;
}

}  // namespace robba
