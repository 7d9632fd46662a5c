#include "robba/pi1.hpp"

#include <algorithm>
#include <numeric>

namespace robba {

namespace {

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<long>(i), w.end())) return false;
  return true;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) {
      Word w(u);
      w.insert(w.end(), v.begin(), v.end());
      out[w] += x * y;
    }
  return out;
}

void axpy(Polynomial& out, const mpq_class& c, const Polynomial& p) {
  for (const auto& [w, x] : p) {
    auto& slot = out[w];
    slot += c * x;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
}

std::string label(const Word& w) {
  if (w.size() == 1) return "e" + std::to_string(w[0] + 1);
  const auto [u, v] = standard_factorization(w);
  return "[" + label(u) + "," + label(v) + "]";
}

void add_scaled(QVector& out, const mpq_class& c, const QVector& v) {
  if (c == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out[i] += c * v[i];
}

QVector column(const QMatrix& m, std::size_t j) {
  QVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

void set_column(QMatrix& m, std::size_t j, const QVector& v) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = v[i];
}

QVector apply_sparse(const QMatrix& m, const QVector& x) {
  QVector y(m.rows(), mpq_class(0));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) y[i] += m(i, j) * x[j];
  }
  return y;
}

SparseVector to_sparse(const QVector& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(i, v[i]);
  return s;
}

std::string vec_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

// Decomposition of a homogeneous Lie polynomial in the Hall basis of its degree.
struct FreeAlgebra {
  HallBasis basis;
  std::map<Word, std::size_t> index;
  std::vector<Polynomial> expansions;

  FreeAlgebra(int g, int L) : basis(hall_basis(g, L)) {
    for (std::size_t i = 0; i < basis.words.size(); ++i) {
      index[basis.words[i]] = i;
      const Word& w = basis.words[i];
      if (w.size() == 1) {
        expansions.push_back({{w, 1}});
        continue;
      }
      const auto [u, v] = standard_factorization(w);
      const Polynomial& pu = expansions[index.at(u)];
      const Polynomial& pv = expansions[index.at(v)];
      Polynomial p = multiply(pu, pv);
      axpy(p, -1, multiply(pv, pu));
      // Triangularity: the expansion of a Hall element starts at its own word.
      if (p.empty() || p.begin()->first != w || p.begin()->second != 1)
        throw Error("Hall element " + label(w) + " does not lead with its word");
      expansions.push_back(std::move(p));
    }
  }

  SparseVector decompose(Polynomial p) const {
    SparseVector out;
    while (!p.empty()) {
      const auto [w, c] = *p.begin();
      const auto it = index.find(w);
      if (it == index.end()) throw Error("polynomial is not a Lie element (leading word not Lyndon)");
      out.emplace_back(it->second, c);
      axpy(p, -c, expansions[it->second]);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }
};

NilpotentLieData free_structure(const FreeAlgebra& fa, long q) {
  NilpotentLieData d = make_lie_data(fa.basis.dims, q);
  d.labels = fa.basis.labels;
  const std::size_t n = d.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (fa.basis.words[i].size() + fa.basis.words[j].size() > static_cast<std::size_t>(d.level)) continue;
      Polynomial p = multiply(fa.expansions[i], fa.expansions[j]);
      axpy(p, -1, multiply(fa.expansions[j], fa.expansions[i]));
      SparseVector s = fa.decompose(std::move(p));
      SparseVector neg = s;
      for (auto& [k, c] : neg) c = -c;
      d.table[i][j] = std::move(s);
      d.table[j][i] = std::move(neg);
    }
  return d;
}

// Rows spanning a subspace in reduced echelon form, for reduction modulo it.
struct Reducer {
  RowEchelon echelon;
  std::size_t rank = 0;

  explicit Reducer(const std::vector<QVector>& span, std::size_t n) {
    QMatrix m = q_zero(span.size(), n);
    for (std::size_t i = 0; i < span.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = span[i][j];
    echelon = rref(m);
    rank = echelon.pivots.size();
  }

  QVector reduce(QVector v) const {
    for (std::size_t r = 0; r < rank; ++r) {
      const mpq_class f = v[echelon.pivots[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (echelon.reduced(r, j) != 0) v[j] -= f * echelon.reduced(r, j);
    }
    return v;
  }

  bool contains(const QVector& v) const { return is_zero_vector(reduce(v)); }

  static bool is_zero_vector(const QVector& v) {
    return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
  }
};

}  // namespace

std::vector<Word> lyndon_words(int g, int L) {
  std::vector<Word> out;
  if (g < 1 || L < 1) return out;
  // Duval's generation of all Lyndon words of length <= L in lexicographic order.
  Word w{0};
  while (!w.empty()) {
    out.push_back(w);
    const Word base = w;
    while (static_cast<int>(w.size()) < L) w.push_back(base[w.size() % base.size()]);
    while (!w.empty() && w.back() == g - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.size() < 2) throw InvalidInput("standard factorization needs a word of length >= 2");
  for (std::size_t i = 1; i < w.size(); ++i) {
    Word v(w.begin() + static_cast<long>(i), w.end());
    if (is_lyndon(v)) return {Word(w.begin(), w.begin() + static_cast<long>(i)), v};
  }
  throw InvalidInput("word has no proper Lyndon suffix");
}

long witt_dimension(int g, int n) {
  long total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    long power = 1;
    for (int k = 0; k < n / d; ++k) power *= g;
    total += mobius(d) * power;
  }
  return total / n;
}

HallBasis hall_basis(int g, int L) {
  if (g < 1) throw InvalidInput("need at least one generator");
  if (L < 1 || L > kMaxLevel) throw InvalidInput("level must be between 1 and " + std::to_string(kMaxLevel));
  HallBasis b;
  b.generators = g;
  b.level = L;
  b.words = lyndon_words(g, L);
  b.dims.assign(static_cast<std::size_t>(L), 0);
  for (const auto& w : b.words) {
    ++b.dims[w.size() - 1];
    b.labels.push_back(label(w));
  }
  return b;
}

Polynomial expand(const Word& lyndon) {
  if (!is_lyndon(lyndon)) throw InvalidInput("not a Lyndon word");
  if (lyndon.size() == 1) return {{lyndon, 1}};
  const auto [u, v] = standard_factorization(lyndon);
  const Polynomial pu = expand(u);
  const Polynomial pv = expand(v);
  Polynomial p = multiply(pu, pv);
  axpy(p, -1, multiply(pv, pu));
  return p;
}

std::size_t NilpotentLieData::dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

std::size_t NilpotentLieData::offset(int lvl) const {
  std::size_t o = 0;
  for (int k = 1; k < lvl && k <= static_cast<int>(dims.size()); ++k) o += dims[static_cast<std::size_t>(k - 1)];
  return o;
}

int NilpotentLieData::level_of(std::size_t i) const {
  std::size_t o = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    o += dims[k];
    if (i < o) return static_cast<int>(k + 1);
  }
  throw InvalidInput("basis index out of range");
}

QVector NilpotentLieData::bracket(const QVector& x, const QVector& y) const {
  const std::size_t n = dim();
  QVector out(n, mpq_class(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      const mpq_class c = x[i] * y[j];
      for (const auto& [k, s] : table[i][j]) out[k] += c * s;
    }
  }
  return out;
}

QVector NilpotentLieData::basis_vector(std::size_t i) const {
  QVector v(dim(), mpq_class(0));
  v[i] = 1;
  return v;
}

NilpotentLieData make_lie_data(const std::vector<std::size_t>& dims, long q) {
  NilpotentLieData d;
  d.level = static_cast<int>(dims.size());
  d.dims = dims;
  d.q = q;
  const std::size_t n = d.dim();
  for (std::size_t i = 0; i < n; ++i) d.labels.push_back("e" + std::to_string(i + 1));
  d.table.assign(n, std::vector<SparseVector>(n));
  d.Phi = q_identity(n);
  d.N = q_zero(n, n);
  return d;
}

ValidationReport validate(const NilpotentLieData& d) {
  ValidationReport report;
  const std::size_t n = d.dim();
  const bool shape = d.level >= 1 && d.level <= kMaxLevel && d.dims.size() == static_cast<std::size_t>(d.level) &&
                     d.labels.size() == n && d.table.size() == n &&
                     std::all_of(d.table.begin(), d.table.end(), [n](const auto& row) { return row.size() == n; }) &&
                     d.Phi.rows() == n && d.Phi.cols() == n && d.N.rows() == n && d.N.cols() == n;
  report.add("shape", shape, shape ? "dim " + std::to_string(n) : "inconsistent sizes or level outside 1..4");
  if (!shape) return report;
  report.add("q", d.q >= 2, "q = " + std::to_string(d.q));

  std::string grading, antisym;
  for (std::size_t i = 0; i < n && grading.empty(); ++i)
    for (std::size_t j = 0; j < n && grading.empty(); ++j)
      for (const auto& [k, c] : d.table[i][j]) {
        if (k >= n || c == 0 || d.level_of(k) != d.level_of(i) + d.level_of(j)) {
          grading = "[" + d.labels[i] + "," + d.labels[j] + "] has a component outside level " +
                    std::to_string(d.level_of(i) + d.level_of(j));
          break;
        }
      }
  report.add("grading", grading.empty(), grading);
  if (!grading.empty()) return report;

  for (std::size_t i = 0; i < n && antisym.empty(); ++i)
    for (std::size_t j = i; j < n && antisym.empty(); ++j) {
      SparseVector neg = d.table[j][i];
      for (auto& [k, c] : neg) c = -c;
      auto a = d.table[i][j];
      std::sort(a.begin(), a.end());
      std::sort(neg.begin(), neg.end());
      if (a != neg) antisym = "[" + d.labels[i] + "," + d.labels[j] + "] != -[" + d.labels[j] + "," + d.labels[i] + "]";
    }
  report.add("antisymmetry", antisym.empty(), antisym);

  std::string jacobi;
  for (std::size_t i = 0; i < n && jacobi.empty(); ++i)
    for (std::size_t j = i + 1; j < n && jacobi.empty(); ++j) {
      if (d.level_of(i) + d.level_of(j) + 1 > d.level) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (d.level_of(i) + d.level_of(j) + d.level_of(k) > d.level) continue;
        const QVector x = d.basis_vector(i), y = d.basis_vector(j), z = d.basis_vector(k);
        QVector s = d.bracket(x, d.bracket(y, z));
        add_scaled(s, 1, d.bracket(y, d.bracket(z, x)));
        add_scaled(s, 1, d.bracket(z, d.bracket(x, y)));
        if (!Reducer::is_zero_vector(s)) {
          jacobi = "Jacobi fails on (" + d.labels[i] + ", " + d.labels[j] + ", " + d.labels[k] + ")";
          break;
        }
      }
    }
  report.add("jacobi", jacobi.empty(), jacobi);

  std::string filtration;
  for (const auto* m : {&d.Phi, &d.N})
    for (std::size_t j = 0; j < n && filtration.empty(); ++j)
      for (std::size_t i = 0; i < n; ++i)
        if ((*m)(i, j) != 0 && d.level_of(i) < d.level_of(j)) {
          filtration = std::string(m == &d.Phi ? "Phi" : "N") + " lowers the level of " + d.labels[j];
          break;
        }
  report.add("filtration", filtration.empty(), filtration);
  if (!filtration.empty()) return report;

  bool invertible = true, nilpotent = true;
  for (int lvl = 1; lvl <= d.level; ++lvl) {
    const std::size_t o = d.offset(lvl), m = d.dims[static_cast<std::size_t>(lvl - 1)];
    QMatrix phi = q_zero(m, m), nb = q_zero(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        phi(i, j) = d.Phi(o + i, o + j);
        nb(i, j) = d.N(o + i, o + j);
      }
    if (rank(phi) != m) invertible = false;
    if (!is_nilpotent(nb)) nilpotent = false;
  }
  report.add("phi_invertible", invertible, invertible ? "" : "a diagonal block of Phi is singular");
  report.add("n_nilpotent", nilpotent, nilpotent ? "" : "a diagonal block of N is not nilpotent");

  std::string automorphism, derivation;
  std::vector<QVector> phi_cols, n_cols;
  for (std::size_t j = 0; j < n; ++j) {
    phi_cols.push_back(column(d.Phi, j));
    n_cols.push_back(column(d.N, j));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d.level_of(i) + d.level_of(j) > d.level) continue;
      const QVector br = d.bracket(d.basis_vector(i), d.basis_vector(j));
      if (automorphism.empty() && apply_sparse(d.Phi, br) != d.bracket(phi_cols[i], phi_cols[j]))
        automorphism = "Phi[" + d.labels[i] + "," + d.labels[j] + "] != [Phi " + d.labels[i] + ", Phi " + d.labels[j] + "]";
      if (derivation.empty()) {
        QVector rhs = d.bracket(n_cols[i], d.basis_vector(j));
        add_scaled(rhs, 1, d.bracket(d.basis_vector(i), n_cols[j]));
        if (apply_sparse(d.N, br) != rhs)
          derivation = "N[" + d.labels[i] + "," + d.labels[j] + "] != [N " + d.labels[i] + "," + d.labels[j] + "] + [" +
                       d.labels[i] + ", N " + d.labels[j] + "]";
      }
    }
  report.add("phi_automorphism", automorphism.empty(), automorphism);
  report.add("n_derivation", derivation.empty(), derivation);

  QMatrix rhs = multiply_sparse(d.Phi, d.N);
  for (auto& x : rhs.data()) x *= d.q;
  const bool rel = multiply_sparse(d.N, d.Phi) == rhs;
  report.add("n_phi_relation", rel, rel ? "N Phi = q Phi N" : "N Phi != q Phi N");
  return report;
}

void require_valid(const NilpotentLieData& d) {
  auto r = validate(d);
  if (!r.ok()) throw ValidationFailed(std::move(r));
}

NilpotentLieData free_nilpotent(int g, int L, long q, const std::vector<QVector>& phi_on_generators,
                                const std::vector<QVector>& n_on_generators) {
  const FreeAlgebra fa(g, L);
  NilpotentLieData d = free_structure(fa, q);
  const std::size_t n = d.dim();
  if (phi_on_generators.size() != static_cast<std::size_t>(g) || n_on_generators.size() != static_cast<std::size_t>(g))
    throw Mismatch("need Phi and N on each generator");
  for (const auto* vs : {&phi_on_generators, &n_on_generators})
    for (const auto& v : *vs)
      if (v.size() != n) throw Mismatch("generator images must have length " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Word& w = fa.basis.words[i];
    if (w.size() == 1) {
      set_column(d.Phi, i, phi_on_generators[static_cast<std::size_t>(w[0])]);
      set_column(d.N, i, n_on_generators[static_cast<std::size_t>(w[0])]);
      continue;
    }
    const auto [u, v] = standard_factorization(w);
    const std::size_t a = fa.index.at(u), b = fa.index.at(v);
    set_column(d.Phi, i, d.bracket(column(d.Phi, a), column(d.Phi, b)));
    QVector nv = d.bracket(column(d.N, a), d.basis_vector(b));
    add_scaled(nv, 1, d.bracket(d.basis_vector(a), column(d.N, b)));
    set_column(d.N, i, nv);
  }
  require_valid(d);
  return d;
}

NilpotentLieData free_nilpotent(const PhiNModule& h1, int L) {
  require_valid(h1);
  const int g = static_cast<int>(h1.dim());
  const std::size_t n = hall_basis(g, L).words.size();
  std::vector<QVector> phi, nn;
  for (int j = 0; j < g; ++j) {
    QVector a(n, mpq_class(0)), b(n, mpq_class(0));
    for (int i = 0; i < g; ++i) {
      a[static_cast<std::size_t>(i)] = h1.Phi(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      b[static_cast<std::size_t>(i)] = h1.N(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    phi.push_back(std::move(a));
    nn.push_back(std::move(b));
  }
  return free_nilpotent(g, L, h1.q, phi, nn);
}

NilpotentLieData impose_surface_relation(const NilpotentLieData& d, int g) {
  require_valid(d);
  if (g < 1 || d.dims[0] != static_cast<std::size_t>(2 * g))
    throw InvalidInput("surface relation needs 2g degree-1 generators");
  if (d.level < 2) return d;
  const std::size_t n = d.dim();
  QVector omega(n, mpq_class(0));
  for (int i = 0; i < g; ++i)
    add_scaled(omega, 1, d.bracket(d.basis_vector(static_cast<std::size_t>(i)), d.basis_vector(static_cast<std::size_t>(g + i))));

  // I_2 = <ω>, I_k = [I_{k-1}, level 1].
  std::vector<QVector> span{omega};
  std::vector<QVector> layer{omega};
  for (int lvl = 3; lvl <= d.level; ++lvl) {
    std::vector<QVector> next;
    for (const auto& v : layer)
      for (std::size_t a = 0; a < d.dims[0]; ++a) next.push_back(d.bracket(v, d.basis_vector(a)));
    span.insert(span.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  const Reducer ideal(span, n);
  if (!ideal.contains(apply_sparse(d.Phi, omega)))
    throw InvalidInput("ideal generated by omega = sum [a_i, b_i] is not Phi-stable: Phi(omega) = " +
                       vec_string(apply_sparse(d.Phi, omega)));
  if (!ideal.contains(apply_sparse(d.N, omega)))
    throw InvalidInput("ideal generated by omega = sum [a_i, b_i] is not N-stable: N(omega) = " +
                       vec_string(apply_sparse(d.N, omega)));

  std::vector<bool> pivot(n, false);
  for (auto p : ideal.echelon.pivots) pivot[p] = true;
  std::vector<std::size_t> keep;
  std::vector<std::size_t> dims(d.dims.size(), 0);
  for (std::size_t i = 0; i < n; ++i)
    if (!pivot[i]) {
      keep.push_back(i);
      ++dims[static_cast<std::size_t>(d.level_of(i) - 1)];
    }
  auto project = [&](const QVector& v) {
    const QVector r = ideal.reduce(v);
    QVector out(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) out[a] = r[keep[a]];
    return out;
  };

  NilpotentLieData out = make_lie_data(dims, d.q);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    out.labels[a] = d.labels[keep[a]];
    set_column(out.Phi, a, project(column(d.Phi, keep[a])));
    set_column(out.N, a, project(column(d.N, keep[a])));
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (!d.table[keep[a]][keep[b]].empty())
        out.table[a][b] = to_sparse(project(d.bracket(d.basis_vector(keep[a]), d.basis_vector(keep[b]))));
  }
  require_valid(out);
  return out;
}

NilpotentLieData lcs_quotient(const NilpotentLieData& d, int n) {
  require_valid(d);
  if (n < 2 || n > d.level + 1)
    throw InvalidInput("lcs quotient index must lie in 2.." + std::to_string(d.level + 1));
  const std::vector<std::size_t> dims(d.dims.begin(), d.dims.begin() + (n - 1));
  NilpotentLieData out = make_lie_data(dims, d.q);
  const std::size_t m = out.dim();
  for (std::size_t i = 0; i < m; ++i) {
    out.labels[i] = d.labels[i];
    for (std::size_t j = 0; j < m; ++j) {
      out.Phi(i, j) = d.Phi(i, j);
      out.N(i, j) = d.N(i, j);
      for (const auto& [k, c] : d.table[i][j])
        if (k < m) out.table[i][j].emplace_back(k, c);
    }
  }
  return out;
}

PhiNModule abelianization(const NilpotentLieData& d) {
  require_valid(d);
  const std::size_t m = d.dims[0];
  PhiNModule v{d.q, q_zero(m, m), q_zero(m, m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      v.Phi(i, j) = d.Phi(i, j);
      v.N(i, j) = d.N(i, j);
    }
  return v;
}

NilpotentLieData change_basis(const NilpotentLieData& d, const QMatrix& S) {
  require_valid(d);
  const std::size_t n = d.dim();
  if (S.rows() != n || S.cols() != n) throw Mismatch("basis change has the wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (S(i, j) != 0 && d.level_of(i) != d.level_of(j)) throw InvalidInput("basis change must preserve degrees");
  const QMatrix Sinv = inverse(S);
  NilpotentLieData out = make_lie_data(d.dims, d.q);
  for (std::size_t i = 0; i < n; ++i) out.labels[i] = "f" + std::to_string(i + 1);
  std::vector<QVector> cols;
  for (std::size_t j = 0; j < n; ++j) cols.push_back(column(S, j));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (d.level_of(a) + d.level_of(b) > d.level) continue;
      out.table[a][b] = to_sparse(apply_sparse(Sinv, d.bracket(cols[a], cols[b])));
    }
  out.Phi = multiply_sparse(multiply_sparse(Sinv, d.Phi), S);
  out.N = multiply_sparse(multiply_sparse(Sinv, d.N), S);
  require_valid(out);
  return out;
}

ReductionVerdict good_reduction_verdict(const NilpotentLieData& d) {
  require_valid(d);
  if (d.level < 3) throw InvalidInput("verdict needs levels 1..3 (level >= 3)");
  const NilpotentLieData quotient = lcs_quotient(d, 4);
  ReductionVerdict v;
  v.level4N = quotient.N;
  v.good = is_zero(quotient.N);
  v.caveats.push_back("criterion: N = 0 on the level-4 lower central series quotient (levels 1..3)");
  if (!v.good && is_zero(abelianization(d).N))
    v.caveats.push_back("N vanishes on the abelianization; the obstruction sits in degree >= 2");
  return v;
}

EulerOracle default_euler_oracle(int g) {
  return [g](int, long rank) { return 2 + rank * (2L * g - 2); };
}

EulerOracle hall_euler_oracle(int g) {
  return [g](int n, long rank) {
    // c_k: coefficients of 1 / (1 - 2g s + s^2); h2(U_n^∨) = c_{n-1}.
    std::vector<long> c{1, 2L * g};
    while (static_cast<int>(c.size()) < n) c.push_back(2L * g * c.back() - c[c.size() - 2]);
    return 1 + c[static_cast<std::size_t>(n - 1)] + rank * (2L * g - 2);
  };
}

std::vector<long> universal_rank_recursion(int g, int L, const EulerOracle& oracle) {
  if (g < 1) throw InvalidInput("genus must be at least 1");
  if (L < 1 || L > kMaxLevel) throw InvalidInput("level must be between 1 and " + std::to_string(kMaxLevel));
  std::vector<long> ranks{1};
  for (int n = 1; n < L; ++n) ranks.push_back(ranks.back() + oracle(n, ranks.back()));
  return ranks;
}

std::vector<long> hall_model_ranks(int g, int L) {
  if (g < 1) throw InvalidInput("genus must be at least 1");
  if (L < 1 || L > kMaxLevel) throw InvalidInput("level must be between 1 and " + std::to_string(kMaxLevel));
  if (L == 1) return {1};
  const int levels = L - 1;
  const std::size_t gens = static_cast<std::size_t>(2 * g);
  const NilpotentLieData free_data = free_nilpotent(PhiNModule{2, q_identity(gens), q_zero(gens, gens)}, levels);
  const NilpotentLieData surface = impose_surface_relation(free_data, g);
  // PBW: Π_k (1 - s^k)^{-d_k}, truncated below s^L.
  std::vector<long> series(static_cast<std::size_t>(L), 0);
  series[0] = 1;
  for (int k = 1; k <= levels; ++k)
    for (std::size_t copy = 0; copy < surface.dims[static_cast<std::size_t>(k - 1)]; ++copy)
      for (int e = k; e < L; ++e) series[static_cast<std::size_t>(e)] += series[static_cast<std::size_t>(e - k)];
  std::vector<long> ranks;
  long total = 0;
  for (int n = 0; n < L; ++n) {
    total += series[static_cast<std::size_t>(n)];
    ranks.push_back(total);
  }
  return ranks;
}

}  // namespace robba
