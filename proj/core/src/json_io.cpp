#include "robba/json_io.hpp"

#include <climits>

namespace robba::json {

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(where + ": missing field '" + key + "'");
  return *it;
}

long as_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InvalidInput(where + ": expected an integer");
  return j.get<long>();
}

int as_int(const json& j, const std::string& where) {
  const long v = as_long(j, where);
  if (v < INT_MIN || v > INT_MAX) throw InvalidInput(where + ": integer out of range");
  return static_cast<int>(v);
}

mpz_class parse_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput(where + ": malformed integer string");
    return z;
  }
  throw InvalidInput(where + ": expected an integer or an integer string");
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array");
  return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

json dimension(const Dimension& d) {
  if (d.window_limited) return json{{"value", d.value}, {"status", "WINDOW-LIMITED"}};
  return json{{"value", d.value}, {"status", "DETERMINED"}};
}

json vectors(const std::vector<QVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (const auto& x : v) row.push_back(rational(x));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json rational(const mpq_class& x) {
  if (x.get_den() == 1) return integer(x.get_num());
  return x.get_str();
}

mpq_class parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long>())));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    mpz_class num, den = 1;
    if (num.set_str(s.substr(0, slash), 10) != 0 ||
        (slash != std::string::npos && den.set_str(s.substr(slash + 1), 10) != 0))
      throw InvalidInput(where + ": malformed rational '" + s + "'");
    if (den == 0) throw InvalidInput(where + ": zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  throw InvalidInput(where + ": expected an integer or a rational string \"a/b\"");
}

json to_json(const TruncatedSeries& s) {
  json coeffs = json::array();
  for (int k = s.lo(); k <= s.hi(); ++k) {
    const PAdicScalar c = s.coeff(k);
    if (c.is_exact_zero()) continue;
    coeffs.push_back(json::array({k, integer(c.value().get_num()), integer(c.value().get_den()),
                                  c.is_exact() ? -1 : c.precision()}));
  }
  return json{{"p", s.prime()}, {"ringTag", to_string(s.tag())}, {"lo", s.lo()}, {"hi", s.hi()}, {"coeffs", coeffs}};
}

TruncatedSeries series_from_json(const json& j, const std::string& where) {
  const int p = as_int(field(j, "p", where), where + ".p");
  if (p < 2) throw InvalidInput(where + ".p: prime must be at least 2");
  RingTag tag;
  try {
    tag = ring_tag_from_string(field(j, "ringTag", where).get<std::string>());
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(where + ".ringTag: expected a string");
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ".ringTag: " + e.what());
  }
  const int lo = as_int(field(j, "lo", where), where + ".lo");
  const int hi = as_int(field(j, "hi", where), where + ".hi");
  if (hi < lo - 1) throw InvalidInput(where + ": hi must be at least lo - 1");
  if (static_cast<long>(hi) - lo > 1000000) throw InvalidInput(where + ": window too large");
  std::vector<PAdicScalar> cs(static_cast<std::size_t>(hi - lo + 1), PAdicScalar::zero(p));
  const json& list = array(field(j, "coeffs", where), where + ".coeffs");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = at(where + ".coeffs", i);
    const json& c = list[i];
    if (!c.is_array() || c.size() != 4) throw InvalidInput(w + ": expected [exponent, numerator, denominator, precision]");
    const int k = as_int(c[0], w + "[0]");
    if (k < lo || k > hi) throw InvalidInput(w + ": exponent outside the window");
    const mpz_class num = parse_integer(c[1], w + "[1]");
    const mpz_class den = parse_integer(c[2], w + "[2]");
    if (den == 0) throw InvalidInput(w + ": zero denominator");
    const int prec = as_int(c[3], w + "[3]");
    if (prec < -1) throw InvalidInput(w + ": precision must be -1 (exact) or >= 0");
    mpq_class value(num, den);
    value.canonicalize();
    try {
      cs[static_cast<std::size_t>(k - lo)] = PAdicScalar(p, value, prec == -1 ? kExact : prec);
    } catch (const Error& e) {
      throw InvalidInput(w + ": " + e.what());
    }
  }
  try {
    return TruncatedSeries(p, tag, lo, hi, std::move(cs));
  } catch (const Error& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

json to_json(const FrobeniusLift& f) { return json{{"q", f.q()}, {"u", to_json(f.u())}}; }

FrobeniusLift frobenius_from_json(const json& j, const std::string& where) {
  const int q = as_int(field(j, "q", where), where + ".q");
  TruncatedSeries u = series_from_json(field(j, "u", where), where + ".u");
  try {
    return FrobeniusLift(q, std::move(u));
  } catch (const Error& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

json to_json(const SeriesMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

SeriesMatrix series_matrix_from_json(const json& j, const std::string& where) {
  array(j, where);
  std::vector<std::vector<TruncatedSeries>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = array(j[i], at(where, i));
    rows.emplace_back();
    for (std::size_t k = 0; k < row.size(); ++k) rows.back().push_back(series_from_json(row[k], at(at(where, i), k)));
  }
  try {
    return SeriesMatrix::from_rows(rows);
  } catch (const Error& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

json to_json(const QMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const ScalarMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const auto& c = m(i, k);
      row.push_back(json{{"value", rational(c.value())}, {"precision", c.is_exact() ? -1 : c.precision()}});
    }
    out.push_back(std::move(row));
  }
  return out;
}

QMatrix rational_matrix_from_json(const json& j, const std::string& where) {
  array(j, where);
  std::vector<std::vector<mpq_class>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& row = array(j[i], at(where, i));
    rows.emplace_back();
    for (std::size_t k = 0; k < row.size(); ++k) rows.back().push_back(parse_rational(row[k], at(at(where, i), k)));
  }
  try {
    return QMatrix::from_rows(rows);
  } catch (const Error& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

json to_json(const PhiNablaModule& m) {
  json j{{"rank", m.rank()},       {"ring", to_string(m.ring)}, {"frob", to_json(m.frob)}, {"G", to_json(m.G)},
         {"A", to_json(m.A)},      {"log", false},              {"nonsingular", m.nonsingular},
         {"regular", m.regular}};
  if (m.flag_basis) j["flagBasis"] = to_json(*m.flag_basis);
  return j;
}

json to_json(const LogPhiNablaModule& m) {
  json j{{"rank", m.rank()}, {"ring", "S_K"}, {"frob", to_json(m.frob)}, {"G", to_json(m.Glog)}, {"A", to_json(m.A)},
         {"log", true}};
  if (m.flag_basis) j["flagBasis"] = to_json(*m.flag_basis);
  return j;
}

namespace {

void check_rank(const json& j, const SeriesMatrix& g, const SeriesMatrix& a) {
  const long r = as_long(field(j, "rank", "module"), "module.rank");
  if (r < 1 || static_cast<std::size_t>(r) != g.rows() || !g.square() || !a.square() || a.rows() != g.rows())
    throw InvalidInput("module: G and A must be rank x rank with rank = " + std::to_string(r));
}

std::optional<SeriesMatrix> flag_from_json(const json& j) {
  if (!j.contains("flagBasis") || j["flagBasis"].is_null()) return std::nullopt;
  return series_matrix_from_json(j["flagBasis"], "module.flagBasis");
}

bool flag(const json& j, const char* key) {
  if (!j.contains(key)) return false;
  if (!j[key].is_boolean()) throw InvalidInput(std::string("module.") + key + ": expected a boolean");
  return j[key].get<bool>();
}

}  // namespace

PhiNablaModule module_from_json(const json& j) {
  if (flag(j, "log")) throw InvalidInput("module: log module supplied where a (phi,nabla)-module is expected");
  BaseRing ring;
  try {
    ring = base_ring_from_string(field(j, "ring", "module").get<std::string>());
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput("module.ring: expected a string");
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("module.ring: ") + e.what());
  }
  PhiNablaModule m{ring,
                   series_matrix_from_json(field(j, "G", "module"), "module.G"),
                   series_matrix_from_json(field(j, "A", "module"), "module.A"),
                   frobenius_from_json(field(j, "frob", "module"), "module.frob"),
                   flag_from_json(j),
                   flag(j, "nonsingular"),
                   flag(j, "regular")};
  check_rank(j, m.G, m.A);
  return m;
}

LogPhiNablaModule log_module_from_json(const json& j) {
  if (!flag(j, "log")) throw InvalidInput("module: expected a log module (\"log\": true)");
  if (j.contains("ring") && j["ring"] != "S_K") throw InvalidInput("module.ring: log modules live over S_K");
  LogPhiNablaModule m{series_matrix_from_json(field(j, "G", "module"), "module.G"),
                      series_matrix_from_json(field(j, "A", "module"), "module.A"),
                      frobenius_from_json(field(j, "frob", "module"), "module.frob"), flag_from_json(j)};
  check_rank(j, m.Glog, m.A);
  return m;
}

json to_json(const PhiNModule& v) {
  return json{{"dim", v.dim()}, {"q", v.q}, {"Phi", to_json(v.Phi)}, {"N", to_json(v.N)}};
}

PhiNModule phin_from_json(const json& j) {
  PhiNModule v{as_long(field(j, "q", "phiN"), "phiN.q"), rational_matrix_from_json(field(j, "Phi", "phiN"), "phiN.Phi"),
               rational_matrix_from_json(field(j, "N", "phiN"), "phiN.N")};
  const long dim = as_long(field(j, "dim", "phiN"), "phiN.dim");
  if (dim < 0 || static_cast<std::size_t>(dim) != v.Phi.rows() || v.Phi.rows() != v.Phi.cols() ||
      v.N.rows() != v.Phi.rows() || v.N.cols() != v.Phi.rows())
    throw InvalidInput("phiN: Phi and N must be dim x dim with dim = " + std::to_string(dim));
  return v;
}

json to_json(const NilpotentLieData& d) {
  json brackets = json::array();
  for (std::size_t i = 0; i < d.table.size(); ++i)
    for (std::size_t k = 0; k < d.table[i].size(); ++k)
      for (const auto& [t, c] : d.table[i][k]) brackets.push_back(json::array({i, k, t, rational(c)}));
  return json{{"level", d.level}, {"dims", d.dims},        {"labels", d.labels}, {"brackets", brackets},
              {"Phi", to_json(d.Phi)}, {"N", to_json(d.N)}, {"q", d.q}};
}

NilpotentLieData lie_from_json(const json& j) {
  const int level = as_int(field(j, "level", "lie"), "lie.level");
  if (level < 1 || level > kMaxLevel) throw InvalidInput("lie.level: must lie in 1..4");
  const json& dims_j = array(field(j, "dims", "lie"), "lie.dims");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dims_j.size(); ++i) {
    const long d = as_long(dims_j[i], at("lie.dims", i));
    if (d < 0 || d > 100000) throw InvalidInput(at("lie.dims", i) + ": out of range");
    dims.push_back(static_cast<std::size_t>(d));
  }
  if (dims.size() != static_cast<std::size_t>(level)) throw InvalidInput("lie.dims: need one entry per level");
  NilpotentLieData d = make_lie_data(dims, as_long(field(j, "q", "lie"), "lie.q"));
  const std::size_t n = d.dim();
  if (j.contains("labels")) {
    const json& labels = array(j["labels"], "lie.labels");
    if (labels.size() != n) throw InvalidInput("lie.labels: need one label per basis vector");
    for (std::size_t i = 0; i < n; ++i) {
      if (!labels[i].is_string()) throw InvalidInput(at("lie.labels", i) + ": expected a string");
      d.labels[i] = labels[i].get<std::string>();
    }
  }
  const json& brackets = array(field(j, "brackets", "lie"), "lie.brackets");
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    const std::string w = at("lie.brackets", b);
    const json& e = brackets[b];
    if (!e.is_array() || e.size() != 4) throw InvalidInput(w + ": expected [i, j, k, coefficient]");
    const long i = as_long(e[0], w + "[0]"), k = as_long(e[1], w + "[1]"), t = as_long(e[2], w + "[2]");
    for (long x : {i, k, t})
      if (x < 0 || static_cast<std::size_t>(x) >= n) throw InvalidInput(w + ": index out of range");
    const mpq_class c = parse_rational(e[3], w + "[3]");
    if (c != 0)
      d.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].emplace_back(static_cast<std::size_t>(t), c);
  }
  for (auto& row : d.table)
    for (auto& entry : row) std::sort(entry.begin(), entry.end());
  d.Phi = rational_matrix_from_json(field(j, "Phi", "lie"), "lie.Phi");
  d.N = rational_matrix_from_json(field(j, "N", "lie"), "lie.N");
  if (d.Phi.rows() != n || d.Phi.cols() != n || d.N.rows() != n || d.N.cols() != n)
    throw InvalidInput("lie: Phi and N must be " + std::to_string(n) + " x " + std::to_string(n));
  return d;
}

json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return json{{"ok", r.ok()}, {"checks", checks}};
}

json to_json(const CohomologyReport& r) {
  json classes = json::array();
  for (const auto& [coord, k] : r.h1_classes) classes.push_back(json{{"coordinate", coord}, {"exponent", k}});
  json j{{"regime", r.regime == Regime::Series ? "SERIES" : "FINITE"},
         {"h0F", dimension(r.h0F)},
         {"h1F", dimension(r.h1F)},
         {"h2F", dimension(r.h2F)},
         {"h0dR", r.h0dR},
         {"h1dR", r.h1dR},
         {"Phi0", to_json(r.phi0)},
         {"Phi1", to_json(r.phi1)},
         {"h0Representatives", vectors(r.h0_representatives)},
         {"h2Representatives", vectors(r.h2_representatives)},
         {"h1Classes", classes},
         {"precisionNote", r.precision_note},
         {"caveats", r.caveats}};
  if (r.regime == Regime::Series) j["window"] = json::array({r.window_lo, r.window_hi});
  return j;
}

json to_json(const ReductionVerdict& v) {
  return json{{"good", v.good}, {"level4N", to_json(v.level4N)}, {"caveats", v.caveats}};
}

json to_json(const NonsingularVerdict& v) {
  json j{{"nonsingular", v.nonsingular}, {"caveats", v.caveats}};
  if (v.module) j["witness"] = json{{"module", to_json(*v.module)}};
  if (v.residue) j["witness"] = json{{"N", to_json(*v.residue)}};
  return j;
}

Kind detect_kind(const json& j) {
  if (!j.is_object()) throw InvalidInput("input: expected a JSON object");
  if (j.contains("brackets")) return Kind::Lie;
  if (j.contains("G")) {
    if (j.contains("log") && j["log"].is_boolean() && j["log"].get<bool>()) return Kind::LogModule;
    return Kind::Module;
  }
  if (j.contains("Phi") && j.contains("N")) return Kind::PhiN;
  throw InvalidInput("input: cannot tell the schema (expected a module, a (phi,N)-module or Lie data)");
}

}  // namespace robba::json
