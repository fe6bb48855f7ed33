#include "omega/tools/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace omega::io {

namespace {

const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad field \"") + key + "\": " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), ErrorCode::ParseError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Rational coeff_from_json(const json& c) {
  if (c.is_string()) return parse_rational(c.get<std::string>());
  if (c.is_number_integer()) return Rational(c.get<long>());
  if (c.is_number()) return rational_from_double(c.get<double>());
  fail(ErrorCode::ParseError, "coefficient must be a string or a number");
}

Exponent exps_from_json(const json& j, const std::vector<unsigned>& sites) {
  require(j.is_array() && j.size() == sites.size(), ErrorCode::ParseError, "one exponent vector per site expected");
  Exponent e;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    require(j[i].is_array() && j[i].size() == sites[i], ErrorCode::ParseError, "exponent vector has the wrong length");
    for (const auto& x : j[i]) {
      require(x.is_number_unsigned() || (x.is_number_integer() && x.get<long>() >= 0), ErrorCode::ParseError,
              "exponents must be nonnegative integers");
      e.push_back(x.get<std::uint32_t>());
    }
  }
  return e;
}

json exps_to_json(const Exponent& e, const std::vector<unsigned>& sites) {
  json out = json::array();
  std::size_t off = 0;
  for (unsigned s : sites) {
    json block = json::array();
    for (unsigned v = 0; v < s; ++v) block.push_back(e[off + v]);
    out.push_back(block);
    off += s;
  }
  return out;
}

std::vector<unsigned> sites_of(const json& j, const std::vector<unsigned>* fallback) {
  if (j.contains("sites")) return get<std::vector<unsigned>>(j, "sites");
  require(fallback != nullptr, ErrorCode::ParseError, "missing field \"sites\"");
  return *fallback;
}

Matrix matrix_from_json(const json& j, long rows, long cols) {
  require(j.is_array() && j.size() == static_cast<std::size_t>(rows * cols), ErrorCode::DimensionMismatch,
          "matrix entry count does not match its shape");
  Matrix m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m(r, c) = j[static_cast<std::size_t>(r * cols + c)].get<double>();
  return m;
}

SymmetryAction action_or_trivial(const WeightedComplex& c, const json& j, std::size_t max_group) {
  if (j.contains("action")) return action_from_json(c, j.at("action"), max_group);
  return SymmetryAction::trivial(c);
}

std::vector<unsigned> site_vars_of(const json& j, const WeightedComplex& c) {
  if (j.contains("site_vars")) {
    auto v = get<std::vector<unsigned>>(j, "site_vars");
    require(v.size() == c.vertex_count(), ErrorCode::DimensionMismatch, "one variable count per vertex expected");
    return v;
  }
  return std::vector<unsigned>(c.vertex_count(), 1);
}

}  // namespace

json read_file(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

std::string file_digest(const std::string& path) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : slurp(path)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

WeightedComplex complex_from_json(const json& j) {
  int n = get<int>(j, "n");
  std::vector<Facet> facets;
  for (const auto& f : field(j, "facets")) {
    Facet facet;
    facet.vertices = get<std::vector<int>>(f, "vertices");
    facet.weight = f.contains("weight") ? get<int>(f, "weight") : 1;
    facets.push_back(std::move(facet));
  }
  return WeightedComplex::build(std::move(facets), n + 1);
}

json to_json(const WeightedComplex& c) {
  json facets = json::array();
  for (const auto& f : c.facets()) facets.push_back({{"vertices", f.vertices}, {"weight", f.weight}});
  return {{"n", c.n()}, {"facets", facets}};
}

SymmetryAction action_from_json(const WeightedComplex& c, const json& j, std::size_t max_group) {
  std::vector<Generator> gens;
  for (const auto& g : field(j, "generators"))
    gens.push_back({get<std::vector<int>>(g, "vertex_perm"), get<std::vector<int>>(g, "multifacet_perm")});
  return SymmetryAction::build(c, std::move(gens), max_group);
}

json to_json(const SymmetryAction& a) {
  json gens = json::array();
  for (const auto& g : a.generators())
    gens.push_back({{"vertex_perm", g.vertex_perm}, {"multifacet_perm", g.multifacet_perm}});
  return {{"generators", gens}};
}

ScaledScalar scale_from_json(const json& j) {
  Rational r = coeff_from_json(field(j, "r"));
  unsigned k = j.contains("k") ? get<unsigned>(j, "k") : 1;
  require(sgn(r) > 0 && k >= 1, ErrorCode::ParseError, "scale needs r > 0 and k >= 1");
  return ScaledScalar(r, k);
}

json to_json(const ScaledScalar& s) { return {{"r", to_string(s.radicand())}, {"k", s.index()}}; }

Polynomial polynomial_from_json(const json& j, const std::vector<unsigned>* default_sites) {
  auto sites = sites_of(j, default_sites);
  Polynomial p(sites);
  for (const auto& t : field(j, "terms")) p.add_term(exps_from_json(field(t, "exps"), sites), coeff_from_json(field(t, "coeff")));
  return p;
}

FloatPolynomial float_polynomial_from_json(const json& j) {
  auto sites = sites_of(j, nullptr);
  FloatPolynomial p(sites);
  for (const auto& t : field(j, "terms")) {
    const auto& c = field(t, "coeff");
    double v = c.is_string() ? to_double(parse_rational(c.get<std::string>())) : c.get<double>();
    p.add_term(exps_from_json(field(t, "exps"), sites), v);
  }
  return p;
}

json to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exps", exps_to_json(e, p.sites())}, {"coeff", to_string(c)}});
  return {{"sites", p.sites()}, {"mode", "rational"}, {"terms", terms}};
}

json to_json(const FloatPolynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"exps", exps_to_json(e, p.sites())}, {"coeff", c}});
  return {{"sites", p.sites()}, {"mode", "float"}, {"terms", terms}};
}

RadicalPolynomial radical_from_json(const json& j, const std::vector<unsigned>& sites) {
  if (j.contains("groups")) {
    RadicalPolynomial out;
    for (const auto& g : j.at("groups"))
      out.add(g.contains("scale") ? scale_from_json(g.at("scale")) : ScaledScalar(),
              polynomial_from_json(field(g, "poly"), &sites));
    return out;
  }
  Polynomial p = polynomial_from_json(j, &sites);
  require(p.sites() == sites, ErrorCode::IncompatibleBlockSizes, "polynomial blocks do not match the site variables");
  return RadicalPolynomial(j.contains("scale") ? scale_from_json(j.at("scale")) : ScaledScalar(), p);
}

json to_json(const RadicalPolynomial& p, const std::vector<unsigned>& sites) {
  if (p.is_zero()) return to_json(Polynomial(sites));
  if (auto q = p.rational_value()) return to_json(*q);
  json groups = json::array();
  for (const auto& g : p.groups()) groups.push_back({{"scale", to_json(g.radical)}, {"poly", to_json(g.value)}});
  return {{"groups", groups}};
}

DecompositionFile decomposition_from_json(const json& j, std::size_t max_group) {
  WeightedComplex c = complex_from_json(field(j, "complex"));
  SymmetryAction a = action_or_trivial(c, j, max_group);
  auto vars = site_vars_of(j, c);
  ScaledScalar s = j.contains("scale") ? scale_from_json(j.at("scale")) : ScaledScalar();
  DecompositionFile out{OmegaGDecomposition(a, get<std::size_t>(j, "index_size"), vars, s), std::nullopt};
  for (const auto& l : field(j, "locals")) {
    auto site = get<std::size_t>(l, "site");
    require(site < c.vertex_count(), ErrorCode::VertexOutOfRange, "local site out of range");
    auto one_based = get<std::vector<long>>(l, "beta");
    Assignment beta;
    for (long v : one_based) {
      require(v >= 1 && static_cast<std::size_t>(v) <= out.dec.index_size(), ErrorCode::ParseError,
              "beta values must lie in 1..index_size");
      beta.push_back(static_cast<std::uint32_t>(v - 1));
    }
    std::vector<unsigned> local_sites{vars[site]};
    RadicalPolynomial value = radical_from_json(field(l, "poly"), local_sites);
    if (l.contains("scale")) value = value.scaled(scale_from_json(l.at("scale")));
    out.dec.add_local(site, beta, value);
  }
  if (j.contains("target")) out.target = polynomial_from_json(j.at("target"), &vars);
  return out;
}

json to_json(const OmegaGDecomposition& d, const std::optional<Polynomial>& target) {
  json locals = json::array();
  for (std::size_t i = 0; i < d.complex().vertex_count(); ++i) {
    std::vector<unsigned> sites{d.site_vars()[i]};
    for (const auto& [beta, value] : d.locals(i)) {
      std::vector<std::uint32_t> one_based;
      for (auto v : beta) one_based.push_back(v + 1);
      locals.push_back({{"site", i}, {"beta", one_based}, {"poly", to_json(value, sites)}});
    }
  }
  json out = {{"complex", to_json(d.complex())},
              {"action", to_json(d.action())},
              {"site_vars", d.site_vars()},
              {"index_size", d.index_size()},
              {"scale", to_json(d.scale())},
              {"locals", locals}};
  if (target) out["target"] = to_json(*target);
  return out;
}

TermsFile terms_from_json(const json& j, std::size_t max_group) {
  WeightedComplex c = complex_from_json(field(j, "complex"));
  TermsFile out{action_or_trivial(c, j, max_group), site_vars_of(j, c), {}};
  for (const auto& t : field(j, "terms")) {
    require(t.is_array() && t.size() == c.vertex_count(), ErrorCode::DimensionMismatch, "one factor per site expected");
    ElementaryTerm term;
    for (std::size_t i = 0; i < t.size(); ++i) term.push_back(radical_from_json(t[i], {out.site_vars[i]}));
    out.terms.push_back(std::move(term));
  }
  return out;
}

GramRepresentation gram_from_json(const json& j) {
  GramRepresentation g{get<unsigned>(j, "n"), get<unsigned>(j, "m"), get<unsigned>(j, "d"), {}};
  long dim = static_cast<long>(g.dim());
  g.entries = matrix_from_json(field(j, "entries"), dim, dim);
  g.validate();
  return g;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

json to_json(const GramRepresentation& g) {
  return {{"n", g.n}, {"m", g.m}, {"d", g.d}, {"entries", matrix_to_json(g.entries)}};
}

RationalTensor tensor_from_json(const json& j) {
  RationalTensor t(get<std::vector<std::size_t>>(j, "dims"));
  const auto& e = field(j, "entries");
  require(e.is_array() && e.size() == t.size(), ErrorCode::DimensionMismatch, "tensor entry count does not match dims");
  for (std::size_t k = 0; k < t.size(); ++k) t.entries[k] = coeff_from_json(e[k]);
  return t;
}

json to_json(const RationalTensor& t) {
  json e = json::array();
  for (const auto& v : t.entries) e.push_back(to_string(v));
  return {{"dims", t.dims}, {"entries", e}};
}

LocalFamily family_from_json(const json& j) {
  LocalFamily f;
  f.D = get<std::size_t>(j, "D");
  f.m = get<std::size_t>(j, "m");
  for (const auto& row : field(j, "coeffs")) {
    std::vector<std::vector<Integer>> r;
    for (const auto& cell : row) {
      std::vector<Integer> c;
      for (const auto& v : cell) {
        if (v.is_string()) c.emplace_back(v.get<std::string>());
        else {
          require(v.is_number_integer(), ErrorCode::ParseError, "family coefficients must be integers");
          c.emplace_back(v.get<long>());
        }
      }
      r.push_back(std::move(c));
    }
    f.coeffs.push_back(std::move(r));
  }
  f.validate();
  return f;
}

json to_json(const LocalFamily& f) {
  json coeffs = json::array();
  for (const auto& row : f.coeffs) {
    json r = json::array();
    for (const auto& cell : row) {
      json c = json::array();
      for (const auto& v : cell) {
        if (v.fits_slong_p()) c.push_back(v.get_si());
        else c.push_back(v.get_str());
      }
      r.push_back(c);
    }
    coeffs.push_back(r);
  }
  return {{"D", f.D}, {"m", f.m}, {"coeffs", coeffs}};
}

WitnessFile witness_from_json(const json& j, std::size_t max_group) {
  SeparableGram g{get<unsigned>(j, "n"), get<unsigned>(j, "m"), get<unsigned>(j, "d"), {}, {}};
  const long D = static_cast<long>(local_monomial_basis(g.m, g.d).size());
  for (const auto& t : field(j, "terms")) {
    g.weights.push_back(get<double>(t, "weight"));
    std::vector<Matrix> fs;
    for (const auto& f : field(t, "factors")) fs.push_back(matrix_from_json(f, D, D));
    g.factors.push_back(std::move(fs));
  }
  g.validate();
  if (j.contains("complex")) {
    WeightedComplex c = complex_from_json(j.at("complex"));
    return {g, action_or_trivial(c, j, max_group)};
  }
  require(g.n == 1, ErrorCode::InvalidArgument, "witnesses with n != 1 must name a complex and an action");
  return {g, edge_swap(true)};
}

json to_json(const SeparableGram& g) {
  json terms = json::array();
  for (std::size_t t = 0; t < g.factors.size(); ++t) {
    json fs = json::array();
    for (const auto& f : g.factors[t]) fs.push_back(matrix_to_json(f));
    terms.push_back({{"weight", g.weights[t]}, {"factors", fs}});
  }
  return {{"n", g.n}, {"m", g.m}, {"d", g.d}, {"terms", terms}};
}

}  // namespace omega::io
