#include "omega/tools/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <iomanip>
#include <sstream>
#include <unistd.h>

#include "omega/approx.hpp"
#include "omega/familycheck.hpp"
#include "omega/parallel.hpp"
#include "omega/tensorbridge.hpp"
#include "omega/tools/cli.hpp"
#include "omega/tools/io.hpp"

namespace omega::acceptance {

namespace {

using Rng = std::mt19937_64;

// Single-variable local sum c_e t^e.
Polynomial lp(std::initializer_list<std::pair<unsigned, long>> terms) {
  Polynomial p(std::vector<unsigned>{1});
  for (const auto& [e, c] : terms) p.add_term({e}, Rational(c));
  return p;
}

RadicalPolynomial rp(const Polynomial& p, const ScaledScalar& s = {}) { return RadicalPolynomial(s, p); }

Polynomial two_site(std::initializer_list<std::pair<std::pair<unsigned, unsigned>, long>> terms) {
  Polynomial p(std::vector<unsigned>{1, 1});
  for (const auto& [e, c] : terms) p.add_term({e.first, e.second}, Rational(c));
  return p;
}

Polynomial double_edge_target() { return two_site({{{0, 0}, 4}, {{1, 1}, 8}, {{2, 0}, 1}, {{0, 2}, 1}, {{2, 2}, 4}}); }
Polynomial sum_of_two_squares() { return two_site({{{2, 0}, 1}, {{0, 2}, 1}}); }

bool equals(const RadicalPolynomial& a, const Polynomial& b) { return a == RadicalPolynomial(b); }

Polynomial random_local(Rng& rng, unsigned m, unsigned max_degree = 2) {
  std::uniform_int_distribution<int> coeff(-3, 3), exp(0, static_cast<int>(max_degree)), count(1, 3);
  Polynomial p(std::vector<unsigned>{m});
  while (p.is_zero()) {
    int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
      Exponent e(m);
      for (auto& x : e) x = static_cast<std::uint32_t>(exp(rng));
      p.add_term(e, Rational(coeff(rng)));
    }
  }
  return p;
}

ElementaryTerm random_term(Rng& rng, const std::vector<unsigned>& vars) {
  ElementaryTerm t;
  for (unsigned m : vars) t.push_back(rp(random_local(rng, m)));
  return t;
}

// Terms g.t for every g: (g t)[g i] = t[i]; the sum is invariant.
std::vector<ElementaryTerm> orbit_close(const std::vector<ElementaryTerm>& base, const SymmetryAction& a) {
  std::vector<ElementaryTerm> out;
  for (const auto& t : base)
    for (std::size_t g = 0; g < a.order(); ++g) {
      ElementaryTerm moved(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) moved[static_cast<std::size_t>(a.act_vertex(g, static_cast<int>(i)))] = t[i];
      out.push_back(std::move(moved));
    }
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// The double-edge example with the copy-swapping C_2.
OmegaGDecomposition double_edge_example() {
  OmegaGDecomposition d(edge_swap(true), 2, {1, 1});
  std::map<Assignment, RadicalPolynomial> p;
  p[{0, 0}] = rp(lp({{0, 1}, {2, 0}}) * Rational(1, 2) + lp({{2, 2}}));
  p[{0, 1}] = rp(lp({{0, 1}}), ScaledScalar(Rational(15, 8), 2));
  p[{1, 0}] = p[{0, 1}];
  p[{1, 1}] = rp(lp({{1, 1}}), ScaledScalar(8, 2));
  for (const auto& [beta, v] : p) {
    d.add_local(0, beta, v);
    d.add_local(1, {beta[1], beta[0]}, v);
  }
  return d;
}

OmegaGDecomposition double_edge_minus_sign() {
  OmegaGDecomposition d(edge_swap(true), 2, {1, 1});
  d.add_local(0, {0, 1}, lp({{2, 1}}));
  d.add_local(0, {1, 0}, lp({{0, 1}}));
  d.add_local(1, {1, 0}, lp({{2, 1}}));
  d.add_local(1, {0, 1}, lp({{0, 1}}));
  return d;
}

// Sos witness on the double edge with index 3 whose members are
// sqrt2 (1 + xy) twice, x and y.
SosDecomposition double_edge_sos_witness() {
  ScaledScalar r4(2, 4), r2(2, 2), half_r2(Rational(1, 2), 2);
  using Entry = std::pair<std::pair<int, int>, RadicalPolynomial>;
  std::vector<std::vector<Entry>> q(2);
  q[0] = {{{0, 0}, rp(lp({{1, 1}}), r4)}, {{0, 1}, rp(lp({{0, 1}}), half_r2)}, {{1, 0}, rp(lp({{0, 1}}))}};
  q[1] = {{{1, 0}, rp(lp({{1, 1}}), r2)}, {{1, 1}, rp(lp({{1, 1}}), r4)}, {{2, 2}, rp(lp({{0, 1}}), r4)}};
  SosDecomposition d(edge_swap(true), 3, {2, 2}, {1, 1});
  for (std::size_t k = 0; k < 2; ++k)
    for (const auto& [ab, v] : q[k]) {
      auto a = static_cast<std::uint32_t>(ab.first), b = static_cast<std::uint32_t>(ab.second);
      d.add_local(0, k, {a, b}, v);
      d.add_local(1, k, {b, a}, v);
    }
  return d;
}

// Sos witness on the single edge with index 4 and the same members.
SosDecomposition single_edge_sos_witness() {
  ScaledScalar r4(2, 4), inv_r4(Rational(1, 2), 4);
  SosDecomposition d(edge_swap(false), 4, {2, 2}, {1, 1});
  for (std::size_t site = 0; site < 2; ++site) {
    d.add_local(site, 0, {0}, rp(lp({{0, 1}}), r4));
    d.add_local(site, 0, {1}, rp(lp({{1, 1}}), r4));
    d.add_local(site, 1, {0}, rp(lp({{1, 1}}), inv_r4));
    d.add_local(site, 1, {2}, rp(lp({{0, 1}}), r4));
    d.add_local(site, 1, {3}, rp(lp({{1, 1}}), inv_r4));
  }
  return d;
}

// ---- criteria ----

void criterion1(Criterion& c) {
  auto d = double_edge_example();
  auto p = contract(d);
  bool exact = equals(p, double_edge_target());
  bool sym = check_symmetry(d);
  auto rank = bipartite_rank(double_edge_target());
  c.passed = exact && sym && rank == 3;
  c.detail = std::string("contraction ") + (exact ? "exact" : "differs") + ", symmetry " + (sym ? "ok" : "fails") +
             ", bipartite rank " + std::to_string(rank) + " (no rank-1 decomposition)";
}

void criterion2(Criterion& c) {
  const Polynomial target = sum_of_two_squares();
  ScaledScalar inv_sqrt2(Rational(1, 2), 2);
  OmegaGDecomposition q1(edge_swap(false), 1, {1, 1}), q2(edge_swap(false), 1, {1, 1});
  for (std::size_t i = 0; i < 2; ++i) {
    q1.add_local(i, {0}, rp(lp({{0, 1}, {2, 1}}), inv_sqrt2));
    q2.add_local(i, {0}, rp(lp({{0, 1}, {2, -1}}), inv_sqrt2));
  }
  bool diff_exact = equals(contract(q1) - contract(q2), target);
  bool diff_sym = check_symmetry(q1) && check_symmetry(q2);

  std::vector<ElementaryTerm> terms{{rp(lp({{2, 1}})), rp(lp({{0, 1}}))}, {rp(lp({{0, 1}})), rp(lp({{2, 1}}))}};
  auto blend = blending_difference(terms, edge_swap(false), {1, 1});
  bool blend_exact = equals(contract(blend.positive) - contract(blend.negative), target);

  auto delta = double_edge_minus_sign();
  bool delta_exact = equals(contract(delta), target);
  bool delta_sym = check_symmetry(delta);

  auto plain = from_elementary(terms, standard_complex(StandardComplex::DoubleEdge), {1, 1});
  bool elem_exact = equals(contract(plain), target);

  c.passed = diff_exact && diff_sym && blend_exact && delta_exact && delta_sym && elem_exact;
  c.detail = std::string("single-edge difference ") + (diff_exact && diff_sym ? "ok" : "fails") +
             ", generated blending difference " + (blend_exact ? "ok" : "fails") + ", double edge " +
             (delta_exact && delta_sym ? "ok" : "fails") + ", elementary " + (elem_exact ? "ok" : "fails");
}

void criterion3(Criterion& c, std::uint64_t seed) {
  struct Setting {
    SymmetryAction action;
    std::vector<unsigned> vars;
  };
  std::vector<Setting> settings;
  for (int n : {3, 4, 5}) settings.push_back({cyclic_rotation(n), std::vector<unsigned>(static_cast<std::size_t>(n), 1)});
  settings.push_back({free_refinement(full_symmetric(1)), {2, 2}});
  settings.push_back({free_refinement(cyclic_on_simplex(2)), {1, 1, 1}});
  settings.push_back({free_refinement(full_symmetric(2)), {1, 1, 1}});

  const std::size_t instances = 50;
  std::vector<char> ok(instances, 0);
  parallel_for(instances, [&](std::size_t t) {
    Rng rng(derive_seed(seed, 300 + t));
    const auto& s = settings[t % settings.size()];
    std::size_t base = 1 + t % 2;
    std::vector<ElementaryTerm> raw;
    for (std::size_t j = 0; j < base; ++j) raw.push_back(random_term(rng, s.vars));
    auto terms = orbit_close(raw, s.action);
    auto p = elementary_sum(terms, s.vars);
    auto d = symmetrize_free(terms, s.action, s.vars);
    ok[t] = contract(d) == p && check_symmetry(d) && d.index_size() <= s.action.order() * terms.size();
  });
  auto passed = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  c.passed = passed == instances;
  c.detail = std::to_string(passed) + "/" + std::to_string(instances) +
             " exact reconstructions with symmetric locals and index <= |G| r";
}

void criterion4(Criterion& c, std::uint64_t seed) {
  const std::size_t instances = 20;
  std::vector<char> ok(instances, 0), empty_ok(instances, 0);
  parallel_for(instances, [&](std::size_t t) {
    int n = static_cast<int>(1 + t % 3);
    Rng rng(derive_seed(seed, 400 + t));
    auto a = full_symmetric(n);
    std::vector<unsigned> vars(static_cast<std::size_t>(n + 1), 1);
    auto terms = orbit_close({random_term(rng, vars)}, a);
    auto p = elementary_sum(terms, vars);
    auto b = blending_difference(terms, a, vars);
    ok[t] = contract(b.positive) - contract(b.negative) == p && check_symmetry(b.positive) &&
            check_symmetry(b.negative);
    empty_ok[t] = n % 2 == 1 || b.negative.empty();
  });
  auto passed = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  auto empties = static_cast<std::size_t>(std::count(empty_ok.begin(), empty_ok.end(), 1));
  c.passed = passed == instances && empties == instances;
  c.detail = std::to_string(passed) + "/" + std::to_string(instances) + " exact differences, " +
             std::to_string(empties) + "/" + std::to_string(instances) + " with empty negative part for even n";
}

Matrix random_invariant_gram(Rng& rng, unsigned d, const SymmetryAction& a) {
  GramRepresentation g{1, 1, d, {}};
  long dim = static_cast<long>(g.dim());
  std::normal_distribution<double> normal;
  Matrix b(dim, dim);
  for (long i = 0; i < b.size(); ++i) b.data()[i] = normal(rng);
  g.entries = b * b.transpose();
  Matrix avg = Matrix::Zero(dim, dim);
  for (std::size_t h = 0; h < a.order(); ++h) avg += act_gram(h, g, a);
  return avg / static_cast<double>(a.order());
}

struct SosCheck {
  double sos_error = 0.0, invariance = 0.0, member_error = 0.0;
  bool symmetric = true;
};

SosCheck sos_pipeline(const GramRepresentation& g, const SymmetryAction& a) {
  SosCheck out;
  auto fam = invariant_sos_family(g, a);
  out.sos_error = max_coefficient_difference(sum_of_squares(fam), gram_map(g));
  out.invariance = family_invariance_defect(fam, a);
  auto refined = free_refinement(a);
  auto elem = elementary_family(psd_sqrt(g.entries), g.n, g.m, g.d);
  auto dec = family_symmetrize(elem, refined);
  out.symmetric = check_symmetry(dec);
  for (std::size_t k = 0; k < fam.members.size(); ++k) {
    auto q = to_float(contract_member(dec, fam.unflatten(k)), std::vector<unsigned>(g.n + 1, g.m));
    out.member_error = std::max(out.member_error, max_coefficient_difference(q, fam.members[k]));
  }
  return out;
}

void criterion5(Criterion& c, std::uint64_t seed) {
  auto a = edge_swap(false);
  const std::size_t instances = 20;
  double worst_sos = 0, worst_inv = 0, worst_member = 0;
  bool symmetric = true;
  for (std::size_t t = 0; t < instances; ++t) {
    Rng rng(derive_seed(seed, 500 + t));
    unsigned d = 1 + static_cast<unsigned>(t % 2);
    GramRepresentation g{1, 1, d, random_invariant_gram(rng, d, a)};
    auto r = sos_pipeline(g, a);
    worst_sos = std::max(worst_sos, r.sos_error);
    worst_inv = std::max(worst_inv, r.invariance);
    worst_member = std::max(worst_member, r.member_error);
    symmetric = symmetric && r.symmetric;
  }
  c.passed = worst_sos < 1e-9 && worst_inv < 1e-9 && worst_member < 1e-9 && symmetric;
  c.detail = "max sum-of-squares error " + fmt(worst_sos) + ", max invariance defect " + fmt(worst_inv) +
             ", max decomposed-member error " + fmt(worst_member) +
             (symmetric ? ", decompositions symmetric" : ", asymmetric decomposition");
}

void criterion6(Criterion& c, std::uint64_t seed) {
  bool all = true;
  std::string detail;
  for (std::size_t m : {4u, 8u, 12u}) {
    auto row = rank_separations(m, seed, 20);
    auto expected_lower = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(m))));
    bool ok = row.plain_rank == 3 && row.psd_identity_exact && row.psd_index == 2 && row.nn_lower == expected_lower;
    all = all && ok;
    detail += (detail.empty() ? "" : "; ") + std::string("m=") + std::to_string(m) + ": rank " +
              std::to_string(row.plain_rank) + ", psd index " + std::to_string(row.psd_index) +
              (row.psd_identity_exact ? " exact" : " inexact") + ", nn >= " + std::to_string(row.nn_lower) +
              ", nn <= " + std::to_string(row.nn_upper_heuristic) + " (heuristic)";
  }
  c.passed = all;
  c.detail = detail;
}

void criterion7(Criterion& c) {
  auto flip = factorizability_solve(double_edge_copy_flip(), 2);
  bool flip_ok = flip.feasible && flip.residual < 1e-10;
  for (std::size_t i = 0; i < flip.c.size(); ++i)
    for (const auto& [beta, v] : flip.c[i]) {
      double want = beta[0] == beta[1] ? 1.0 : 1.0 / std::sqrt(2.0);
      flip_ok = flip_ok && std::abs(v - want) < 1e-10;
    }
  struct Case {
    const char* name;
    SymmetryAction a;
    std::size_t index;
  };
  std::vector<Case> cases{{"double edge swap", edge_swap(true), 2},
                          {"single edge swap", edge_swap(false), 3},
                          {"circle(3) rotation", cyclic_rotation(3), 2},
                          {"circle(4) rotation", cyclic_rotation(4), 2},
                          {"simplex(2) rotation", cyclic_on_simplex(2), 2}};
  bool free_ok = true;
  double worst = 0.0;
  for (const auto& cs : cases) {
    require(is_vertex_action_free(cs.a), ErrorCode::VertexActionNotFree, cs.name);
    auto f = factorizability_solve(cs.a, cs.index);
    free_ok = free_ok && f.feasible;
    worst = std::max(worst, f.residual);
    for (const auto& site : f.c)
      for (const auto& [beta, v] : site) worst = std::max(worst, std::abs(v - 1.0));
  }
  free_ok = free_ok && worst < 1e-10;
  c.passed = flip_ok && free_ok;
  c.detail = std::string("copy flip: C in {1, 1/sqrt2} with residual ") + fmt(flip.residual) +
             (flip_ok ? "" : " (mismatch)") + "; " + std::to_string(cases.size()) +
             " free vertex actions: max |C - 1| or residual " + fmt(worst);
}

SeparableTerm random_sos_term(Rng& rng, const std::vector<unsigned>& vars) {
  SeparableTerm t;
  for (unsigned m : vars) {
    std::vector<RadicalPolynomial> squares{rp(random_local(rng, m, 1)), rp(random_local(rng, m, 1))};
    RadicalPolynomial f;
    for (const auto& s : squares) f += square(s);
    t.factors.push_back(f);
    t.squares.push_back(squares);
  }
  return t;
}

void criterion8(Criterion& c, std::uint64_t seed) {
  bool ok = true;
  std::string detail;
  // sos index I gives a plain index I^2
  std::size_t plain_checks = 0;
  for (const auto& w : {double_edge_sos_witness(), single_edge_sos_witness()}) {
    auto plain = sos_to_plain(w);
    bool good = check_symmetry(w) && plain.index_size() <= w.index_size() * w.index_size() &&
                equals(contract(plain), double_edge_target()) && equals(sum_of_squares(w), double_edge_target()) &&
                check_symmetry(plain);
    ok = ok && good;
    ++plain_checks;
  }
  auto a = edge_swap(false);
  for (std::size_t t = 0; t < 4; ++t) {
    Rng rng(derive_seed(seed, 800 + t));
    unsigned d = 1 + static_cast<unsigned>(t % 2);
    GramRepresentation g{1, 1, d, random_invariant_gram(rng, d, a)};
    auto elem = elementary_family(psd_sqrt(g.entries), 1, 1, d);
    auto w = family_symmetrize(elem, free_refinement(a));
    auto plain = sos_to_plain(w);
    double err = max_coefficient_difference(to_float(contract(plain), {1, 1}), to_float(sum_of_squares(w), {1, 1}));
    ok = ok && plain.index_size() <= w.index_size() * w.index_size() && err < 1e-9;
    ++plain_checks;
  }
  detail = std::to_string(plain_checks) + " sos witnesses give plain index <= I^2";

  struct Case {
    SymmetryAction a;
    std::vector<unsigned> vars;
  };
  std::vector<Case> cases{{edge_swap(true), {1, 1}}, {double_edge_copy_flip(), {1, 1}},
                          {cyclic_rotation(3), {1, 1, 1}}, {edge_swap(true), {2, 2}}};
  double worst = 0.0;
  std::size_t sep_checks = 0;
  for (std::size_t t = 0; t < cases.size(); ++t) {
    Rng rng(derive_seed(seed, 850 + t));
    std::vector<SeparableTerm> terms{random_sos_term(rng, cases[t].vars), random_sos_term(rng, cases[t].vars)};
    auto sep = separable_symmetrize(terms, cases[t].a, cases[t].vars, LocalCone::SumOfSquares, false);
    auto f = factorizability_solve(cases[t].a, sep.dec.index_size());
    if (!f.feasible) continue;
    auto sos = sep_to_sos(sep, f);
    double err = max_coefficient_difference(to_float(sum_of_squares(sos), cases[t].vars),
                                            to_float(contract(sep.dec), cases[t].vars));
    worst = std::max(worst, err);
    ok = ok && sos.index_size() <= sep.dec.index_size() && check_symmetry(sos) && err < 1e-9;
    ++sep_checks;
  }
  ok = ok && sep_checks == cases.size();
  c.passed = ok;
  c.detail = detail + "; " + std::to_string(sep_checks) + "/" + std::to_string(cases.size()) +
             " separable witnesses give sos index <= separable index, max contraction error " + fmt(worst);
}

void criterion9(Criterion& c, std::uint64_t seed) {
  auto a = edge_swap(true);
  const double eps = 0.5;
  const std::size_t trials = 20;
  std::vector<double> errors(trials, 1e9);
  std::vector<char> valid(trials, 0), verbatim_ok(trials, 0);
  parallel_for(trials, [&](std::size_t t) {
    auto w = random_invariant_witness(2, 1, 10, derive_seed(seed, 900 + t));
    auto res = approx_separable(w, a, eps, derive_seed(seed, 950 + t), std::nullopt, true);
    errors[t] = res.error;
    valid[t] = res.decomposition.dec.index_size() <= res.index_budget && check_symmetry(res.decomposition.dec);
    auto v = approx_separable(w, a, eps, derive_seed(seed, 950 + t));
    verbatim_ok[t] = v.verbatim && v.error < 1e-12;
  });
  std::size_t within = 0;
  for (std::size_t t = 0; t < trials; ++t)
    if (valid[t] && errors[t] < eps) ++within;
  bool verbatim = std::count(verbatim_ok.begin(), verbatim_ok.end(), 1) == static_cast<long>(trials);

  // error against sample count on fixed instances
  const std::vector<std::size_t> ks{100, 1000, 10000};
  const std::size_t instances = 3, repeats = 8;
  std::vector<double> mean(ks.size(), 0.0);
  std::vector<double> samples(ks.size() * instances * repeats);
  parallel_for(samples.size(), [&](std::size_t s) {
    std::size_t ki = s / (instances * repeats), inst = (s / repeats) % instances, rep = s % repeats;
    auto w = random_invariant_witness(2, 1, 10, derive_seed(seed, 970 + inst));
    samples[s] = approx_separable(w, a, eps, derive_seed(seed, 10000 + s + rep), ks[ki], true).error;
  });
  for (std::size_t s = 0; s < samples.size(); ++s) mean[s / (instances * repeats)] += samples[s] / (instances * repeats);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double x = std::log(static_cast<double>(ks[i])), y = std::log(mean[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double nk = static_cast<double>(ks.size());
  double slope = (nk * sxy - sx * sy) / (nk * sxx - sx * sx);
  bool slope_ok = std::abs(slope + 0.5) <= 0.1;
  double worst = *std::max_element(errors.begin(), errors.end());
  c.passed = within >= 19 && slope_ok && verbatim;
  c.detail = std::to_string(within) + "/20 sampled trials within eps = 0.5 (budget " +
             std::to_string(maurey_samples(eps) * a.order()) + ", worst error " + fmt(worst) + "), slope " +
             fmt(slope) + ", verbatim path " + (verbatim ? "exact" : "fails");
}

std::filesystem::path write_temp(const std::string& name, const io::json& j) {
  auto dir = std::filesystem::temp_directory_path() / ("omega-accept-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << j.dump();
  return path;
}

int cli_exit(const std::vector<std::string>& args, io::json* report = nullptr) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  if (report) *report = io::json::parse(out.str());
  return code;
}

LocalFamily planted_family() {
  // A_1 = [[1,1],[0,0]], A_2 = [[0,0],[-1,0]]: every single trace is nonnegative
  // and tr(A_1 A_2) = -1.
  LocalFamily f;
  f.D = 2;
  f.m = 2;
  f.coeffs = {{{1, 0}, {1, 0}}, {{0, -1}, {0, 0}}};
  return f;
}

void criterion10(Criterion& c, std::uint64_t seed) {
  // transfer tensor against direct contraction
  std::vector<std::array<std::size_t, 3>> jobs;
  for (std::size_t D = 1; D <= 3; ++D)
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t n = 0; n <= 5; ++n) jobs.push_back({D, m, n});
  std::vector<char> agree(jobs.size(), 0);
  parallel_for(jobs.size(), [&](std::size_t t) {
    auto [D, m, n] = jobs[t];
    Rng rng(derive_seed(seed, 1000 + D * 10 + m));
    std::uniform_int_distribution<int> coeff(-2, 2);
    LocalFamily f{D, m, {}};
    f.coeffs.assign(D, std::vector<std::vector<Integer>>(D, std::vector<Integer>(m)));
    for (auto& row : f.coeffs)
      for (auto& cell : row)
        for (auto& v : cell) v = coeff(rng);
    agree[t] = transfer_tensor(f, n) == brute_force_tensor(f, n);
  });
  auto agreed = static_cast<std::size_t>(std::count(agree.begin(), agree.end(), 1));

  auto rep = bounded_positivity_check(planted_family(), 6);
  bool planted = rep.violation && rep.first_violation == 1u && rep.witness == std::vector<std::size_t>{1, 2} &&
                 rep.witness_value == -1;
  bool note = rep.disclaimer.find("undecidable") != std::string::npos;

  LocalFamily positive{2, 2, {{{1, 2}, {0, 1}}, {{3, 0}, {1, 1}}}};
  auto planted_path = write_temp("planted.json", io::to_json(planted_family()));
  auto positive_path = write_temp("positive.json", io::to_json(positive));
  io::json report;
  int planted_code = cli_exit({"family", "check", planted_path.string(), "--n-max", "6"}, &report);
  bool report_ok = report["result"]["first_violation"] == 1 &&
                   report["result"]["disclaimer"].get<std::string>().find("undecidable") != std::string::npos;
  int positive_code = cli_exit({"family", "check", positive_path.string(), "--n-max", "5"}, &report);
  report_ok = report_ok && report["result"]["disclaimer"].get<std::string>().find("undecidable") != std::string::npos;
  int usage_code = cli_exit({"family", "check", positive_path.string()});
  int guard_code = cli_exit({"family", "check", positive_path.string(), "--n-max", "40", "--max-entries", "1000"});
  std::filesystem::remove_all(planted_path.parent_path());
  bool codes = planted_code == 1 && positive_code == 0 && usage_code == 2 && guard_code == 3;

  c.passed = agreed == jobs.size() && planted && note && codes && report_ok;
  c.detail = std::to_string(agreed) + "/" + std::to_string(jobs.size()) + " transfer tensors match brute force; planted " +
             (planted ? "flagged at n = 1 with witness (1,2)" : "missed") + "; exit codes " +
             std::to_string(planted_code) + "/" + std::to_string(positive_code) + "/" + std::to_string(usage_code) +
             "/" + std::to_string(guard_code) + (note && report_ok ? "; report states the undecidability limit" : "");
}

}  // namespace

std::vector<Criterion> run(const Options& options) {
  const std::vector<std::pair<int, std::string>> names{
      {1, "double-edge worked example"},    {2, "x^2 + y^2 suite"},
      {3, "free symmetrization"},           {4, "blending difference"},
      {5, "invariant sos pipeline"},        {6, "rank separation instances"},
      {7, "factorizability"},               {8, "rank inequality chain"},
      {9, "approximation"},                 {10, "family checker"}};
  std::vector<Criterion> out;
  for (const auto& [id, name] : names) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    Criterion c;
    c.id = id;
    c.name = name;
    auto start = std::chrono::steady_clock::now();
    try {
      switch (id) {
        case 1: criterion1(c); break;
        case 2: criterion2(c); break;
        case 3: criterion3(c, options.seed); break;
        case 4: criterion4(c, options.seed); break;
        case 5: criterion5(c, options.seed); break;
        case 6: criterion6(c, options.seed); break;
        case 7: criterion7(c); break;
        case 8: criterion8(c, options.seed); break;
        case 9: criterion9(c, options.seed); break;
        case 10: criterion10(c, options.seed); break;
      }
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(c));
  }
  return out;
}

std::string format(const Criterion& c) {
  std::ostringstream s;
  s << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": " << c.detail << " (" << std::fixed
    << std::setprecision(2) << c.seconds << " s)";
  return s.str();
}

}  // namespace omega::acceptance
