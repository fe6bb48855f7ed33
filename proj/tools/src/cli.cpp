#include "omega/tools/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "omega/tools/acceptance.hpp"
#include "omega/tools/io.hpp"

namespace omega::cli {

namespace {

using io::json;

struct Config {
  std::uint64_t seed = 1;
  double psd_tol = 1e-9;
  double eq_tol = 1e-9;
  std::size_t max_assignments = kDefaultMaxAssignments;
  std::size_t max_group = kDefaultMaxGroup;
  bool pretty = false;
};

struct Report {
  std::string command;
  json inputs = json::array();
  json result = json::object();
  int code = kSuccess;
};

void add_input(Report& r, const std::string& path) {
  r.inputs.push_back({{"path", path}, {"fnv1a64", io::file_digest(path)}});
}

json load(Report& r, const std::string& path) {
  add_input(r, path);
  return io::read_file(path);
}

std::vector<std::size_t> to_one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) out.push_back(x + 1);
  return out;
}

json orbits_json(const std::vector<std::vector<int>>& orbits) {
  json out = json::array();
  for (const auto& o : orbits) out.push_back(o);
  return out;
}

// ---- complex ----

void complex_build(Report& r, const std::string& file) {
  auto c = io::complex_from_json(load(r, file));
  r.result = {{"complex", io::to_json(c)}, {"vertex_count", c.vertex_count()}, {"multifacet_count", c.label_count()}};
}

void complex_info(Report& r, const std::string& file) {
  auto c = io::complex_from_json(load(r, file));
  json labels = json::array();
  for (const auto& l : c.labels()) labels.push_back({{"facet", l.facet}, {"copy", l.copy}});
  json vertex_weights = json::array();
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    int s[] = {static_cast<int>(v)};
    vertex_weights.push_back(c.omega(s));
  }
  r.result = {{"vertex_count", c.vertex_count()},
              {"facets", io::to_json(c)["facets"]},
              {"multifacets", labels},
              {"vertex_weights", vertex_weights},
              {"connected", c.is_connected()},
              {"divisibility", c.divisibility_holds()}};
}

// ---- action ----

void action_check(Report& r, const Config& cfg, const std::string& cfile, const std::string& afile) {
  auto c = io::complex_from_json(load(r, cfile));
  auto a = io::action_from_json(c, load(r, afile), cfg.max_group);
  r.result = {{"order", a.order()},
              {"free", is_free(a)},
              {"vertex_free", is_vertex_action_free(a)},
              {"blending", is_blending(a, cfg.max_assignments)},
              {"vertex_orbits", orbits_json(a.vertex_orbits())},
              {"multifacet_orbits", orbits_json(a.label_orbits())}};
}

void action_refine(Report& r, const Config& cfg, const std::string& cfile, const std::string& afile) {
  auto c = io::complex_from_json(load(r, cfile));
  auto a = free_refinement(io::action_from_json(c, load(r, afile), cfg.max_group));
  r.result = {{"complex", io::to_json(a.complex())}, {"action", io::to_json(a)}, {"free", is_free(a)}};
}

// ---- dec ----

json contraction_json(const RadicalPolynomial& p, const std::vector<unsigned>& vars) {
  json out = {{"polynomial", io::to_json(p, vars)}, {"rational", p.is_rational()}};
  if (vars.size() == 2 && p.is_rational()) {
    Polynomial q = p.rational_value().value_or(Polynomial(vars));
    out["bipartite_rank"] = bipartite_rank(q);
  }
  return out;
}

void dec_contract(Report& r, const Config& cfg, const std::string& file) {
  auto f = io::decomposition_from_json(load(r, file), cfg.max_group);
  r.result = contraction_json(contract(f.dec, {cfg.max_assignments}), f.dec.site_vars());
}

void dec_verify(Report& r, const Config& cfg, const std::string& file) {
  auto f = io::decomposition_from_json(load(r, file), cfg.max_group);
  auto p = contract(f.dec, {cfg.max_assignments});
  bool symmetric = check_symmetry(f.dec);
  r.result = contraction_json(p, f.dec.site_vars());
  r.result["symmetric"] = symmetric;
  r.result["index_size"] = f.dec.index_size();
  r.result["group_order"] = f.dec.action().order();
  bool ok = symmetric;
  if (f.target) {
    bool match = p == RadicalPolynomial(*f.target);
    r.result["matches_target"] = match;
    ok = ok && match;
  } else {
    r.result["matches_target"] = nullptr;
  }
  r.result["verified"] = ok;
  if (!ok) r.code = kVerdictFail;
}

void dec_symmetrize(Report& r, const Config& cfg, const std::string& file, const std::string& mode) {
  auto f = io::terms_from_json(load(r, file), cfg.max_group);
  auto target = elementary_sum(f.terms, f.site_vars);
  r.result["mode"] = mode;
  r.result["input_rank"] = f.terms.size();
  if (mode == "free") {
    auto d = symmetrize_free(f.terms, f.action, f.site_vars);
    bool match = contract(d, {cfg.max_assignments}) == target;
    r.result["decomposition"] = io::to_json(d);
    r.result["index_size"] = d.index_size();
    r.result["symmetric"] = check_symmetry(d);
    r.result["matches_input"] = match;
    if (!match) r.code = kVerdictFail;
  } else {
    auto b = blending_difference(f.terms, f.action, f.site_vars, cfg.max_assignments);
    auto diff = contract(b.positive, {cfg.max_assignments}) - contract(b.negative, {cfg.max_assignments});
    bool match = diff == target;
    r.result["positive"] = io::to_json(b.positive);
    r.result["negative"] = io::to_json(b.negative);
    r.result["negative_empty"] = b.negative.empty();
    r.result["symmetric"] = check_symmetry(b.positive) && check_symmetry(b.negative);
    r.result["matches_input"] = match;
    if (!match) r.code = kVerdictFail;
  }
}

// ---- pos ----

SymmetryAction optional_action(Report& r, const Config& cfg, const std::string& cfile, const std::string& afile,
                               unsigned n) {
  if (cfile.empty()) {
    require(n == 1, ErrorCode::InvalidArgument, "--complex and --action are required unless n = 1");
    return edge_swap(false);
  }
  auto c = io::complex_from_json(load(r, cfile));
  if (afile.empty()) return SymmetryAction::trivial(c);
  return io::action_from_json(c, load(r, afile), cfg.max_group);
}

void pos_gram_map(Report& r, const std::string& file) {
  auto g = io::gram_from_json(load(r, file));
  r.result = {{"polynomial", io::to_json(gram_map(g))}, {"min_eigenvalue", min_eigenvalue(g.entries)}};
}

void pos_sos_family(Report& r, const Config& cfg, const std::string& file, const std::string& cfile,
                    const std::string& afile) {
  auto g = io::gram_from_json(load(r, file));
  auto a = optional_action(r, cfg, cfile, afile, g.n);
  auto fam = invariant_sos_family(g, a, cfg.psd_tol);
  json members = json::array();
  for (const auto& q : fam.members) members.push_back(io::to_json(q));
  double sos_error = max_coefficient_difference(sum_of_squares(fam), gram_map(g));
  double defect = family_invariance_defect(fam, a);
  r.result = {{"members", members},
              {"sum_of_squares_error", sos_error},
              {"invariance_defect", defect},
              {"group_order", a.order()}};
  if (sos_error > cfg.eq_tol || defect > cfg.eq_tol) r.code = kVerdictFail;
}

void pos_factorizable(Report& r, const Config& cfg, const std::string& cfile, const std::string& afile,
                      std::size_t index_size) {
  auto c = io::complex_from_json(load(r, cfile));
  auto a = io::action_from_json(c, load(r, afile), cfg.max_group);
  auto f = factorizability_solve(a, index_size, cfg.max_assignments);
  json constants = json::array();
  for (std::size_t i = 0; i < f.c.size(); ++i)
    for (const auto& [beta, v] : f.c[i]) {
      std::vector<std::uint32_t> b;
      for (auto x : beta) b.push_back(x + 1);
      constants.push_back({{"site", i}, {"beta", b}, {"c", v}});
    }
  r.result = {{"feasible", f.feasible}, {"residual", f.residual}, {"index_size", index_size}, {"constants", constants}};
  if (!f.feasible) r.code = kVerdictFail;
}

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

void pos_bound(Report& r, std::size_t g, unsigned m, unsigned d, unsigned n) {
  r.result = {{"bound", integer_json(caratheodory_bound(g, m, d, n))}, {"g", g}, {"m", m}, {"d", d}, {"n", n}};
}

// ---- bridge ----

void bridge_to_poly(Report& r, const std::string& file) {
  auto t = io::tensor_from_json(load(r, file));
  auto pos = tensor_positivity(t);
  r.result = {{"polynomial", io::to_json(poly_from_tensor(t))},
              {"nonnegative", pos.nonnegative},
              {"min_entry", to_string(pos.min_value)},
              {"argmin", to_one_based(pos.argmin)}};
}

void bridge_separations(Report& r, const Config& cfg, const std::vector<std::size_t>& ms, std::size_t restarts) {
  json rows = json::array();
  for (auto m : ms) {
    auto row = rank_separations(m, cfg.seed, restarts);
    rows.push_back({{"m", row.m},
                    {"rank", row.plain_rank},
                    {"psd_index", row.psd_index},
                    {"psd_identity_exact", row.psd_identity_exact},
                    {"nn_lower_bound", row.nn_lower},
                    {"nn_upper_bound", row.nn_upper_heuristic},
                    {"nn_upper_residual", row.nn_upper_residual},
                    {"slack_rank", row.slack_rank},
                    {"slack_incidence_zero", row.slack_incidence_zero}});
  }
  r.result = {{"rows", rows}, {"nn_upper_is_heuristic", true}};
}

// ---- family ----

void family_check(Report& r, const std::string& file, std::size_t n_min, std::size_t n_max, std::size_t max_entries) {
  auto f = io::family_from_json(load(r, file));
  auto rep = bounded_positivity_check(f, n_max, n_min, max_entries);
  json steps = json::array();
  for (const auto& s : rep.steps)
    steps.push_back({{"n", s.n}, {"min_entry", integer_json(s.min_entry)}, {"argmin", s.argmin}});
  r.result = {{"violation", rep.violation},
              {"n_min", rep.n_min},
              {"n_max", rep.n_max},
              {"steps", steps},
              {"disclaimer", rep.disclaimer}};
  if (rep.violation) {
    r.result["first_violation"] = *rep.first_violation;
    r.result["witness"] = rep.witness;
    r.result["witness_value"] = integer_json(rep.witness_value);
    r.result["summary"] = "violation at n = " + std::to_string(*rep.first_violation);
    r.code = kVerdictFail;
  } else {
    r.result["first_violation"] = nullptr;
    r.result["summary"] = "no violation up to n = " + std::to_string(n_max);
  }
}

// ---- approx ----

void approx_run(Report& r, const Config& cfg, const std::string& file, double epsilon, std::size_t samples,
                bool always_sample) {
  auto w = io::witness_from_json(load(r, file), cfg.max_group);
  auto res = approx_separable(w.gram, w.action, epsilon, cfg.seed,
                              samples ? std::optional<std::size_t>(samples) : std::nullopt, always_sample);
  r.result = {{"budget", res.index_budget},
              {"samples", res.samples},
              {"terms_used", res.terms_used},
              {"index_size", res.decomposition.dec.index_size()},
              {"verbatim", res.verbatim},
              {"error_schatten2", res.error},
              {"epsilon", epsilon},
              {"mu_upper", mu_upper(w.gram)},
              {"symmetric", check_symmetry(res.decomposition.dec)}};
  if (!(res.error < epsilon)) r.code = kVerdictFail;
}

// ---- accept ----

void accept(Report& r, const Config& cfg, const std::vector<int>& only, std::ostream& err) {
  acceptance::Options opt;
  opt.seed = cfg.seed;
  opt.only = only;
  auto results = acceptance::run(opt);
  json rows = json::array();
  bool all = true;
  for (const auto& c : results) {
    rows.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
    if (cfg.pretty) err << acceptance::format(c) << "\n";
  }
  r.result = {{"criteria", rows}, {"all_passed", all}};
  if (!all) r.code = kVerdictFail;
}

json envelope(const Report& r, const Config& cfg) {
  return {{"tool", "omega"}, {"version", kVersion}, {"command", r.command}, {"seed", cfg.seed}, {"inputs", r.inputs}};
}

void pretty_print(const Report& r, std::ostream& err) {
  if (r.result.contains("rows")) {
    err << std::setw(6) << "m" << std::setw(8) << "rank" << std::setw(11) << "psd-index" << std::setw(10)
        << "nn-lower" << std::setw(10) << "nn-upper" << "\n";
    for (const auto& row : r.result["rows"])
      err << std::setw(6) << row["m"].get<std::size_t>() << std::setw(8) << row["rank"].get<std::size_t>()
          << std::setw(11) << row["psd_index"].get<std::size_t>() << std::setw(10)
          << row["nn_lower_bound"].get<std::size_t>() << std::setw(10) << row["nn_upper_bound"].get<std::size_t>()
          << "\n";
    return;
  }
  if (r.result.contains("criteria")) return;  // printed while running
  err << r.result.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  Report report;
  CLI::App app{"Invariant decompositions of block-structured polynomials", "omega"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  app.add_option("--seed", cfg.seed, "Seed for randomized operations");
  app.add_option("--psd-tol", cfg.psd_tol, "Tolerance for PSD tests");
  app.add_option("--eq-tol", cfg.eq_tol, "Tolerance for float comparisons");
  app.add_option("--max-assignments", cfg.max_assignments, "Enumeration guard");
  app.add_option("--max-group", cfg.max_group, "Group order guard");
  app.add_flag("--pretty", cfg.pretty, "Human-readable output on stderr");

  std::string f1, f2, mode = "free", cfile, afile;
  std::size_t index_size = 2, n_max = 6, n_min = 0, restarts = 50, samples = 0, g = 1;
  std::size_t max_entries = kDefaultMaxTensorEntries;
  unsigned m = 1, d = 1, n = 1;
  double epsilon = 0.5;
  bool always_sample = false;
  std::vector<std::size_t> ms{4, 8, 12};
  std::vector<int> only;

  auto* complex = app.add_subcommand("complex", "Weighted simplicial complexes")->require_subcommand(1);
  auto* complex_build_cmd = complex->add_subcommand("build", "Validate and normalize a complex");
  complex_build_cmd->add_option("file", f1)->required();
  auto* complex_info_cmd = complex->add_subcommand("info", "Facets, multifacets, weights, connectivity");
  complex_info_cmd->add_option("file", f1)->required();

  auto* action = app.add_subcommand("action", "Group actions")->require_subcommand(1);
  auto* action_check_cmd = action->add_subcommand("check", "Freeness, blending, orbits");
  action_check_cmd->add_option("complex", f1)->required();
  action_check_cmd->add_option("action", f2)->required();
  auto* action_refine_cmd = action->add_subcommand("refine", "Free refinement of an action");
  action_refine_cmd->add_option("complex", f1)->required();
  action_refine_cmd->add_option("action", f2)->required();

  auto* dec = app.add_subcommand("dec", "Invariant decompositions")->require_subcommand(1);
  auto* dec_contract_cmd = dec->add_subcommand("contract", "Contract a decomposition");
  dec_contract_cmd->add_option("file", f1)->required();
  auto* dec_verify_cmd = dec->add_subcommand("verify", "Check symmetry and the target polynomial");
  dec_verify_cmd->add_option("file", f1)->required();
  auto* dec_sym_cmd = dec->add_subcommand("symmetrize", "Invariant decomposition from elementary terms");
  dec_sym_cmd->add_option("file", f1)->required();
  dec_sym_cmd->add_option("--mode", mode)->check(CLI::IsMember({"free", "blending"}));

  auto* pos = app.add_subcommand("pos", "Positivity and sums of squares")->require_subcommand(1);
  auto* pos_gram_cmd = pos->add_subcommand("gram-map", "Polynomial of a Gram matrix");
  pos_gram_cmd->add_option("file", f1)->required();
  auto* pos_family_cmd = pos->add_subcommand("sos-family", "Invariant sos family of an invariant PSD Gram matrix");
  pos_family_cmd->add_option("file", f1)->required();
  pos_family_cmd->add_option("--complex", cfile);
  pos_family_cmd->add_option("--action", afile);
  auto* pos_fact_cmd = pos->add_subcommand("factorizable", "Solve for factorizing constants");
  pos_fact_cmd->add_option("complex", f1)->required();
  pos_fact_cmd->add_option("action", f2)->required();
  pos_fact_cmd->add_option("--index-size", index_size);
  auto* pos_bound_cmd = pos->add_subcommand("bound", "Caratheodory bound on the separable index");
  pos_bound_cmd->add_option("--m", m)->required();
  pos_bound_cmd->add_option("--d", d)->required();
  pos_bound_cmd->add_option("--n", n)->required();
  pos_bound_cmd->add_option("--g", g)->required();

  auto* bridge = app.add_subcommand("bridge", "Tensor and polynomial correspondences")->require_subcommand(1);
  auto* bridge_poly_cmd = bridge->add_subcommand("to-poly", "Squared-monomial polynomial of a tensor");
  bridge_poly_cmd->add_option("file", f1)->required();
  auto* bridge_sep_cmd = bridge->add_subcommand("separations", "Rank separation table");
  bridge_sep_cmd->add_option("--m", ms)->expected(1, -1);
  bridge_sep_cmd->add_option("--restarts", restarts);

  auto* family = app.add_subcommand("family", "Translation-invariant circle families")->require_subcommand(1);
  auto* family_check_cmd = family->add_subcommand("check", "Bounded positivity check");
  family_check_cmd->add_option("file", f1)->required();
  family_check_cmd->add_option("--n-max", n_max)->required();
  family_check_cmd->add_option("--n-min", n_min);
  family_check_cmd->add_option("--max-entries", max_entries);

  auto* approx = app.add_subcommand("approx", "Approximate separable decompositions")->require_subcommand(1);
  auto* approx_run_cmd = approx->add_subcommand("run", "Sample from a separable Gram witness");
  approx_run_cmd->add_option("file", f1)->required();
  approx_run_cmd->add_option("--epsilon", epsilon)->required();
  approx_run_cmd->add_option("--samples", samples, "Override the sample count");
  approx_run_cmd->add_flag("--always-sample", always_sample, "Sample even when the witness is within budget");

  auto* accept_cmd = app.add_subcommand("accept", "Run the acceptance suite");
  accept_cmd->add_option("--only", only, "Criterion ids to run");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    json j = envelope(report, cfg);
    j["status"] = "error";
    j["error"] = {{"code", "UsageError"}, {"message", e.what()}};
    out << j.dump(2) << "\n";
    return kUsage;
  }

  for (auto* sub : app.get_subcommands())
    for (auto* leaf : sub->get_subcommands()) report.command = sub->get_name() + " " + leaf->get_name();
  if (report.command.empty()) report.command = "accept";

  try {
    if (complex_build_cmd->parsed()) complex_build(report, f1);
    else if (complex_info_cmd->parsed()) complex_info(report, f1);
    else if (action_check_cmd->parsed()) action_check(report, cfg, f1, f2);
    else if (action_refine_cmd->parsed()) action_refine(report, cfg, f1, f2);
    else if (dec_contract_cmd->parsed()) dec_contract(report, cfg, f1);
    else if (dec_verify_cmd->parsed()) dec_verify(report, cfg, f1);
    else if (dec_sym_cmd->parsed()) dec_symmetrize(report, cfg, f1, mode);
    else if (pos_gram_cmd->parsed()) pos_gram_map(report, f1);
    else if (pos_family_cmd->parsed()) pos_sos_family(report, cfg, f1, cfile, afile);
    else if (pos_fact_cmd->parsed()) pos_factorizable(report, cfg, f1, f2, index_size);
    else if (pos_bound_cmd->parsed()) pos_bound(report, g, m, d, n);
    else if (bridge_poly_cmd->parsed()) bridge_to_poly(report, f1);
    else if (bridge_sep_cmd->parsed()) bridge_separations(report, cfg, ms, restarts);
    else if (family_check_cmd->parsed()) family_check(report, f1, n_min, n_max, max_entries);
    else if (approx_run_cmd->parsed()) approx_run(report, cfg, f1, epsilon, samples, always_sample);
    else if (accept_cmd->parsed()) accept(report, cfg, only, err);
  } catch (const Error& e) {
    json j = envelope(report, cfg);
    j["status"] = "error";
    j["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    out << j.dump(2) << "\n";
    return is_guard_error(e.code()) ? kGuard : kUsage;
  } catch (const std::exception& e) {
    json j = envelope(report, cfg);
    j["status"] = "error";
    j["error"] = {{"code", dynamic_cast<const json::exception*>(&e) ? "ParseError" : "InternalError"},
                  {"message", e.what()}};
    out << j.dump(2) << "\n";
    return kUsage;
  }

  json j = envelope(report, cfg);
  j["status"] = report.code == kSuccess ? "ok" : "fail";
  j["result"] = report.result;
  out << j.dump(2) << "\n";
  if (cfg.pretty) pretty_print(report, err);
  return report.code;
}

}  // namespace omega::cli
