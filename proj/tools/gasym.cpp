// gasym: group-covariant state discrimination and duality-relation toolkit.
//
// Subcommands: decompose, discriminate, duality, sweep, verify.
// Exit codes: 0 success, 1 verification failure, 2 input/validation error,
// 3 duality-inequality violation (implementation bug by construction).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gasym/coherence.hpp"
#include "gasym/discrimination.hpp"
#include "gasym/duality.hpp"
#include "gasym/group_io.hpp"
#include "gasym/verify.hpp"

namespace {

using nlohmann::json;
using namespace gasym;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInequality = 3;

struct CommonArgs {
  std::string group_spec = "dihedral:3";
  std::string rep_expr;  // empty -> direct sum of all irreps
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t amb_dim = 0;
  std::string out_path;
  std::string format = "csv";
  std::vector<std::string> tolerance_overrides;
};

unsigned env_threads() {
  const char* s = std::getenv("GASYM_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(s, &end, 10);
  if (end == s || *end != '\0') return 0;
  return static_cast<unsigned>(v);
}

GroupPtr resolve_group(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParseError("group spec must be cyclic:N, dihedral:N or file:PATH");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "file") return load_group(arg);
  std::size_t n = 0;
  try {
    n = static_cast<std::size_t>(std::stoul(arg));
  } catch (const std::exception&) {
    throw ParseError("group spec: '" + arg + "' is not a number");
  }
  if (kind == "cyclic") return cyclic_group(n);
  if (kind == "dihedral") return dihedral_group(n);
  throw ParseError("unknown group family '" + kind + "'");
}

// Tiny grammar: expr := term ('+' term)*, term := factor ('*' factor)*,
// factor := 'g' <int>. '*' binds tighter than '+'.
Representation parse_rep(const GroupPtr& group, const std::string& expr) {
  struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    const GroupPtr& group;

    void skip_ws() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip_ws();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    int factor_label() {
      skip_ws();
      if (pos >= s.size() || s[pos] != 'g') {
        throw ParseError("rep expression: expected 'g<label>' at position " +
                         std::to_string(pos));
      }
      ++pos;
      const std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) throw ParseError("rep expression: missing label after 'g'");
      return std::stoi(s.substr(start, pos - start));
    }
    // Returns the labels of a term if it is a plain product of factors.
    std::pair<Representation, std::vector<int>> term() {
      std::vector<int> labels{factor_label()};
      Representation rep = irrep_rep(group, labels.front());
      while (eat('*')) {
        const int label = factor_label();
        labels.push_back(label);
        rep = tensor_product_rep(rep, irrep_rep(group, label));
      }
      return {std::move(rep), std::move(labels)};
    }
    Representation expr_rep() {
      std::vector<std::vector<int>> term_labels;
      std::vector<Representation> terms;
      {
        auto [rep, labels] = term();
        terms.push_back(std::move(rep));
        term_labels.push_back(std::move(labels));
      }
      while (eat('+')) {
        auto [rep, labels] = term();
        terms.push_back(std::move(rep));
        term_labels.push_back(std::move(labels));
      }
      skip_ws();
      if (pos != s.size()) {
        throw ParseError("rep expression: unexpected character at position " +
                         std::to_string(pos));
      }
      const bool all_single = std::all_of(term_labels.begin(), term_labels.end(),
                                          [](const auto& l) { return l.size() == 1; });
      if (all_single && terms.size() > 1) {
        std::vector<int> labels;
        for (const auto& l : term_labels) labels.push_back(l.front());
        return direct_sum_rep(group, labels);  // enforces distinct labels
      }
      Representation rep = std::move(terms.front());
      for (std::size_t i = 1; i < terms.size(); ++i) rep = direct_sum(rep, terms[i]);
      return rep;
    }
  };
  Parser p{expr, 0, group};
  return p.expr_rep();
}

Representation resolve_rep(const GroupPtr& group, std::string& rep_expr) {
  if (rep_expr.empty()) {
    std::string expr;
    for (const auto& ir : group->irreps) {
      if (!expr.empty()) expr += "+";
      expr += "g" + std::to_string(ir.label);
    }
    rep_expr = expr;
  }
  return parse_rep(group, rep_expr);
}

Tolerances resolve_tolerances(const std::vector<std::string>& overrides) {
  Tolerances t;
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("--tolerance expects KEY=VAL");
    const std::string key = kv.substr(0, eq);
    double val = 0.0;
    try {
      val = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("--tolerance: '" + kv.substr(eq + 1) + "' is not a number");
    }
    if (key == "structural") {
      t.structural = val;
    } else if (key == "solver") {
      t.solver = val;
    } else if (key == "certificate") {
      t.certificate = val;
    } else {
      throw ParseError("--tolerance: unknown key '" + key +
                       "' (expected structural, solver or certificate)");
    }
  }
  return t;
}

json config_json(const CommonArgs& args, const Tolerances& tol, unsigned threads) {
  return json{{"group", args.group_spec},
              {"rep", args.rep_expr},
              {"seed", args.seed},
              {"samples", args.samples},
              {"amb_dim", args.amb_dim},
              {"threads", threads},
              {"tolerances",
               {{"structural", tol.structural},
                {"solver", tol.solver},
                {"certificate", tol.certificate}}}};
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InvalidInput("cannot open output file '" + out_path + "'");
  out << payload;
}

void emit_json(const std::string& out_path, const json& doc) {
  emit(out_path, doc.dump(2) + "\n");
}

CVector parse_state(const IsotypicDecomposition& dec, const std::string& spec) {
  if (spec == "optimal") {
    return state_from_weights(dec, optimal_pure_state(dec).weights);
  }
  if (spec == "uniform") {
    const double w = 1.0 / std::sqrt(static_cast<double>(dec.n_present()));
    std::vector<std::pair<int, double>> weights;
    for (int label : dec.present_labels) weights.emplace_back(label, w);
    return state_from_weights(dec, weights);
  }
  // comma-separated amplitudes, each `re` or `re:im`
  std::vector<cdouble> amps;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        amps.emplace_back(std::stod(item), 0.0);
      } else {
        amps.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      throw ParseError("state spec: cannot parse amplitude '" + item + "'");
    }
  }
  if (amps.size() != dec.rep.dim) {
    throw ParseError("state spec: got " + std::to_string(amps.size()) + " amplitudes for a " +
                     std::to_string(dec.rep.dim) + "-dimensional carrier space");
  }
  return CVector(std::move(amps)).normalized();
}

TagEnsemble parse_tags(const std::string& spec, std::size_t n, std::size_t amb_dim,
                       std::uint64_t seed) {
  if (amb_dim == 0) amb_dim = n;
  if (spec == "orthogonal") return orthogonal_tags(n, amb_dim);
  if (spec == "identical") return identical_tags(n, amb_dim);
  if (spec == "random") {
    SampleRng rng(seed, 0);
    return random_tags(n, amb_dim, rng);
  }
  if (!spec.empty() && spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw ParseError("tags: cannot open '" + spec.substr(1) + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError(std::string("tags: malformed JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.size() != n) {
      throw ParseError("tags: need an array with one vector per subspace (" +
                       std::to_string(n) + ")");
    }
    std::vector<CVector> tags;
    for (const auto& jv : doc) {
      std::vector<cdouble> entries;
      for (const auto& e : jv) {
        if (!e.is_array() || e.size() != 2) throw ParseError("tags: entry must be [re, im]");
        entries.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      }
      tags.push_back(CVector(std::move(entries)).normalized());
    }
    return make_tag_ensemble(std::move(tags));
  }
  throw ParseError("tags must be orthogonal, identical, random or @file.json");
}

// ---------------------------------------------------------------------------

int cmd_decompose(const CommonArgs& args) {
  const Tolerances tol = resolve_tolerances(args.tolerance_overrides);
  CommonArgs cfg = args;
  const GroupPtr group = resolve_group(cfg.group_spec);
  const Representation rep = resolve_rep(group, cfg.rep_expr);
  const IsotypicDecomposition dec = isotypic_projectors(rep);

  double idempotence = 0.0, orthogonality = 0.0, commutation = 0.0;
  CMatrix sum(rep.dim, rep.dim);
  for (std::size_t i = 0; i < dec.n_present(); ++i) {
    const CMatrix& p = dec.projectors[i];
    idempotence = std::max(idempotence, max_abs_diff(p * p, p));
    for (std::size_t j = 0; j < dec.n_present(); ++j) {
      if (i != j) orthogonality = std::max(orthogonality, (p * dec.projectors[j]).max_abs());
    }
    for (const auto& u : rep.matrices) {
      commutation = std::max(commutation, max_abs_diff(p * u, u * p));
    }
    sum += p;
  }
  const double completeness = max_abs_diff(sum, CMatrix::identity(rep.dim));

  json mult = json::array();
  for (const auto& [label, m] : dec.multiplicities) {
    mult.push_back({{"label", label},
                    {"dim", group->irrep_by_label(label).dim},
                    {"multiplicity", m}});
  }
  json subspaces = json::array();
  for (std::size_t i = 0; i < dec.n_present(); ++i) {
    subspaces.push_back({{"label", dec.present_labels[i]},
                         {"dim", dec.irrep_dim(dec.present_labels[i])},
                         {"projector_trace", dec.projectors[i].trace().real()}});
  }

  const json doc = {{"schema", 1},
                    {"command", "decompose"},
                    {"config", config_json(cfg, tol, 0)},
                    {"result",
                     {{"carrier_dim", rep.dim},
                      {"multiplicities", mult},
                      {"subspaces", subspaces},
                      {"residuals",
                       {{"completeness", completeness},
                        {"idempotence", idempotence},
                        {"orthogonality", orthogonality},
                        {"commutation", commutation}}}}}};
  emit_json(cfg.out_path, doc);
  return kExitOk;
}

int cmd_discriminate(const CommonArgs& args, const std::string& state_spec) {
  const Tolerances tol = resolve_tolerances(args.tolerance_overrides);
  CommonArgs cfg = args;
  const GroupPtr group = resolve_group(cfg.group_spec);
  const Representation rep = resolve_rep(group, cfg.rep_expr);
  const IsotypicDecomposition dec = isotypic_projectors(rep);
  assert_multiplicity_free(dec);

  const CVector phi = parse_state(dec, state_spec);
  const double closed_form = success_probability_pure(dec, phi);
  const auto orbit = group_orbit(rep, outer(phi, phi));
  const std::vector<double> uniform(orbit.size(), 1.0 / static_cast<double>(orbit.size()));
  SolverOptions solver;
  solver.certificate_tol = tol.certificate;
  const DiscriminationResult solved = solve_min_error(orbit, uniform, solver);
  const CovariantPovm seed = build_covariant_povm(rep, phi, {});

  json weights = json::array();
  for (const auto& [label, norm] : component_norms(dec, phi)) {
    weights.push_back({{"label", label}, {"norm", norm}});
  }
  const auto optimal = optimal_pure_state(dec);
  json optimal_weights = json::array();
  for (const auto& [label, norm] : optimal.weights) {
    optimal_weights.push_back({{"label", label}, {"norm", norm}});
  }

  const json doc = {
      {"schema", 1},
      {"command", "discriminate"},
      {"config", config_json(cfg, tol, 0)},
      {"result",
       {{"state", state_spec},
        {"closed_form_ps", closed_form},
        {"solver_ps", solved.success_probability},
        {"solver_iterations", solved.iterations},
        {"solver_converged", solved.converged},
        {"certificate_floor", solved.certificate_floor},
        {"certified", solved.certified(tol.certificate)},
        {"robustness_of_asymmetry", robustness_from_ps(closed_form, group->order)},
        {"weights", weights},
        {"optimal_weights", optimal_weights},
        {"optimal_ps", optimal.p_max},
        {"povm_seed", matrix_json(seed.seed)}}}};
  emit_json(cfg.out_path, doc);
  return kExitOk;
}

json report_json(const DualityReport& r) {
  json v_norms = json::array();
  for (const auto& v : r.v_norms) {
    v_norms.push_back({{"label_a", v.label_a}, {"label_b", v.label_b}, {"norm", v.v_norm}});
  }
  return json{{"n_subspaces", r.n_subspaces},
              {"amb_dim", r.amb_dim},
              {"max_abs_overlap", r.max_abs_overlap},
              {"d_baseline", r.d_baseline},
              {"m_tilde", r.m_tilde},
              {"p_ug_bound", r.p_ug_bound},
              {"p_ug_achieved", r.p_ug_achieved},
              {"p_hp_bound", r.p_hp_bound},
              {"p_hp_achieved", r.p_hp_achieved},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"slack", r.slack},
              {"phases", r.phases},
              {"v_norms", v_norms},
              {"certified", r.certified}};
}

int cmd_duality(const CommonArgs& args, const std::string& tags_spec) {
  const Tolerances tol = resolve_tolerances(args.tolerance_overrides);
  CommonArgs cfg = args;
  const GroupPtr group = resolve_group(cfg.group_spec);
  const Representation rep = resolve_rep(group, cfg.rep_expr);
  const IsotypicDecomposition dec = isotypic_projectors(rep);
  assert_multiplicity_free(dec);

  TagEnsemble tags = parse_tags(tags_spec, dec.n_present(), cfg.amb_dim, cfg.seed);
  const TaggedState ts = build_tagged_state(rep, default_unit_components(dec), std::move(tags));
  SolverOptions solver;
  solver.certificate_tol = tol.certificate;
  const DualityReport report = duality_report(ts, solver, tol.structural);

  const json doc = {{"schema", 1},
                    {"command", "duality"},
                    {"config", config_json(cfg, tol, 0)},
                    {"tags", tags_spec},
                    {"result", report_json(report)}};
  emit_json(cfg.out_path, doc);
  return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
  const Tolerances tol = resolve_tolerances(args.tolerance_overrides);
  CommonArgs cfg = args;
  const GroupPtr group = resolve_group(cfg.group_spec);
  const Representation rep = resolve_rep(group, cfg.rep_expr);
  const unsigned threads = env_threads();

  SweepOptions sweep;
  sweep.samples = cfg.samples == 0 ? 1 : cfg.samples;
  sweep.seed = cfg.seed;
  sweep.amb_dim = cfg.amb_dim;
  sweep.threads = threads;
  sweep.solver.certificate_tol = tol.certificate;

  const auto reports = random_tag_sweep(rep, sweep);

  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t certified = 0;
  for (const auto& r : reports) {
    min_slack = std::min(min_slack, r.slack);
    if (r.certified) ++certified;
  }

  if (cfg.format == "json") {
    json rows = json::array();
    for (std::size_t k = 0; k < reports.size(); ++k) {
      json row = report_json(reports[k]);
      row["sample_id"] = k;
      row["seed"] = sweep.seed;
      rows.push_back(std::move(row));
    }
    const json doc = {{"schema", 1},
                      {"command", "sweep"},
                      {"config", config_json(cfg, tol, threads)},
                      {"result", rows}};
    emit_json(cfg.out_path, doc);
  } else if (cfg.format == "csv") {
    std::ostringstream csv;
    write_sweep_csv(csv, reports, sweep.seed);
    emit(cfg.out_path, csv.str());
  } else {
    throw ParseError("--format must be json or csv");
  }

  std::fprintf(stderr, "sweep: samples=%zu min_slack=%.17g certified=%zu/%zu\n",
               reports.size(), min_slack, certified, reports.size());
  if (min_slack < -tol.structural) {
    return kExitInequality;  // duality_report should have thrown already
  }
  return kExitOk;
}

int cmd_verify(const CommonArgs& args, double perturb) {
  const Tolerances tol = resolve_tolerances(args.tolerance_overrides);
  CommonArgs cfg = args;
  VerifyOptions opt;
  opt.group = resolve_group(cfg.group_spec);
  if (!cfg.rep_expr.empty()) opt.rep = parse_rep(opt.group, cfg.rep_expr);
  opt.seed = cfg.seed != 0 ? cfg.seed : 0x67a5;
  opt.trials = cfg.samples;
  opt.perturb = perturb;
  opt.tolerances = tol;
  opt.solver.certificate_tol = tol.certificate;
  opt.threads = env_threads();

  const auto checks = run_verification(opt);

  json rows = json::array();
  std::string first_failure;
  std::size_t passed = 0;
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name},
                    {"passed", c.passed},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"detail", c.detail}});
    if (c.passed) {
      ++passed;
    } else if (first_failure.empty()) {
      first_failure = c.name;
    }
  }
  const bool all_passed = passed == checks.size();
  const json doc = {{"schema", 1},
                    {"command", "verify"},
                    {"config", config_json(cfg, tol, opt.threads)},
                    {"perturb", perturb},
                    {"passed", all_passed},
                    {"checks_passed", passed},
                    {"checks_total", checks.size()},
                    {"first_failure", first_failure},
                    {"checks", rows}};
  emit_json(cfg.out_path, doc);
  if (!all_passed) {
    std::fprintf(stderr, "verify: FAILED at check '%s'\n", first_failure.c_str());
    return kExitVerifyFailure;
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--group", args.group_spec, "cyclic:N, dihedral:N or file:PATH");
  cmd->add_option("--rep", args.rep_expr,
                  "representation expression, e.g. \"g1+g2+g3\" or \"g3*g3\" "
                  "(default: direct sum of every irrep)");
  cmd->add_option("--seed", args.seed, "64-bit RNG seed");
  cmd->add_option("--samples", args.samples, "sample / trial count");
  cmd->add_option("--amb-dim", args.amb_dim, "ancilla dimension (0 = number of subspaces)");
  cmd->add_option("--out", args.out_path, "output file (default: stdout)");
  cmd->add_option("--format", args.format, "output format for sweep: csv (default) or json");
  cmd->add_option("--tolerance", args.tolerance_overrides,
                  "override a named tolerance, KEY=VAL; keys: structural, solver, certificate");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-covariant discrimination and duality toolkit"};
  app.require_subcommand(1);

  CommonArgs decompose_args, discriminate_args, duality_args, sweep_args, verify_args;
  std::string state_spec = "optimal";
  std::string tags_spec = "orthogonal";
  double perturb = 0.0;

  CLI::App* decompose = app.add_subcommand("decompose", "isotypic decomposition report");
  add_common(decompose, decompose_args);

  CLI::App* discriminate =
      app.add_subcommand("discriminate", "orbit discrimination: closed form, solver, POVM");
  add_common(discriminate, discriminate_args);
  discriminate->add_option("--state", state_spec,
                           "optimal, uniform, or comma-separated amplitudes re[:im]");

  CLI::App* duality = app.add_subcommand("duality", "duality-relation report for one ensemble");
  add_common(duality, duality_args);
  duality->add_option("--tags", tags_spec, "orthogonal, identical, random or @file.json");

  CLI::App* sweep = app.add_subcommand("sweep", "randomized duality verification sweep (CSV)");
  add_common(sweep, sweep_args);

  CLI::App* verify = app.add_subcommand("verify", "run the full invariant battery");
  add_common(verify, verify_args);
  verify->add_option("--perturb", perturb,
                     "test hook: inflate the covariant POVM seed by this amount");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (decompose->parsed()) return cmd_decompose(decompose_args);
    if (discriminate->parsed()) return cmd_discriminate(discriminate_args, state_spec);
    if (duality->parsed()) return cmd_duality(duality_args, tags_spec);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (verify->parsed()) return cmd_verify(verify_args, perturb);
  } catch (const InequalityViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInequality;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
