// SPDX-License-Identifier: Apache-2.0
#include "iodir/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iodir/error.hpp"
#include "iodir/game.hpp"
#include "iodir/io.hpp"
#include "iodir/sdp.hpp"
#include "iodir/supermaps.hpp"
#include "iodir/witness.hpp"

namespace iodir::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

void require_input(const std::string& path, const char* what) {
  if (!path.empty() && !fs::is_regular_file(path)) throw IoError(std::string(what) + " not found: " + path);
}

void require_output(const std::string& path) {
  if (path.empty()) return;
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) throw IoError("output directory does not exist: " + parent.string());
}

void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
  if (path.empty())
    fallback << content;
  else
    io::write_file_atomic(path, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

SetupOperator load_setup(const std::string& spec) {
  if (spec == "qtf") return qtf_plus_control();
  return io::setup_from_json(Json::parse(io::read_file(spec), nullptr, true));
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(io::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

sdp::RobustnessOptions robustness_options(const RunConfig& cfg) {
  sdp::RobustnessOptions o;
  if (cfg.tol) o.solver.tol = *cfg.tol;
  if (cfg.restricted) o.restriction = sdp::WitnessRestriction{};
  return o;
}

bool on_experiment_layout(const SystemLayout& l) {
  if (l.size() != 5) return false;
  for (const auto& lab : experiment_labels())
    if (!l.contains(lab) || l.dim_of(lab) != 2) return false;
  return true;
}

Vector parse_target(const std::string& s) {
  const double h = 1.0 / std::sqrt(2.0);
  Vector v(2);
  if (s == "0") v << 1, 0;
  else if (s == "1") v << 0, 1;
  else if (s == "+") v << h, h;
  else if (s == "-") v << h, -h;
  else if (s == "+i") v << h, Complex(0, h);
  else if (s == "-i") v << h, Complex(0, -h);
  else throw ParseError("unknown target state '" + s + "' (expected 0, 1, +, -, +i, -i)");
  return v;
}

std::vector<DecompositionTerm> all_settings(bool restricted) {
  std::vector<DecompositionTerm> out;
  if (restricted) {
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int e = 0; e < 4; ++e) out.push_back({{0, b, c, kTraced, e}, 0.0});
    return out;
  }
  for (int t = 0; t < 1024; ++t) out.push_back({{t >> 8 & 3, t >> 6 & 3, t >> 4 & 3, t >> 2 & 3, t & 3}, 0.0});
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_robustness(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.setup != "qtf") require_input(cfg.setup, "setup file");
  for (const auto& p : {cfg.out, cfg.witness_out, cfg.decomposition_out}) require_output(p);

  auto t0 = std::chrono::steady_clock::now();
  SetupOperator s = load_setup(cfg.setup);
  auto opts = robustness_options(cfg);
  auto res = sdp::solve_max_robustness(s, opts);
  auto prim = sdp::solve_robustness_primal(s, opts);
  auto cert = sdp::certify_duality(prim, res.report);

  Json j;
  j["command"] = "robustness";
  j["setup"] = cfg.setup;
  j["restricted"] = cfg.restricted;
  j["robustness"] = res.robustness;
  j["witness_value"] = -res.witness.inner(s.op());
  j["converged"] = res.report.converged && prim.converged;
  j["solver_gap"] = res.report.gap;
  j["primal_program_value"] = prim.primal_value;
  j["certified_gap"] = cert.identity_residual;
  j["duality_certified"] = cert.certified;
  j["iterations"] = res.report.iterations;
  j["residuals"] = res.report.residuals;

  const bool decomposable = on_experiment_layout(s.layout());
  if (decomposable) {
    auto d = decompose_witness(res.witness, cfg.restricted);
    j["decomposition_terms"] = d.terms.size();
    j["decomposition_residual"] = d.residual;
    if (!cfg.decomposition_out.empty()) io::write_file_atomic(cfg.decomposition_out, io::decomposition_to_csv(d));
  } else if (!cfg.decomposition_out.empty()) {
    throw LayoutError("decomposition needs the five-qubit layout (A_I, A_O, B_it, B_ot, B_oc)");
  }
  if (!cfg.witness_out.empty())
    io::write_file_atomic(cfg.witness_out, dump(io::witness_to_json(Witness{res.witness, res.certificate})));
  if (cfg.include_matrices) j["report"] = io::solve_report_to_json(res.report, true);

  emit(cfg.out, dump(j), out);
  err << "robustness " << io::format_number(res.robustness) << " (" << io::format_number(seconds_since(t0))
      << " s)\n";
  const bool ok = res.report.converged && prim.converged && cert.certified;
  if (!ok) {
    err << "solver did not certify the optimum: status " << res.report.status << ", identity residual "
        << cert.identity_residual << "\n";
    for (const auto& [k, v] : res.report.residuals) err << "  " << k << " = " << v << "\n";
  }
  return ok ? kOk : kValidationFailure;
}

int cmd_probabilities(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.setup != "qtf") require_input(cfg.setup, "setup file");
  require_input(cfg.decomposition, "decomposition file");
  require_input(cfg.witness, "witness file");
  require_input(cfg.counts_in, "counts file");
  for (const auto& p : {cfg.out, cfg.summary_out}) require_output(p);
  if (cfg.repetitions <= 0) throw ParseError("--repetitions must be positive");
  if (cfg.shots < 0) throw ParseError("--shots must be positive");

  SetupOperator s = load_setup(cfg.setup);
  Decomposition d;
  std::string source;
  if (!cfg.decomposition.empty()) {
    d = io::decomposition_from_csv(io::read_file(cfg.decomposition));
    source = cfg.decomposition;
  } else if (!cfg.witness.empty()) {
    d = decompose_witness(io::witness_from_json(parse_json_file(cfg.witness)).op, cfg.restricted);
    source = cfg.witness;
  } else {
    auto res = sdp::solve_max_robustness(s, robustness_options(cfg));
    d = decompose_witness(res.witness, cfg.restricted);
    source = "optimal witness";
  }
  if (d.terms.empty()) throw DomainError("decomposition has no terms");

  auto probs = born_probabilities(s, d.terms);
  const double estimate = estimate_robustness(d.terms, probs);

  Json j;
  j["command"] = "probabilities";
  j["setup"] = cfg.setup;
  j["witness_source"] = source;
  j["restricted"] = d.restricted;
  j["terms"] = d.terms.size();
  j["estimate"] = estimate;

  if (cfg.shots > 0) {
    auto r = poisson_resample(d.terms, probs, cfg.shots, cfg.repetitions, cfg.seed);
    j["shots"] = cfg.shots;
    j["repetitions"] = cfg.repetitions;
    j["seed"] = cfg.seed;
    j["resampled_mean"] = r.mean;
    j["resampled_stddev"] = r.stddev;
    if (r.stddev > 0) j["significance"] = significance(estimate, r.stddev);
  }
  if (!cfg.counts_in.empty()) {
    auto measured = io::probabilities_from_csv(io::read_file(cfg.counts_in));
    j["estimate_from_counts"] = estimate_robustness(d.terms, measured);
  }

  const auto rows = cfg.all_terms ? born_probabilities(s, all_settings(d.restricted)) : probs;
  emit(cfg.out, io::probabilities_to_csv(rows), out);
  emit(cfg.summary_out, dump(j), cfg.out.empty() ? err : out);
  return kOk;
}

int cmd_game(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_input(cfg.pairs, "gate-pair file");
  for (const auto& p : {cfg.out, cfg.summary_out}) require_output(p);
  if (cfg.strategy != "qtf" && cfg.strategy != "switch" && cfg.strategy != "both")
    throw ParseError("--strategy must be qtf, switch or both");
  std::optional<FixedDirection> dir;
  if (cfg.pmax_sdp) dir = parse_fixed_direction(*cfg.pmax_sdp);

  std::vector<WeightedPair> pairs =
      cfg.pairs.empty() ? uniform_measure(builtin_gate_sets().all()) : io::pairs_from_json(parse_json_file(cfg.pairs));
  const Vector target = parse_target(cfg.target);
  const bool use_qtf = cfg.strategy != "switch", use_switch = cfg.strategy != "qtf";
  constexpr double tol = 1e-10;

  std::string csv = "pair,tag,p_port0,p_port1,correct";
  if (cfg.strategy == "both") csv += ",p_switch,switch_correct";
  csv += "\n";
  bool all_ok = true;
  double mean_qtf = 0, mean_switch = 0;
  for (const auto& wp : pairs) {
    const auto& p = wp.pair;
    const bool plus = p.tag == GameTag::Plus;
    PortProbabilities pp;
    double ps = 0;
    if (use_qtf) {
      pp = qtf_strategy(p, target);
      mean_qtf += wp.weight * (plus ? pp.port0 : pp.port1);
    }
    if (use_switch) {
      ps = switch_strategy(p);
      mean_switch += wp.weight * ps;
    }
    if (!use_qtf) pp = plus ? PortProbabilities{ps, 1 - ps} : PortProbabilities{1 - ps, ps};
    const bool ok = (plus ? pp.port0 : pp.port1) >= 1 - tol;
    csv += p.name.find(',') == std::string::npos ? p.name : "\"" + p.name + "\"";
    csv += "," + tag_name(p.tag) + "," + io::format_number(pp.port0) + "," + io::format_number(pp.port1) + "," +
           (ok ? "true" : "false");
    all_ok = all_ok && ok;
    if (cfg.strategy == "both") {
      const bool sok = ps >= 1 - tol;
      csv += "," + io::format_number(ps) + "," + (sok ? "true" : "false");
      all_ok = all_ok && sok;
    }
    csv += "\n";
  }

  Json j;
  j["command"] = "game";
  j["pairs"] = pairs.size();
  j["strategy"] = cfg.strategy;
  j["target"] = cfg.target;
  j["all_correct"] = all_ok;
  j["p_max"] = cfg.p_max;
  const bool qubit = std::all_of(pairs.begin(), pairs.end(), [](const WeightedPair& w) { return w.pair.u.rows() == 2; });
  if (qubit) {
    auto m = game_operators(pairs);
    auto w = game_witness(pairs, cfg.p_max);
    if (use_qtf) {
      auto sq = qtf_strategy_operator(target);
      j["qtf"] = {{"mean_success", mean_qtf},
                  {"success_from_operator", success_probability(m, sq)},
                  {"witness_value", w.inner(sq)}};
    }
    if (use_switch) {
      auto ss = switch_strategy_operator();
      j["switch"] = {{"mean_success", mean_switch},
                     {"success_from_operator", success_probability(m, ss)},
                     {"witness_value", w.inner(ss)}};
    }
    if (dir) {
      sdp::SolverOptions o = sdp::default_options();
      if (cfg.tol) o.tol = *cfg.tol;
      auto r = compute_pmax_fixed_direction(pairs, *dir, o);
      j["pmax_fixed_direction"] = {{"direction", fixed_direction_name(*dir)},
                                   {"value", r.p_max},
                                   {"gap", r.report.gap},
                                   {"converged", r.report.converged}};
    }
  }

  emit(cfg.out, csv, out);
  emit(cfg.summary_out, dump(j), cfg.out.empty() ? err : out);
  return all_ok ? kOk : kValidationFailure;
}

Json residuals_json(const std::vector<ConditionResidual>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"residual", c.residual}, {"passed", c.passed}});
  return a;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  if (cfg.setup != "qtf") require_input(cfg.setup, "setup file");
  require_input(cfg.witness, "witness file");
  require_output(cfg.out);
  const bool check_setup_requested = cfg.setup_given || (!cfg.gate_table && cfg.witness.empty() && !cfg.strategy_given);

  Json j;
  j["command"] = "validate";
  bool ok = true;

  std::optional<SetupOperator> s;
  if (check_setup_requested || !cfg.witness.empty()) s = load_setup(cfg.setup);

  if (check_setup_requested) {
    Json cones = Json::array();
    std::vector<ConeId> list{ConeId::General, ConeId::Forward, ConeId::Backward};
    if (cfg.definite) list.push_back(ConeId::Definite);
    for (ConeId c : list) {
      auto r = check_setup(*s, c);
      cones.push_back({{"cone", cone_name(c)},
                       {"passed", r.passed},
                       {"min_eigenvalue", r.min_eigenvalue},
                       {"trace", r.trace},
                       {"expected_trace", r.expected_trace},
                       {"conditions", residuals_json(r.conditions)},
                       {"note", r.note}});
      if (c == ConeId::General) ok = ok && r.passed;
    }
    j["setup"] = {{"source", cfg.setup}, {"cones", cones}};
  }

  if (cfg.strategy_given) {
    HermitianOperator op;
    if (cfg.strategy == "qtf") op = qtf_strategy_operator(parse_target(cfg.target));
    else if (cfg.strategy == "switch") op = switch_strategy_operator();
    else throw ParseError("--game-strategy must be qtf or switch");
    Json sets = Json::array();
    for (auto set : {DirectionSet::General, DirectionSet::ForwardOnly, DirectionSet::BackwardOnly}) {
      auto r = check_multipartite(op, game_roles(), set);
      sets.push_back({{"set", direction_set_name(set)},
                      {"passed", r.passed},
                      {"min_eigenvalue", r.min_eigenvalue},
                      {"conditions", residuals_json(r.conditions)}});
      if (set == DirectionSet::General) ok = ok && r.passed;
    }
    j["game_strategy"] = {{"strategy", cfg.strategy}, {"sets", sets}};
  }

  if (!cfg.witness.empty()) {
    Witness w = io::witness_from_json(parse_json_file(cfg.witness));
    double tol = cfg.tol.value_or(1e-6);
    auto v = validate_witness(*s, w, tol);
    Json wj{{"valid", v.valid},
            {"min_over_definite", v.min_over_definite},
            {"nonnegative", v.nonnegative},
            {"certificate_shift", v.certificate_shift},
            {"certificate_found", v.certificate_found},
            {"value_on_setup", w.op.inner(s->op())}};
    if (v.stored_certificate) {
      const auto& c = *v.stored_certificate;
      wj["stored_certificate"] = {{"valid", c.valid},           {"w_residual", c.w_residual},
                                  {"w0_in_lv", c.w0_in_lv},     {"w2_in_lf", c.w2_in_lf},
                                  {"w3_in_lb", c.w3_in_lb},     {"min_eig_12", c.min_eig_12},
                                  {"min_eig_13", c.min_eig_13}};
    }
    j["witness"] = wj;
    ok = ok && v.valid;
  }

  if (cfg.gate_table) {
    std::vector<WaveplateConvention> convs;
    if (cfg.convention.empty())
      convs.assign(waveplate_conventions().begin(), waveplate_conventions().end());
    else
      convs.push_back(parse_convention(cfg.convention));
    Json reports = Json::array();
    bool any = false;
    for (const auto& c : convs) {
      auto r = verify_gate_table(c);
      Json rows = Json::array();
      for (const auto& e : r.rows) rows.push_back({{"name", e.name}, {"distance", e.distance}, {"passed", e.passed}});
      reports.push_back({{"convention", c.name()}, {"passed", r.passed_count()}, {"rows", rows}});
      any = any || r.all_passed();
    }
    j["gate_table"] = reports;
    ok = ok && any;
  }

  j["passed"] = ok;
  emit(cfg.out, dump(j), out);
  return ok ? kOk : kValidationFailure;
}

}  // namespace

int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Robustness: return cmd_robustness(cfg, out, err);
      case Command::Probabilities: return cmd_probabilities(cfg, out, err);
      case Command::Game: return cmd_game(cfg, out, err);
      case Command::Validate: return cmd_validate(cfg, out, err);
      case Command::None: break;
    }
    err << "no command given\n";
    return kIoError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kIoError;
  } catch (const LayoutError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witnesses of input-output indefiniteness: robustness SDPs, decompositions and the two-gate game"};
  app.require_subcommand(1);
  RunConfig cfg;
  double shots = 0;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--tol", cfg.tol, "Solver residual tolerance (default from IODIR_TOL or built-in)");
    c->add_option("--out", cfg.out, "Output file (default: stdout)");
  };

  auto* rob = app.add_subcommand("robustness", "Solve the robustness SDP and certify duality");
  add_common(rob);
  rob->add_option("--setup", cfg.setup, "Setup JSON file or 'qtf'");
  rob->add_flag("--restricted", cfg.restricted, "Restrict the witness to |0><0|_B_it (x) I_B_ot (x) W_red");
  rob->add_option("--witness-out", cfg.witness_out, "Write the optimal witness and its certificate (JSON)");
  rob->add_option("--decomposition-out", cfg.decomposition_out, "Write the witness decomposition (CSV)");
  rob->add_flag("--include-matrices", cfg.include_matrices, "Embed solver matrices in the report");

  auto* prob = app.add_subcommand("probabilities", "Ideal Born probabilities and robustness estimates");
  add_common(prob);
  prob->add_option("--setup", cfg.setup, "Setup JSON file or 'qtf'");
  prob->add_option("--decomposition", cfg.decomposition, "Decomposition CSV");
  prob->add_option("--witness", cfg.witness, "Witness JSON to decompose");
  prob->add_flag("--restricted", cfg.restricted, "Use the restricted witness");
  prob->add_flag("--all-terms", cfg.all_terms, "Emit probabilities for every measurement setting");
  prob->add_option("--shots", shots, "Shots per setting for Poisson resampling");
  prob->add_option("--repetitions", cfg.repetitions, "Resampling repetitions")->capture_default_str();
  prob->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  prob->add_option("--counts-in", cfg.counts_in, "Measured counts/probabilities CSV to replay");
  prob->add_option("--summary-out", cfg.summary_out, "Summary JSON file (default: stderr, or stdout with --out)");

  auto* game = app.add_subcommand("game", "Two-gate discrimination game");
  add_common(game);
  game->add_option("--pairs", cfg.pairs, "Gate-pair JSON file (default: built-in sets, uniform weights)");
  game->add_option("--strategy", cfg.strategy, "qtf, switch or both")->capture_default_str();
  game->add_option("--target", cfg.target, "Target state: 0, 1, +, -, +i, -i")->capture_default_str();
  game->add_option("--pmax", cfg.p_max, "p_max used in the game witness")->capture_default_str();
  game->add_option("--pmax-sdp", cfg.pmax_sdp, "Fixed-direction bound: forward-only, backward-only or convex-hull")
      ->expected(0, 1)
      ->default_str("convex-hull");
  game->add_option("--summary-out", cfg.summary_out, "Summary JSON file (default: stderr, or stdout with --out)");
  game->add_option("--seed", cfg.seed, "Unused; accepted for uniformity");

  auto* val = app.add_subcommand("validate", "Cone checks, witness validation and the waveplate table");
  add_common(val);
  auto* setup_opt = val->add_option("--setup", cfg.setup, "Setup JSON file or 'qtf'");
  val->add_flag("--definite", cfg.definite, "Also decide definite-cone membership by SDP");
  val->add_option("--witness", cfg.witness, "Witness JSON (checked against the setup's roles)");
  auto* strat_opt = val->add_option("--game-strategy", cfg.strategy, "Check a game strategy operator: qtf or switch");
  val->add_option("--target", cfg.target, "Target state for the qtf game strategy");
  val->add_flag("--gate-table", cfg.gate_table, "Verify the waveplate angle table");
  val->add_option("--convention", cfg.convention, "Waveplate convention: s+p+, s+p-, s-p+ or s-p-");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kIoError;
  }

  if (rob->parsed()) cfg.command = Command::Robustness;
  if (prob->parsed()) cfg.command = Command::Probabilities;
  if (game->parsed()) cfg.command = Command::Game;
  if (val->parsed()) {
    cfg.command = Command::Validate;
    cfg.setup_given = setup_opt->count() > 0;
    cfg.strategy_given = strat_opt->count() > 0;
  }
  if (cfg.pmax_sdp && cfg.pmax_sdp->empty()) cfg.pmax_sdp = "convex-hull";
  if (shots < 0 || shots != std::floor(shots) || shots > 9e18) {
    err << "error: --shots must be a nonnegative integer\n";
    return kIoError;
  }
  cfg.shots = static_cast<std::int64_t>(shots);
  return run_config(cfg, out, err);
}

}  // namespace iodir::cli
