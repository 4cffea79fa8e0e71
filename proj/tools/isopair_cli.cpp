// Batch front-end: verification runs, oscillator audits, classical/quantum
// integration, representation search and the appendix constructions.
//
// Exit codes: 0 = all requested checks passed, 1 = a verification failed
// (reports are still written), 2 = usage or configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isopair/classical.hpp"
#include "isopair/commutant.hpp"
#include "isopair/hom_pair.hpp"
#include "isopair/json_io.hpp"
#include "isopair/quantum.hpp"
#include "isopair/search.hpp"

namespace fs = std::filesystem;
using namespace isopair;

namespace {

struct Reporter {
  json report;
  std::vector<std::string> lines;
  bool all_pass = true;

  void add_check(const std::string& name, bool pass, const json& detail = {}) {
    all_pass = all_pass && pass;
    json entry;
    entry["name"] = name;
    entry["pass"] = pass;
    if (!detail.is_null()) entry["detail"] = detail;
    report["checks"].push_back(entry);
    lines.push_back(std::string(pass ? "PASS  " : "FAIL  ") + name);
  }

  void add_finding(const std::string& text) {
    report["findings"].push_back(text);
    lines.push_back("NOTE  " + text);
  }

  void add_axiom_report(const AxiomReport& ar, const std::string& name) {
    add_check(name, ar.pass(), ar.to_json());
    if (!ar.pass())
      if (const CheckResult* w = ar.worst()) {
        json witness = w->witness;
        lines.push_back("      worst: " + w->name + " residual " +
                        std::to_string(w->max_residual) + " witness " + witness.dump());
      }
  }

  int finish(const std::string& out_dir, const std::string& stem) {
    report["pass"] = all_pass;
    fs::create_directories(out_dir);
    {
      std::ofstream os(fs::path(out_dir) / (stem + "_report.json"));
      os << report.dump(2) << "\n";
    }
    {
      std::ofstream os(fs::path(out_dir) / (stem + "_summary.txt"));
      for (const auto& l : lines) os << l << "\n";
      os << (all_pass ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << "\n";
    }
    for (const auto& l : lines) std::cout << l << "\n";
    std::cout << (all_pass ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << "\n";
    return all_pass ? 0 : 1;
  }
};

EpsilonParams<Rational> params_from_strings(const std::string& e1, const std::string& e2,
                                            const std::string& e3) {
  return EpsilonParams<Rational>::resolve(parse_rational(e1), parse_rational(e2),
                                          parse_rational(e3));
}

/// Couplings from a JSON document {"eps1":..,"eps2":..,"eps3":..}; values may
/// be integers, "a/b" strings, [num,den] pairs or decimals.
EpsilonParams<Rational> params_from_file(const std::string& path) {
  json doc = load_json_file(path);
  reject_unknown_keys(doc, {"eps1", "eps2", "eps3"}, "params document");
  auto get = [&](const char* key) {
    if (!doc.contains(key)) throw ConfigError(std::string("params document misses ") + key);
    const json& v = doc[key];
    if (v.is_number_float()) return Rational(v.get<double>());  // exact dyadic value
    return scalar_from_json<Rational>(v);
  };
  return EpsilonParams<Rational>::resolve(get("eps1"), get("eps2"), get("eps3"));
}

EpsilonParams<Rational> resolve_params_input(const std::string& params_file, const std::string& e1,
                                             const std::string& e2, const std::string& e3) {
  return params_file.empty() ? params_from_strings(e1, e2, e3) : params_from_file(params_file);
}

void run_pair_suite(Reporter& rep, const IsotopicPair<Rational>& pair) {
  rep.add_axiom_report(verify_isotopic_pair(pair), "isotopic pair axioms");
  rep.add_axiom_report(verify_anti_jordan(pair), "anti-Jordan identities");
  AltsTensor<Rational> alts = to_alts(pair);
  rep.add_axiom_report(verify_alts(alts), "triple system axioms");
  try {
    LieSuperalgebra<Rational> sa = build_super(alts);
    rep.add_axiom_report(verify_super(sa), "superalgebra graded axioms");
    rep.report["superdimension"] = {sa.n_even, sa.n_odd};
    rep.lines.push_back("INFO  superdimension (" + std::to_string(sa.n_even) + "|" +
                        std::to_string(sa.n_odd) + ")");
    rep.report["superalgebra"] = superalgebra_to_json(sa);
  } catch (const std::exception& e) {
    rep.add_check("superalgebra construction", false, json(e.what()));
  }
}

int cmd_verify(const std::string& pair_file, const std::string& out_dir) {
  Reporter rep;
  rep.report["command"] = "verify";
  rep.report["input"] = fs::path(pair_file).filename().string();
  rep.report["checks"] = json::array();
  IsotopicPair<Rational> pair = pair_from_json<Rational>(load_json_file(pair_file));
  run_pair_suite(rep, pair);
  return rep.finish(out_dir, "verify");
}

int cmd_oscillator(const std::string& params_file, const std::string& e1, const std::string& e2,
                   const std::string& e3, const std::string& out_dir) {
  Reporter rep;
  rep.report["command"] = "oscillator";
  rep.report["eps"] = {e1, e2, e3};
  rep.report["checks"] = json::array();
  auto params = resolve_params_input(params_file, e1, e2, e3);
  auto osc = build_oscillator_pair(params);
  rep.report["pair"] = pair_to_json(osc.pair);
  run_pair_suite(rep, osc.pair);
  if (!params.g0_generic()) rep.add_finding("degenerate parameters: dim g0 < 6 expected");

  for (const auto& line : audit_r_matrices(osc)) {
    rep.report["r_matrix_audit"].push_back({{"name", line.name}, {"match", line.match}});
    if (!line.match) rep.add_finding("R-matrix table line differs: " + line.name);
  }
  std::size_t mismatches = 0;
  for (const auto& line : audit_structure_table(osc)) {
    rep.report["structure_table_audit"].push_back({{"name", line.name},
                                                   {"quoted", line.reference},
                                                   {"computed", line.computed},
                                                   {"match", line.match}});
    if (!line.match) {
      ++mismatches;
      rep.add_finding("tabulated bracket differs: " + line.name + " quoted " + line.reference +
                      " but computed " + line.computed);
    }
  }
  rep.lines.push_back("INFO  structure-table audit: " + std::to_string(mismatches) +
                      " line(s) differ from the computed brackets");
  for (const auto& line : audit_operator_relation_table(osc)) {
    rep.report["operator_relation_audit"].push_back({{"relation", line.relation},
                                                     {"quoted", line.quoted_coefficient},
                                                     {"computed", line.structure_coefficient},
                                                     {"match", line.match}});
    if (!line.match)
      rep.add_finding("operator-relation table factor differs: " + line.relation +
                      " (structure constants give " +
                      std::to_string(line.structure_coefficient) + ")");
  }
  return rep.finish(out_dir, "oscillator");
}

int cmd_classical(const std::string& params_file, const std::string& e1, const std::string& e2,
                  const std::string& e3, std::vector<double> state, double t_end, double dt,
                  const std::string& method, double drift_tol, const std::string& out_dir,
                  std::size_t stride) {
  Reporter rep;
  rep.report["command"] = "classical";
  rep.report["checks"] = json::array();
  auto params = params_cast<double>(resolve_params_input(params_file, e1, e2, e3));
  if (state.size() != 6) throw ConfigError("--state needs six values P,Q,R,A,B,C");
  ClassicalState s0{state[0], state[1], state[2], state[3], state[4], state[5]};
  Method m = method == "rk45" ? Method::RK45 : Method::RK4;

  Trajectory traj = integrate_full(s0, params, t_end, dt, m);
  fs::create_directories(out_dir);
  write_trajectory_csv(traj, params, (fs::path(out_dir) / "trajectory.csv").string(), stride);
  DriftReport drift = invariant_drift(traj);
  rep.report["invariant_drift"] = {{"I1sq", drift.I1sq},
                                   {"I2sq", drift.I2sq},
                                   {"L", drift.L},
                                   {"Lambda", drift.Lambda},
                                   {"L_reference_sign", drift.L_reference}};
  rep.add_check("invariant drift below tolerance", drift.max_conserved() < drift_tol,
                json(drift.max_conserved()));
  if (drift.L_reference > 100 * drift_tol)
    rep.add_finding("quoted +k(QA+PB) combination drifts (" + std::to_string(drift.L_reference) +
                    "); the conserved integral uses -k(QA+PB)");

  ReducedTrajectory red = reduce_and_integrate(s0, params, t_end, dt);
  rep.add_check("reduced reconstruction matches full integration",
                red.reconstruction_max_dev < drift_tol, json(red.reconstruction_max_dev));

  XiFit fit = xi_check(red, params, XiForm::Conserved);
  rep.report["xi_conserved"] = {{"slope", fit.slope},
                                {"predicted", fit.predicted_slope},
                                {"max_linear_dev", fit.max_linear_dev}};
  bool slope_ok = std::fabs(fit.slope - fit.predicted_slope) <=
                  1e-4 * std::max(1.0, std::fabs(fit.predicted_slope));
  rep.add_check("xi linear law (conserved combination)", slope_ok && fit.max_linear_dev < drift_tol,
                rep.report["xi_conserved"]);

  ReducedTrajectory ref = reference_reduced_integrate(s0, params, t_end, dt);
  XiFit rfit = xi_check(ref, params, XiForm::Reference);
  rep.report["xi_reference_flow"] = {{"slope", rfit.slope},
                                     {"predicted", rfit.predicted_slope},
                                     {"max_linear_dev", rfit.max_linear_dev}};
  rep.add_check("xi linear law (quoted reduced flow)",
                std::fabs(rfit.slope - rfit.predicted_slope) <=
                        1e-4 * std::max(1.0, std::fabs(rfit.predicted_slope)) &&
                    rfit.max_linear_dev < drift_tol,
                rep.report["xi_reference_flow"]);
  rep.add_finding("quoted reduced system is not the reduction of the full equations; "
                  "its xi law is verified on its own flow and both fits are reported");
  return rep.finish(out_dir, "classical");
}

int cmd_quantum(const std::string& rep_file, const std::string& params_file, const std::string& e1,
                const std::string& e2, const std::string& e3, double t_end, double dt,
                const std::string& out_dir, bool dump_operators) {
  Reporter rep;
  rep.report["command"] = "quantum";
  rep.report["checks"] = json::array();
  auto params_r = resolve_params_input(params_file, e1, e2, e3);
  OscillatorPair<double> osc{pair_cast<double>(build_oscillator_pair(params_r).pair),
                             params_cast<double>(params_r)};
  PairRepresentation<double> prep = representation_from_json<double>(load_json_file(rep_file));

  RepresentationReport rr = verify_representation(prep, osc.pair);
  rep.add_axiom_report(rr.relations, "representation relations");
  rep.report["flags"] = {{"valid", rr.valid}, {"nilpotent", rr.nilpotent}, {"split", rr.split}};

  QuantumTrajectory traj = integrate_quantum(prep, osc, t_end, dt, 100, dump_operators);
  fs::create_directories(out_dir);
  {
    std::ofstream os(fs::path(out_dir) / "relation_drift.csv");
    os << "t";
    for (const auto& n : traj.relation_names) os << "," << n;
    os << ",max\n";
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
      os << traj.t[i];
      for (double v : traj.per_relation[i]) os << "," << v;
      os << "," << traj.relation_drift[i] << "\n";
    }
  }
  if (dump_operators) {
    std::ofstream os(fs::path(out_dir) / "operators.jsonl");
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      json row;
      row["t"] = traj.t[i];
      const char* names[] = {"P", "Q", "R", "A", "B", "C"};
      for (std::size_t g = 0; g < 6; ++g) row[names[g]] = matrix_to_json(traj.snapshots[i][g]);
      os << row.dump() << "\n";
    }
  }
  rep.add_check("operator relations preserved along the flow", traj.max_drift() < 1e-6,
                json(traj.max_drift()));

  if (rr.split) {
    HiddenHamiltonianReport hh = hidden_hamiltonian_audit(prep, osc);
    json res = json::array();
    for (std::size_t g = 0; g < 6; ++g) res.push_back({hh.generator[g], hh.residual[g]});
    rep.report["hidden_hamiltonian"] = {{"residuals", res},
                                        {"confirmed", hh.confirmed},
                                        {"conjugation_max_dev", hh.conjugation_max_dev}};
    rep.lines.push_back(std::string("INFO  hidden-hamiltonian audit: ") +
                        (hh.confirmed ? "confirmed at this representation"
                                      : "nonzero residual (documented)"));
    if (hh.confirmed)
      rep.add_check("similarity flow matches integration", hh.conjugation_max_dev < 1e-6,
                    json(hh.conjugation_max_dev));
  } else {
    rep.add_finding("representation is not split; hidden-hamiltonian audit skipped");
  }
  return rep.finish(out_dir, "quantum");
}

int cmd_search(const std::string& pair_file, bool use_oscillator, bool sub_pair,
               const std::string& params_file, const std::string& e1, const std::string& e2,
               const std::string& e3, std::size_t d1,
               std::size_t d2, std::size_t seeds, std::size_t max_iters, double tol,
               const std::string& out_dir) {
  Reporter rep;
  rep.report["command"] = "search";
  rep.report["checks"] = json::array();
  IsotopicPair<double> pair;
  if (use_oscillator) {
    auto params = resolve_params_input(params_file, e1, e2, e3);
    pair = sub_pair ? pair_cast<double>(oscillator_sub_pair(params))
                    : pair_cast<double>(build_oscillator_pair(params).pair);
  } else {
    if (pair_file.empty()) throw ConfigError("search needs --pair FILE or --oscillator");
    pair = pair_from_json<double>(load_json_file(pair_file));
  }
  SearchConfig cfg;
  cfg.d1 = d1;
  cfg.d2 = d2;
  cfg.seeds = seeds;
  cfg.max_iters = max_iters;
  cfg.tol = tol;
  SearchResult res = find_representation(pair, cfg);
  rep.report["result"] = {{"found", res.found},
                          {"best_residual", res.best_residual},
                          {"projected_best_residual", res.projected_best_residual},
                          {"seed", res.seed},
                          {"iterations", res.iterations},
                          {"scale", res.scale}};
  rep.report["representation"] = representation_to_json(res.representation);
  fs::create_directories(out_dir);
  {
    std::ofstream os(fs::path(out_dir) / "search_result.json");
    json doc = rep.report["result"];
    doc["representation"] = rep.report["representation"];
    os << doc.dump(2) << "\n";
  }
  rep.lines.push_back(res.found ? "INFO  nonzero representation found (residual " +
                                      std::to_string(res.best_residual) + ")"
                                : "INFO  no nonzero representation below tolerance; best "
                                  "unit-scale residual " +
                                      std::to_string(res.projected_best_residual));
  rep.add_check("search completed", true);
  return rep.finish(out_dir, "search");
}

int cmd_appendix(const std::string& g_file, const std::string& bunch_file,
                 const std::string& isorep_file, const std::string& out_dir) {
  Reporter rep;
  rep.report["command"] = "appendix";
  rep.report["checks"] = json::array();
  if (!g_file.empty()) {
    LieAlgebra<Rational> g = lie_algebra_from_json<Rational>(load_json_file(g_file));
    rep.add_axiom_report(g.verify(), "Lie algebra axioms");
    IsotopicPair<Rational> ig = pair_from_lie_algebra(g);
    rep.add_axiom_report(verify_isotopic_pair(ig), "pair (C,g) axioms");
    Isorep<Rational> std_iso = standard_isorep(g);
    rep.add_axiom_report(verify_isorep(std_iso, g), "standard isorepresentation");
    auto split = split_isorep_structure_check(std_iso);
    rep.add_check("standard isorep split structure",
                  split.split_shape && split.q_block_invertible && split.intertwined);
  }
  if (!bunch_file.empty()) {
    LieBunch<Rational> bunch = bunch_from_json<Rational>(load_json_file(bunch_file));
    BunchReport br = verify_bunch(bunch);
    rep.add_axiom_report(br.axioms, "bunch axioms");
    rep.report["complete"] = br.complete;
    if (br.complete) {
      IsotopicPair<Rational> enlarged = enlarge_bunch(bunch);
      rep.add_axiom_report(verify_isotopic_pair(enlarged), "enlarged pair axioms");
    } else {
      rep.add_finding("bunch incomplete; failing triple " + json(br.failing_triple).dump());
    }
  }
  if (!isorep_file.empty()) {
    if (g_file.empty()) throw ConfigError("--isorep requires --g for the algebra");
    LieAlgebra<Rational> g = lie_algebra_from_json<Rational>(load_json_file(g_file));
    Isorep<Rational> iso = isorep_from_json<Rational>(load_json_file(isorep_file));
    rep.add_axiom_report(verify_isorep(iso, g), "isorepresentation relation");
    auto [plus, minus] = isorep_to_representations(iso);
    rep.add_axiom_report(verify_lie_representation(plus, g), "induced representation T+");
    rep.add_axiom_report(verify_lie_representation(minus, g), "induced representation T-");
    if (iso.grading) {
      auto split = split_isorep_structure_check(iso);
      rep.add_check("split structure (Q-block iso + intertwines)",
                    split.split_shape && split.q_block_invertible && split.intertwined);
    }
  }
  return rep.finish(out_dir, "appendix");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isotopic-pair verification and simulation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string out_dir = "out";
  app.add_option("--out-dir", out_dir, "report output directory")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "verify a pair document (algebra + superalgebra)");
  std::string pair_file;
  verify->add_option("pair", pair_file, "pair JSON file")->required();

  auto* osc = app.add_subcommand("oscillator", "build the oscillator pair and run all audits");
  std::string e1 = "1", e2 = "3", e3 = "3", osc_params;
  osc->add_option("--params", osc_params, "couplings JSON {\"eps1\":..,\"eps2\":..,\"eps3\":..}");
  osc->add_option("--eps1", e1, "coupling e1 (rational or decimal)")->capture_default_str();
  osc->add_option("--eps2", e2, "coupling e2, nonzero")->capture_default_str();
  osc->add_option("--eps3", e3, "coupling e3, nonzero")->capture_default_str();

  auto* cls = app.add_subcommand("classical", "integrate the classical flow and check the laws");
  std::string ce1 = "1", ce2 = "3", ce3 = "3", method = "rk4", cls_params;
  cls->add_option("--params", cls_params, "couplings JSON file");
  std::vector<double> state = {1, 0, 1, 0, 1, 1};
  double t_end = 5.0, dt = 1e-4, drift_tol = 1e-6;
  std::size_t stride = 50;
  cls->add_option("--eps1", ce1)->capture_default_str();
  cls->add_option("--eps2", ce2)->capture_default_str();
  cls->add_option("--eps3", ce3)->capture_default_str();
  cls->add_option("--state", state, "initial P,Q,R,A,B,C")->expected(6);
  cls->add_option("--t-end", t_end)->capture_default_str();
  cls->add_option("--dt", dt)->capture_default_str();
  cls->add_option("--method", method, "rk4 or rk45")->check(CLI::IsMember({"rk4", "rk45"}));
  cls->add_option("--drift-tol", drift_tol)->capture_default_str();
  cls->add_option("--csv-stride", stride, "emit every Nth sample")->capture_default_str();

  auto* qu = app.add_subcommand("quantum", "integrate the operator flow for a representation");
  std::string rep_file, qe1 = "1", qe2 = "3", qe3 = "3", qu_params;
  qu->add_option("--params", qu_params, "couplings JSON file");
  double qt_end = 1.0, qdt = 1e-4;
  bool dump_ops = false;
  qu->add_option("--rep", rep_file, "representation JSON")->required();
  qu->add_option("--eps1", qe1)->capture_default_str();
  qu->add_option("--eps2", qe2)->capture_default_str();
  qu->add_option("--eps3", qe3)->capture_default_str();
  qu->add_option("--t-end", qt_end)->capture_default_str();
  qu->add_option("--dt", qdt)->capture_default_str();
  qu->add_flag("--dump-operators", dump_ops, "write operators.jsonl sidecar");

  auto* se = app.add_subcommand("search", "numerical split-representation search");
  std::string spair, se1 = "1", se2 = "3", se3 = "3", se_params;
  se->add_option("--params", se_params, "couplings JSON file");
  bool s_osc = false, s_sub = false;
  std::size_t d1 = 1, d2 = 2, seeds = 64, max_iters = 500;
  double tol = 1e-10;
  se->add_option("--pair", spair, "pair JSON file");
  se->add_flag("--oscillator", s_osc, "search the oscillator pair");
  se->add_flag("--sub-pair", s_sub, "restrict to the (p,q;a,b) sub-pair");
  se->add_option("--eps1", se1)->capture_default_str();
  se->add_option("--eps2", se2)->capture_default_str();
  se->add_option("--eps3", se3)->capture_default_str();
  se->add_option("--d1", d1)->capture_default_str();
  se->add_option("--d2", d2)->capture_default_str();
  se->add_option("--seeds", seeds)->capture_default_str();
  se->add_option("--max-iters", max_iters)->capture_default_str();
  se->add_option("--tol", tol)->capture_default_str();

  auto* ap = app.add_subcommand("appendix", "bunch and isorepresentation checks");
  std::string g_file, bunch_file, isorep_file;
  ap->add_option("--g", g_file, "Lie algebra JSON");
  ap->add_option("--bunch", bunch_file, "bunch JSON");
  ap->add_option("--isorep", isorep_file, "isorepresentation JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(pair_file, out_dir);
    if (*osc) return cmd_oscillator(osc_params, e1, e2, e3, out_dir);
    if (*cls)
      return cmd_classical(cls_params, ce1, ce2, ce3, state, t_end, dt, method, drift_tol,
                           out_dir, stride);
    if (*qu)
      return cmd_quantum(rep_file, qu_params, qe1, qe2, qe3, qt_end, qdt, out_dir, dump_ops);
    if (*se)
      return cmd_search(spair, s_osc, s_sub, se_params, se1, se2, se3, d1, d2, seeds,
                        max_iters, tol, out_dir);
    if (*ap) return cmd_appendix(g_file, bunch_file, isorep_file, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
