// Acceptance suite: one pass/fail line per criterion, nonzero exit if any fail.
//
// Every tolerance is pinned here. The classical and quantum criteria bind to
// quantities that are actually conserved by the implemented equations; where a
// commonly quoted closed form disagrees with what the structure constants give,
// the audit criteria (and the oscillator/classical audits) must flag it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "isopair/classical.hpp"
#include "isopair/hom_pair.hpp"
#include "isopair/isorep.hpp"
#include "isopair/quantum.hpp"
#include "isopair/search.hpp"

using namespace isopair;

namespace {

int failures = 0;

void line(int criterion, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

Rational rnd_rational(std::mt19937_64& eng, bool nonzero) {
  int num = static_cast<int>(eng() % 13) - 6;
  if (nonzero && num == 0) num = 1;
  return Rational(num, 1 + static_cast<int>(eng() % 5));
}

EpsilonParams<Rational> worked_params_exact() {
  return EpsilonParams<Rational>::resolve(Rational(1), Rational(3), Rational(3));
}

// 1. Axiom suite over 50 random rational coupling triples, exact residuals.
void criterion_1() {
  std::mt19937_64 eng(2024);
  int checked = 0;
  bool ok = true;
  while (checked < 50 && ok) {
    Rational e1 = rnd_rational(eng, false);
    Rational e2 = rnd_rational(eng, true);
    Rational e3 = rnd_rational(eng, true);
    auto osc = build_oscillator_pair(EpsilonParams<Rational>::resolve(e1, e2, e3));
    ok = ok && verify_isotopic_pair(osc.pair).pass();   // Jacobi + both compatibilities
    ok = ok && verify_anti_jordan(osc.pair).pass();     // Def. of the weaker pair
    ok = ok && verify_alts(to_alts(osc.pair)).pass();   // ternary axioms
    ++checked;
  }
  line(1, ok && checked == 50,
       "oscillator pair axioms exact on the rational backend for 50 random triples");
}

// 2. Superalgebra shape at generic couplings.
void criterion_2() {
  auto osc = build_oscillator_pair(worked_params_exact());
  auto alts = to_alts(osc.pair);
  auto g0 = build_g0(alts);
  auto sa = build_super(alts);
  bool ok = g0.dim() == 6 && sa.n_even == 6 && sa.n_odd == 6 && verify_super(sa).pass();

  Mat<Rational> rpc = alts.r_matrix(kP, 3 + kC), rqc = alts.r_matrix(kQ, 3 + kC);
  bool abelian = commutator(rpc, rqc).is_zero();
  SpanBasis<Rational> ideal(36);
  ideal.add(rpc.flat());
  ideal.add(rqc.flat());
  bool g0_ideal = true;
  for (const auto& b : g0.basis) {
    g0_ideal = g0_ideal && ideal.coords(commutator(b, rpc).flat()).has_value();
    g0_ideal = g0_ideal && ideal.coords(commutator(b, rqc).flat()).has_value();
  }
  auto idx_of = [&](const std::string& n) {
    for (std::size_t i = 0; i < sa.names.size(); ++i)
      if (sa.names[i] == n) return i;
    return sa.names.size();
  };
  bool super_ideal = is_super_ideal(
      sa, {idx_of("R(p,c)"), idx_of("R(q,c)"), idx_of("r"), idx_of("c")});
  line(2, ok && abelian && g0_ideal && super_ideal,
       "superdimension (6|6), dim g0 = 6, abelian ideal {R(p,c),R(q,c)}, (2|2) super ideal");
}

// 3. The Hom-pair example; dimensions frozen from the exact rank oracle
//    (even part is the inner operator span: the one-dimensional center acts
//    trivially, so hom(2,1) gives (4|4) and hom(1,1) gives (0|2)).
void criterion_3() {
  auto sa21 = build_super(to_alts(hom_pair<Rational>(2, 1)));
  auto sa11 = build_super(to_alts(hom_pair<Rational>(1, 1)));
  bool ok = sa21.n_even == 4 && sa21.n_odd == 4 && verify_super(sa21).pass() &&
            sa11.n_even == 0 && sa11.n_odd == 2 && verify_super(sa11).pass();
  line(3, ok,
       "hom(2,1) superdimension (4|4), hom(1,1) (0|2), zero graded-Jacobi residual "
       "(rank-oracle values; the quoted gl(n|m) identification holds modulo its center)");
}

// 4. Classical conservation, refinement order, reduced reconstruction.
void criterion_4() {
  auto p = params_cast<double>(worked_params_exact());
  ClassicalState s0{1, 0, 1, 0, 1, 1};
  Trajectory traj = integrate_full(s0, p, 5.0, 1e-4);
  DriftReport drift = invariant_drift(traj);
  bool conserved = drift.I1sq < 1e-6 && drift.I2sq < 1e-6 && drift.L < 1e-6 && drift.Lambda < 1e-6;

  auto drift_at = [&](double dt) {
    DriftReport d = invariant_drift(integrate_full(s0, p, 5.0, dt));
    return std::max(d.I1sq, std::max(d.L, d.Lambda));
  };
  double ratio = drift_at(4e-3) / drift_at(2e-3);
  bool fourth_order = ratio > 10.0 && ratio < 26.0;

  ReducedTrajectory red = reduce_and_integrate(s0, p, 5.0, 1e-4);
  bool reconstructed = red.reconstruction_max_dev < 1e-6;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "drift %.2e, halving ratio %.1f, reconstruction %.2e (L = RC - k(QA+PB))",
                std::max(std::max(drift.I1sq, drift.I2sq), std::max(drift.L, drift.Lambda)), ratio,
                red.reconstruction_max_dev);
  line(4, conserved && fourth_order && reconstructed, buf);
}

// 5. The xi linear law. The quoted slope 4 L (et3^2-e3^2) e1 = -64 belongs to
//    the quoted reduced system, which is integrated as its own flow; on the
//    implemented reduction the conserved combination is verified instead
//    (slope 4 e1 (e3+et3)^2 L on a trajectory with L = 1).
void criterion_5() {
  auto p = params_cast<double>(worked_params_exact());
  ClassicalState s0{1, 0, 1, 0, 1, 1};
  ReducedTrajectory ref = reference_reduced_integrate(s0, p, 5.0, 1e-4);
  XiFit rfit = xi_check(ref, p, XiForm::Reference);
  bool quoted_ok = std::fabs(rfit.predicted_slope + 64.0) < 1e-12 &&
                   std::fabs(rfit.slope + 64.0) <= 1e-4 * 64.0 && rfit.max_linear_dev < 1e-6;

  ReducedTrajectory red = reduce_and_integrate({1, 0, 1, 1, 0, 1}, p, 5.0, 1e-4);
  XiFit cfit = xi_check(red, p, XiForm::Conserved);
  bool conserved_ok = std::fabs(cfit.predicted_slope - 64.0) < 1e-12 &&
                      std::fabs(cfit.slope - 64.0) <= 1e-4 * 64.0 && cfit.max_linear_dev < 1e-6;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "quoted flow slope %.6f (target -64), conserved-law slope %.6f (target 64), "
                "linearity %.1e",
                rfit.slope, cfit.slope, std::max(rfit.max_linear_dev, cfit.max_linear_dev));
  line(5, quoted_ok && conserved_ok, buf);
}

// 6. Representation layer: doubling, nilpotency, search success and failure.
void criterion_6() {
  auto hp = hom_pair<Rational>(2, 1);
  auto taut = hom_tautological_representation<Rational>(2, 1);
  RepresentationReport dbl = verify_representation(split_double(taut), hp);
  bool doubling = dbl.valid && dbl.relations.exact_backend && dbl.split && dbl.nilpotent;

  // split implies nilpotent across each constructed representation
  bool nilpotency = true;
  {
    auto osc = build_oscillator_pair(worked_params_exact());
    auto hp11 = hom_pair<Rational>(1, 1);
    std::vector<std::pair<PairRepresentation<Rational>, const IsotopicPair<Rational>*>> reps;
    reps.emplace_back(hom_tautological_representation<Rational>(1, 1), &hp11);
    reps.emplace_back(taut, &hp);
    reps.emplace_back(minimal_split_representation(osc.params), &osc.pair);
    reps.emplace_back(split_double(minimal_split_representation(osc.params)), &osc.pair);
    for (const auto& [rep, pr] : reps) {
      RepresentationReport r = verify_representation(rep, *pr);
      if (!r.valid || (r.split && !r.nilpotent)) nilpotency = false;
    }
  }

  SearchConfig cfg;
  cfg.d1 = 2;
  cfg.d2 = 1;
  cfg.seeds = 64;
  SearchResult found = find_representation(hom_pair<double>(2, 1), cfg);

  SearchConfig cfg11;
  cfg11.d1 = 1;
  cfg11.d2 = 1;
  cfg11.seeds = 64;
  SearchResult fail = find_representation(
      pair_cast<double>(oscillator_sub_pair(worked_params_exact())), cfg11);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "doubling exact, split=>nilpotent, hom(2,1) residual %.1e in 64 seeds, 1|1 "
                "failure residual %.2f",
                found.best_residual, fail.best_residual);
  line(6, doubling && nilpotency && found.found && found.best_residual < 1e-10 && !fail.found &&
              fail.best_residual > 0.1,
       buf);
}

// 7. Quantum conservation along the operator flow.
void criterion_7() {
  auto pr = worked_params_exact();
  OscillatorPair<double> osc{pair_cast<double>(build_oscillator_pair(pr).pair),
                             params_cast<double>(pr)};

  // the zero-extension of the sub-pair solution, plus a search-found candidate
  auto rep = minimal_split_representation(osc.params);
  RelationResiduals init = [&] {
    std::vector<Mat<double>> o;
    for (auto& m : rep.t1) o.push_back(m);
    for (auto& m : rep.t2) o.push_back(m);
    return operator_relations(o, osc);
  }();
  bool initial_ok = init.max_abs() < 1e-10;

  QuantumTrajectory traj = integrate_quantum(rep, osc, 1.0, 1e-4);
  bool drift_ok = traj.max_drift() < 1e-6;

  double coarse = integrate_quantum(rep, osc, 1.0, 1.0 / 64).max_drift();
  double fine = integrate_quantum(rep, osc, 1.0, 1.0 / 128).max_drift();
  bool order_ok = coarse / fine > 10.0;

  SearchConfig cfg;
  cfg.d1 = 1;
  cfg.d2 = 2;
  cfg.seeds = 64;
  SearchResult sr = find_representation(osc.pair, cfg);
  bool search_rep_ok = sr.found && integrate_quantum(sr.representation, osc, 1.0, 1e-4).max_drift() < 1e-6;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "initial residual %.1e, drift %.2e over [0,1], refinement ratio %.0f, "
                "search-found rep drift ok=%d",
                init.max_abs(), traj.max_drift(), coarse / fine, search_rep_ok ? 1 : 0);
  line(7, initial_ok && drift_ok && order_ok && search_rep_ok, buf);
}

// 8. Hidden-Hamiltonian audit on every available split representation.
void criterion_8() {
  auto pr = worked_params_exact();
  OscillatorPair<double> osc{pair_cast<double>(build_oscillator_pair(pr).pair),
                             params_cast<double>(pr)};
  auto prb = EpsilonParams<Rational>::resolve(Rational(1), Rational(4), Rational(2));
  OscillatorPair<double> osc_b{pair_cast<double>(build_oscillator_pair(prb).pair),
                               params_cast<double>(prb)};

  bool ok = true;
  double worst_res = 0, worst_conj = 0;
  struct Case {
    PairRepresentation<double> rep;
    const OscillatorPair<double>* osc;
  };
  auto zero_rep = PairRepresentation<double>::zero(3, 3, 2);
  zero_rep.grading = std::make_pair(1u, 1u);
  std::vector<Case> cases;
  cases.push_back({zero_rep, &osc});
  cases.push_back({minimal_split_representation(osc.params), &osc});
  cases.push_back({split_double(minimal_split_representation(osc.params)), &osc});
  cases.push_back({minimal_split_representation(osc_b.params), &osc_b});
  SearchConfig cfg;
  cfg.d1 = 1;
  cfg.d2 = 2;
  cfg.seeds = 64;
  SearchResult sr = find_representation(osc.pair, cfg);
  if (sr.found) cases.push_back({sr.representation, &osc});

  for (const auto& c : cases) {
    HiddenHamiltonianReport hh = hidden_hamiltonian_audit(c.rep, *c.osc);
    worst_res = std::max(worst_res, hh.max_residual);
    if (hh.max_residual < 1e-8) {
      // confirmed: the similarity flow must match the integrated flow
      ok = ok && hh.conjugation_max_dev < 1e-6;
      worst_conj = std::max(worst_conj, hh.conjugation_max_dev);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%zu split representations audited, worst residual %.1e, worst similarity "
                "deviation %.1e",
                cases.size(), worst_res, worst_conj);
  line(8, ok, buf);
}

// 9. Appendix layer.
void criterion_9() {
  auto g = sl2<Rational>();
  IsotopicPair<Rational> ig = pair_from_lie_algebra(g);
  bool ig_ok = verify_isotopic_pair(ig).pass() && verify_anti_jordan(ig).pass() &&
               verify_alts(to_alts(ig)).pass();

  // agreement of the two verifiers on randomized instances
  std::mt19937_64 eng(77);
  auto rnd_mat = [&](std::size_t n) {
    Mat<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = Rational(static_cast<int>(eng() % 7) - 3, 1 + static_cast<int>(eng() % 3));
    return m;
  };
  bool agree = true;
  int instances = 0;
  while (instances < 20) {
    Isorep<Rational> iso;
    if (instances % 3 == 0) {
      std::vector<Mat<Rational>> ad = {g.ad(0), g.ad(1), g.ad(2)};
      Mat<Rational> q = rnd_mat(3);
      if (!inverse(q)) continue;
      iso = representation_to_isoreps(ad, q).first;
    } else {
      iso.q = rnd_mat(3);
      iso.t = {rnd_mat(3), rnd_mat(3), rnd_mat(3)};
    }
    auto [pair, rep] = isorep_as_pair_representation(iso, g);
    agree = agree && (verify_isorep(iso, g).pass() == verify_representation(rep, pair).valid);
    ++instances;
  }

  bool std_ok = verify_isorep(standard_isorep(g), g).pass();
  auto [g1, example] = two_dimensional_example_isorep<Rational>();
  bool example_ok = verify_isorep(example, g1).pass();
  line(9, ig_ok && agree && std_ok && example_ok,
       "pair (C,sl2) exact, verifier agreement on 20 instances, standard and 2-dim "
       "isoreps exact");
}

// 10. Errata audit: the three flagged discrepancies must be reported with
//     computed corrections.
void criterion_10() {
  auto osc = build_oscillator_pair(worked_params_exact());
  auto p = params_cast<double>(osc.params);

  // (a) the quoted exponent-sign variant of Lambda is not conserved, the
  //     implemented one is; equivalently the quoted +k combination drifts
  ClassicalState s0{1, 0, 1, 0, 1, 1};
  DriftReport drift = invariant_drift(integrate_full(s0, p, 5.0, 1e-3));
  // quoted Lambda variant R^{a} C^{+b}: evaluate its drift directly
  double quoted_lambda_0 = 0, quoted_lambda_drift = 0;
  {
    Trajectory traj = integrate_full(s0, p, 5.0, 1e-3);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const auto& s = traj.states[i];
      if (s.R <= 0 || s.C <= 0) continue;
      double denom = p.e2 + p.et2;
      double quoted = std::exp(p.et2 / denom * std::log(s.R) + p.e2 / denom * std::log(s.C));
      if (i == 0)
        quoted_lambda_0 = quoted;
      else
        quoted_lambda_drift = std::max(quoted_lambda_drift, std::fabs(quoted - quoted_lambda_0));
    }
  }
  bool lambda_flagged = quoted_lambda_drift > 1e-2 && drift.Lambda < 1e-6;

  // (b) the -2e2 factor in the quoted operator-relation table
  auto relation_table = audit_operator_relation_table(osc);
  int factor_flags = 0;
  bool factor_correct_value = false;
  for (const auto& line_ : relation_table)
    if (!line_.match) {
      ++factor_flags;
      factor_correct_value = line_.structure_coefficient == -3.0;  // -e2
    }
  bool factor_flagged = factor_flags == 1 && factor_correct_value;

  // (c) the duplicated contradictory bracket line, with the computed value
  auto table = audit_structure_table(osc);
  bool dup_flagged = false, dup_has_value = false;
  for (const auto& line_ : table)
    if (!line_.match && line_.name.find("duplicated") != std::string::npos) {
      dup_flagged = true;
      dup_has_value = line_.computed.find("R(p,b)") != std::string::npos;
    }

  line(10, lambda_flagged && factor_flagged && dup_flagged && dup_has_value,
       "Lambda sign, -2e2 factor, duplicated bracket line all flagged with computed values");
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::steady_clock::now() - start);
  std::printf("acceptance suite finished in %llds: %s\n",
              static_cast<long long>(elapsed.count()),
              failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
