#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "isopair/ode.hpp"
#include "isopair/oscillator.hpp"
#include "isopair/representation.hpp"

namespace isopair {

/// The six evolving operators of the quantum flow on a representation space W.
struct OperatorState {
  std::vector<Mat<double>> ops;  // P,Q,R,A,B,C
  double t = 0;

  std::size_t dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

/// Cubic operator right-hand side; every summand alternates V1/V2 factors, so
/// split block shapes are preserved along the flow.
inline std::vector<Mat<double>> quantum_rhs(const std::vector<Mat<double>>& o,
                                            const EpsilonParams<double>& p) {
  if (o.size() != 6) throw std::invalid_argument("quantum_rhs: expected six operators");
  const Mat<double>&P = o[0], &Q = o[1], &R = o[2], &A = o[3], &B = o[4], &C = o[5];
  std::vector<Mat<double>> d;
  d.reserve(6);
  d.push_back(-2 * p.e1 * (P * B * Q + Q * B * P + 2.0 * (Q * A * Q)) -
              p.e3 * (R * C * Q + Q * C * R));
  d.push_back(2 * p.e1 * (P * A * Q + Q * A * P + 2.0 * (P * B * P)) +
              p.e3 * (R * C * P + P * C * R));
  d.push_back(p.e2 * (P * A * R + R * A * P - Q * B * R - R * B * Q));
  d.push_back(-2 * p.et1 * (A * Q * B + B * Q * A + 2.0 * (B * P * B)) -
              p.et3 * (C * R * B + B * R * C));
  d.push_back(2 * p.et1 * (A * P * B + B * P * A + 2.0 * (A * Q * A)) +
              p.et3 * (C * R * A + A * R * C));
  d.push_back(p.et2 * (A * P * C + C * P * A - B * Q * C - C * Q * B));
  return d;
}

/// Names and residuals of the 18 algebraic relations X T(iso) Y - Y T(iso) X =
/// T([X,Y]_iso), with right-hand sides taken from the structure constants.
struct RelationResiduals {
  std::vector<std::string> names;
  std::vector<double> values;
  double max_abs() const {
    double m = 0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
  }
};

inline RelationResiduals operator_relations(const std::vector<Mat<double>>& o,
                                            const OscillatorPair<double>& osc) {
  static const char* v1n[] = {"p", "q", "r"};
  static const char* v2n[] = {"a", "b", "c"};
  RelationResiduals out;
  for (std::size_t iso = 0; iso < 3; ++iso)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        Mat<double> lhs = o[i] * o[3 + iso] * o[j] - o[j] * o[3 + iso] * o[i];
        Vec<double> rhs = osc.pair.bracket1_basis(iso, i, j);
        Mat<double> expect(lhs.rows(), lhs.cols());
        for (std::size_t k = 0; k < 3; ++k) {
          Mat<double> term = o[k];
          term *= rhs[k];
          expect += term;
        }
        out.names.push_back(std::string("[") + v1n[i] + "," + v1n[j] + "]_" + v2n[iso]);
        out.values.push_back((lhs - expect).max_abs());
      }
  for (std::size_t iso = 0; iso < 3; ++iso)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        Mat<double> lhs = o[3 + i] * o[iso] * o[3 + j] - o[3 + j] * o[iso] * o[3 + i];
        Vec<double> rhs = osc.pair.bracket2_basis(iso, i, j);
        Mat<double> expect(lhs.rows(), lhs.cols());
        for (std::size_t k = 0; k < 3; ++k) {
          Mat<double> term = o[3 + k];
          term *= rhs[k];
          expect += term;
        }
        out.names.push_back(std::string("[") + v2n[i] + "," + v2n[j] + "]_" + v1n[iso]);
        out.values.push_back((lhs - expect).max_abs());
      }
  return out;
}

struct QuantumTrajectory {
  std::vector<double> t;
  std::vector<double> relation_drift;              // max relation residual per sample
  std::vector<std::vector<double>> per_relation;   // residual per relation per sample
  std::vector<std::string> relation_names;
  std::vector<std::vector<Mat<double>>> snapshots; // optional full operators
  bool keep_snapshots = false;
  double max_drift() const {
    double m = 0;
    for (double v : relation_drift) m = std::max(m, v);
    return m;
  }
};

/// RK4 on the matrix flow; relation residuals are evaluated on every sample
/// against structure-constant right-hand sides.
inline QuantumTrajectory integrate_quantum(const PairRepresentation<double>& rep,
                                           const OscillatorPair<double>& osc, double t_end,
                                           double dt, std::size_t sample_stride = 100,
                                           bool keep_snapshots = false) {
  const std::size_t w = rep.dim_w;
  std::vector<Mat<double>> ops0;
  for (const auto& m : rep.t1) ops0.push_back(m);
  for (const auto& m : rep.t2) ops0.push_back(m);

  auto pack = [w](const std::vector<Mat<double>>& ops, std::vector<double>& y) {
    y.clear();
    for (const auto& m : ops)
      for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) y.push_back(m(i, j));
  };
  auto unpack = [w](const std::vector<double>& y) {
    std::vector<Mat<double>> ops(6, Mat<double>(w, w));
    std::size_t idx = 0;
    for (auto& m : ops)
      for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) m(i, j) = y[idx++];
    return ops;
  };

  QuantumTrajectory traj;
  traj.keep_snapshots = keep_snapshots;
  OdeRhs f = [&](double, const std::vector<double>& y, std::vector<double>& dy) {
    auto d = quantum_rhs(unpack(y), osc.params);
    pack(d, dy);
  };
  std::size_t count = 0;
  auto sink = [&](double t, const std::vector<double>& y) {
    bool last = t >= t_end - 1e-15;
    if (count++ % sample_stride != 0 && !last) return;
    auto ops = unpack(y);
    RelationResiduals rel = operator_relations(ops, osc);
    if (traj.relation_names.empty()) traj.relation_names = rel.names;
    traj.t.push_back(t);
    traj.relation_drift.push_back(rel.max_abs());
    traj.per_relation.push_back(rel.values);
    if (keep_snapshots) traj.snapshots.push_back(ops);
  };
  std::vector<double> y0;
  pack(ops0, y0);
  rk4_integrate(f, y0, t_end, dt, sink);
  return traj;
}

// ---------------------------------------------------------------------------
// Hidden-Hamiltonian audit
// ---------------------------------------------------------------------------

/// Scaling-and-squaring Pade(6,6) matrix exponential, adequate for the small
/// dense operators handled here.
inline Mat<double> expm(const Mat<double>& a) {
  const std::size_t n = a.rows();
  double norm = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(a(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  Mat<double> x = a;
  x *= std::pow(2.0, -squarings);

  static const double b[7] = {1.0,       1.0 / 2.0,     5.0 / 44.0,    1.0 / 66.0,
                              1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  Mat<double> x2 = x * x;
  Mat<double> x4 = x2 * x2;
  Mat<double> x6 = x4 * x2;
  auto scaled = [](Mat<double> m, double c) {
    m *= c;
    return m;
  };
  Mat<double> even = scaled(Mat<double>::identity(n), b[0]) + scaled(x2, b[2]) + scaled(x4, b[4]) +
                     scaled(x6, b[6]);
  Mat<double> odd =
      x * (scaled(Mat<double>::identity(n), b[1]) + scaled(x2, b[3]) + scaled(x4, b[5]));
  auto inv = inverse(even - odd, 1e-14);
  if (!inv) throw std::runtime_error("expm: Pade denominator singular");
  Mat<double> r = *inv * (even + odd);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

struct HiddenHamiltonianReport {
  std::vector<std::string> generator;   // p,q,r,a,b,c
  std::vector<double> residual;         // |quantum_rhs - [H, T(G)]| per generator
  double max_residual = 0;
  bool confirmed = false;               // residuals below tolerance
  double conjugation_max_dev = -1;      // exp(tH) flow vs RK4, when computed
  Mat<double> hamiltonian;
};

/// Builds H = sum of squares of the six even images T(x)T(alpha)+T(alpha)T(x)
/// over {(q,a),(p,b),(q,b),(p,a),(p,c),(q,c)} for the rc-renormalized pair and
/// compares [H, T(G)] against the quantum right-hand side for each generator.
/// A nonzero residual is reported, not asserted away.
inline HiddenHamiltonianReport hidden_hamiltonian_audit(const PairRepresentation<double>& rep,
                                                        const OscillatorPair<double>& osc,
                                                        double tol = 1e-8,
                                                        bool run_conjugation_check = true,
                                                        double t_end = 1.0, double dt = 1e-3) {
  RepresentationReport rr = verify_representation(rep, osc.pair, 1e-9);
  if (!rr.split)
    throw std::invalid_argument("hidden_hamiltonian_audit: representation must be split");

  OscillatorPair<double> renorm = renormalize_rc(osc);
  std::vector<Mat<double>> o;
  for (const auto& m : rep.t1) o.push_back(m);
  for (const auto& m : rep.t2) o.push_back(m);

  const std::array<std::pair<int, int>, 6> pairs = {{{1, 3}, {0, 4}, {1, 4}, {0, 3}, {0, 5}, {1, 5}}};
  Mat<double> h(rep.dim_w, rep.dim_w);
  for (auto [x, al] : pairs) {
    Mat<double> r = anticommutator(o[static_cast<std::size_t>(x)], o[static_cast<std::size_t>(al)]);
    h += r * r;
  }

  HiddenHamiltonianReport rep_out;
  rep_out.hamiltonian = h;
  static const char* names[] = {"p", "q", "r", "a", "b", "c"};
  auto rhs = quantum_rhs(o, renorm.params);
  for (std::size_t g = 0; g < 6; ++g) {
    double res = (rhs[g] - commutator(h, o[g])).max_abs();
    rep_out.generator.push_back(names[g]);
    rep_out.residual.push_back(res);
    rep_out.max_residual = std::max(rep_out.max_residual, res);
  }
  rep_out.confirmed = rep_out.max_residual < tol;

  if (run_conjugation_check && rep_out.confirmed) {
    // similarity flow exp(tH) F exp(-tH) must match the nonlinear integration
    QuantumTrajectory traj = integrate_quantum(rep, renorm, t_end, dt, 1, true);
    Mat<double> u = expm(t_end * h);
    auto uinv = inverse(u, 1e-14);
    if (!uinv) throw std::runtime_error("hidden_hamiltonian_audit: exp(tH) not invertible");
    double dev = 0;
    const auto& final_ops = traj.snapshots.back();
    for (std::size_t g = 0; g < 6; ++g) {
      Mat<double> conj = u * o[g] * (*uinv);
      dev = std::max(dev, (conj - final_ops[g]).max_abs());
    }
    rep_out.conjugation_max_dev = dev;
  }
  return rep_out;
}

// ---------------------------------------------------------------------------
// Oscillator sub-pair and the explicit nonzero split representation
// ---------------------------------------------------------------------------

/// Restriction of the oscillator pair to span(p,q) and span(a,b); the bracket
/// families close on these spans, so the restriction is itself an isotopic pair.
template <class S>
IsotopicPair<S> oscillator_sub_pair(const EpsilonParams<S>& params) {
  IsotopicPair<S> pair(2, 2);
  const S z = S(0);
  pair.set1(kA, kP, kQ, {z, S(2) * params.e1});
  pair.set1(kB, kP, kQ, {S(2) * params.e1, z});
  pair.set2(kP, kA, kB, {z, S(2) * params.et1});
  pair.set2(kQ, kA, kB, {S(2) * params.et1, z});
  return pair;
}

/// Explicit split representation of the full oscillator pair on W = W1 (+) W2
/// with dims (1,2): T(p),T(q) are the two coordinate columns, T(a),T(b) the
/// rows scaled by -2e1 and 2e1, and T(r) = T(c) = 0. All defining relations
/// hold identically on the whole constraint manifold.
template <class S>
PairRepresentation<S> minimal_split_representation(const EpsilonParams<S>& params) {
  std::vector<Mat<S>> xs(3, Mat<S>(2, 1)), ys(3, Mat<S>(1, 2));
  xs[kP](0, 0) = S(1);
  xs[kQ](1, 0) = S(1);
  ys[kA](0, 0) = S(-2) * params.e1;
  ys[kB](0, 1) = S(2) * params.e1;
  return from_split_blocks(xs, ys, 1, 2);
}

/// Quoted right-hand sides of the operator-relation table, including the one
/// line whose factor disagrees with the structure constants ([q,r]_b).
struct OperatorRelationAuditLine {
  std::string relation;
  double quoted_coefficient;
  double structure_coefficient;
  bool match;
};

template <class S>
std::vector<OperatorRelationAuditLine> audit_operator_relation_table(const OscillatorPair<S>& osc) {
  const auto& p = osc.params;
  struct Row {
    const char* name;
    int side, iso, i, j, out;
    S quoted;
  };
  // (side, iso, i, j) -> coefficient on basis element `out`
  std::vector<Row> rows = {
      {"[p,q]_a = 2 e1 q", 1, kA, kP, kQ, kQ, S(2) * p.e1},
      {"[p,r]_a = e2 r", 1, kA, kP, kR, kR, p.e2},
      {"[q,r]_a = 0", 1, kA, kQ, kR, kR, S(0)},
      {"[p,q]_b = 2 e1 p", 1, kB, kP, kQ, kP, S(2) * p.e1},
      {"[p,r]_b = 0", 1, kB, kP, kR, kR, S(0)},
      {"[q,r]_b = -2 e2 r (quoted)", 1, kB, kQ, kR, kR, S(-2) * p.e2},
      {"[p,q]_c = e3 r", 1, kC, kP, kQ, kR, p.e3},
      {"[p,r]_c = 0", 1, kC, kP, kR, kR, S(0)},
      {"[q,r]_c = 0", 1, kC, kQ, kR, kR, S(0)},
      {"[a,b]_p = 2 et1 b", 2, kP, kA, kB, kB, S(2) * p.et1},
      {"[a,c]_p = et2 c", 2, kP, kA, kC, kC, p.et2},
      {"[b,c]_p = 0", 2, kP, kB, kC, kC, S(0)},
      {"[a,b]_q = 2 et1 a", 2, kQ, kA, kB, kA, S(2) * p.et1},
      {"[a,c]_q = 0", 2, kQ, kA, kC, kC, S(0)},
      {"[b,c]_q = -et2 c", 2, kQ, kB, kC, kC, -p.et2},
      {"[a,b]_r = et3 c", 2, kR, kA, kB, kC, p.et3},
      {"[b,c]_r = 0", 2, kR, kB, kC, kC, S(0)},
      {"[a,c]_r = 0", 2, kR, kA, kC, kC, S(0)},
  };
  std::vector<OperatorRelationAuditLine> out;
  for (const auto& r : rows) {
    S actual = r.side == 1 ? osc.pair.m1(static_cast<std::size_t>(r.iso), static_cast<std::size_t>(r.i),
                                         static_cast<std::size_t>(r.j), static_cast<std::size_t>(r.out))
                           : osc.pair.m2(static_cast<std::size_t>(r.iso), static_cast<std::size_t>(r.i),
                                         static_cast<std::size_t>(r.j), static_cast<std::size_t>(r.out));
    out.push_back({r.name, to_double(r.quoted), to_double(actual),
                   scalar_traits<S>::is_zero(S(r.quoted - actual), 1e-14)});
  }
  return out;
}

}  // namespace isopair
