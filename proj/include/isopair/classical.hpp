#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "isopair/ode.hpp"
#include "isopair/oscillator.hpp"

namespace isopair {

/// Point of the classical flow, ordered (P,Q,R,A,B,C).
struct ClassicalState {
  double P = 0, Q = 0, R = 0, A = 0, B = 0, C = 0;

  std::array<double, 6> to_array() const { return {P, Q, R, A, B, C}; }
  static ClassicalState from_array(const std::array<double, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
};

using ClassicalParams = EpsilonParams<double>;

/// Right-hand side of the coupled-oscillator equations with hamiltonians
/// H1 = P^2+Q^2, H2 = A^2+B^2:
///   dP = -4 e1 (Q^2 A + P Q B) - 2 e3 R Q C, ...
inline ClassicalState rhs_full(const ClassicalState& s, const ClassicalParams& p) {
  ClassicalState d;
  d.P = -4 * p.e1 * (s.Q * s.Q * s.A + s.P * s.Q * s.B) - 2 * p.e3 * s.R * s.Q * s.C;
  d.Q = 4 * p.e1 * (s.P * s.Q * s.A + s.P * s.P * s.B) + 2 * p.e3 * s.R * s.P * s.C;
  d.R = 2 * p.e2 * (s.P * s.R * s.A - s.Q * s.R * s.B);
  d.A = -4 * p.et1 * (s.B * s.B * s.P + s.A * s.B * s.Q) - 2 * p.et3 * s.C * s.B * s.R;
  d.B = 4 * p.et1 * (s.A * s.B * s.P + s.A * s.A * s.Q) + 2 * p.et3 * s.C * s.A * s.R;
  d.C = 2 * p.et2 * (s.A * s.C * s.P - s.B * s.C * s.Q);
  return d;
}

/// Exact-backend version of the same polynomial right-hand side, for the
/// identities that must cancel identically (not merely to rounding).
template <class S>
std::array<S, 6> rhs_full_exact(const std::array<S, 6>& s, const EpsilonParams<S>& p) {
  const S &P = s[0], &Q = s[1], &R = s[2], &A = s[3], &B = s[4], &C = s[5];
  return {
      -S(4) * p.e1 * (Q * Q * A + P * Q * B) - S(2) * p.e3 * R * Q * C,
      S(4) * p.e1 * (P * Q * A + P * P * B) + S(2) * p.e3 * R * P * C,
      S(2) * p.e2 * (P * R * A - Q * R * B),
      -S(4) * p.et1 * (B * B * P + A * B * Q) - S(2) * p.et3 * C * B * R,
      S(4) * p.et1 * (A * B * P + A * A * Q) + S(2) * p.et3 * C * A * R,
      S(2) * p.et2 * (A * C * P - B * C * Q),
  };
}

/// The four conserved quantities of the flow. L uses the combination
/// RC - k(QA+PB) with k = (e2+et2)/(e3+et3), which is the one that actually
/// commutes with rhs_full; the widely quoted form with +k is kept alongside
/// for the errata audit. Lambda is evaluated in log form and requires R,C > 0.
struct InvariantSet {
  double I1sq = 0, I2sq = 0, L = 0, Lambda = 0;
  bool lambda_ok = false;
  double L_reference = 0;  // quoted sign variant, not conserved
};

inline InvariantSet invariants(const ClassicalState& s, const ClassicalParams& p) {
  InvariantSet v;
  v.I1sq = s.P * s.P + s.Q * s.Q;
  v.I2sq = s.A * s.A + s.B * s.B;
  double k = (p.e2 + p.et2) / (p.e3 + p.et3);
  double cross = s.Q * s.A + s.P * s.B;
  v.L = s.R * s.C - k * cross;
  v.L_reference = s.R * s.C + k * cross;
  if (s.R > 0 && s.C > 0) {
    double denom = p.e2 + p.et2;
    v.Lambda = std::exp(p.et2 / denom * std::log(s.R) - p.e2 / denom * std::log(s.C));
    v.lambda_ok = true;
  }
  return v;
}

struct Trajectory {
  std::vector<double> t;
  std::vector<ClassicalState> states;
  std::vector<InvariantSet> invariants;
  std::string method;
  double dt = 0;
};

enum class Method { RK4, RK45 };

inline Trajectory integrate_full(const ClassicalState& s0, const ClassicalParams& p, double t_end,
                                 double dt, Method method = Method::RK4, double abs_tol = 1e-10,
                                 double rel_tol = 1e-8) {
  Trajectory traj;
  traj.method = method == Method::RK4 ? "rk4" : "rk45";
  traj.dt = dt;
  OdeRhs f = [&p](double, const std::vector<double>& y, std::vector<double>& dy) {
    ClassicalState d = rhs_full({y[0], y[1], y[2], y[3], y[4], y[5]}, p);
    dy = {d.P, d.Q, d.R, d.A, d.B, d.C};
  };
  auto sink = [&](double t, const std::vector<double>& y) {
    ClassicalState s{y[0], y[1], y[2], y[3], y[4], y[5]};
    traj.t.push_back(t);
    traj.states.push_back(s);
    traj.invariants.push_back(invariants(s, p));
  };
  std::vector<double> y0 = {s0.P, s0.Q, s0.R, s0.A, s0.B, s0.C};
  if (method == Method::RK4)
    rk4_integrate(f, y0, t_end, dt, sink);
  else
    rk45_integrate(f, y0, t_end, dt, abs_tol, rel_tol, sink);
  return traj;
}

/// Largest scale-guarded relative drift of each invariant along a trajectory.
struct DriftReport {
  double I1sq = 0, I2sq = 0, L = 0, Lambda = 0, L_reference = 0;
  double max_conserved() const { return std::max(std::max(I1sq, I2sq), std::max(L, Lambda)); }
};

inline DriftReport invariant_drift(const Trajectory& traj) {
  DriftReport d;
  if (traj.invariants.empty()) return d;
  const InvariantSet& v0 = traj.invariants.front();
  auto rel = [](double v, double v0) { return std::fabs(v - v0) / std::max(1.0, std::fabs(v0)); };
  for (const auto& v : traj.invariants) {
    d.I1sq = std::max(d.I1sq, rel(v.I1sq, v0.I1sq));
    d.I2sq = std::max(d.I2sq, rel(v.I2sq, v0.I2sq));
    d.L = std::max(d.L, rel(v.L, v0.L));
    d.L_reference = std::max(d.L_reference, rel(v.L_reference, v0.L_reference));
    if (v.lambda_ok && v0.lambda_ok) d.Lambda = std::max(d.Lambda, rel(v.Lambda, v0.Lambda));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Action-angle reduction
// ---------------------------------------------------------------------------

/// Continuation of an angle sequence to the nearest branch; throws when the
/// step jumps by pi/2 or more, which would make unwinding ambiguous.
inline double unwind_angle(double raw, double previous) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  double k = std::round((previous - raw) / two_pi);
  double candidate = raw + k * two_pi;
  if (std::fabs(candidate - previous) >= 1.5707963267948966)
    throw IntegrationError("angle unwinding jump detected");
  return candidate;
}

/// Reduced coordinates: theta = phi+psi, chi = e3*psi - et3*phi, plus (R,C);
/// angles use P = I1 cos(phi), Q = I1 sin(phi), A = I2 cos(psi), B = I2 sin(psi).
struct ReducedTrajectory {
  std::vector<double> t;
  std::vector<std::array<double, 4>> y;  // theta, chi, R, C
  double I1 = 0, I2 = 0;
  double reconstruction_max_dev = 0;  // against the full integration on the same grid
};

/// Reduced right-hand side derived from rhs_full under the substitution above:
///   theta' = 2 (e3+et3) R C
///   chi'   = -4 e1 (e3+et3) I1 I2 sin(theta)
///   R'     = 2 e2  I1 I2 cos(theta) R
///   C'     = 2 et2 I1 I2 cos(theta) C
inline std::array<double, 4> reduced_rhs(const std::array<double, 4>& y, const ClassicalParams& p,
                                         double i1, double i2) {
  double theta = y[0], R = y[2], C = y[3];
  double s = std::sin(theta), c = std::cos(theta);
  return {2 * (p.e3 + p.et3) * R * C, -4 * p.e1 * (p.e3 + p.et3) * i1 * i2 * s,
          2 * p.e2 * i1 * i2 * c * R, 2 * p.et2 * i1 * i2 * c * C};
}

inline std::array<double, 2> angles_from_state(const ClassicalState& s) {
  return {std::atan2(s.Q, s.P), std::atan2(s.B, s.A)};
}

inline ClassicalState reconstruct_state(const std::array<double, 4>& y, const ClassicalParams& p,
                                        double i1, double i2) {
  double denom = p.e3 + p.et3;
  double phi = (p.e3 * y[0] - y[1]) / denom;
  double psi = (y[1] + p.et3 * y[0]) / denom;
  return {i1 * std::cos(phi), i1 * std::sin(phi), y[2], i2 * std::cos(psi), i2 * std::sin(psi), y[3]};
}

inline ReducedTrajectory reduce_and_integrate(const ClassicalState& s0, const ClassicalParams& p,
                                              double t_end, double dt) {
  double i1 = std::hypot(s0.P, s0.Q), i2 = std::hypot(s0.A, s0.B);
  if (i1 <= 0 || i2 <= 0)
    throw std::invalid_argument("reduce_and_integrate: vanishing oscillation amplitude");
  if (!p.formulas_generic())
    throw std::invalid_argument("reduce_and_integrate: degenerate parameter combination");
  auto [phi0, psi0] = angles_from_state(s0);

  ReducedTrajectory red;
  red.I1 = i1;
  red.I2 = i2;
  OdeRhs f = [&](double, const std::vector<double>& y, std::vector<double>& dy) {
    auto d = reduced_rhs({y[0], y[1], y[2], y[3]}, p, i1, i2);
    dy = {d[0], d[1], d[2], d[3]};
  };
  rk4_integrate(f, {phi0 + psi0, p.e3 * psi0 - p.et3 * phi0, s0.R, s0.C}, t_end, dt,
                [&](double t, const std::vector<double>& y) {
                  red.t.push_back(t);
                  red.y.push_back({y[0], y[1], y[2], y[3]});
                });

  Trajectory full = integrate_full(s0, p, t_end, dt, Method::RK4);
  double dev = 0.0;
  for (std::size_t i = 0; i < red.y.size() && i < full.states.size(); ++i) {
    ClassicalState rec = reconstruct_state(red.y[i], p, i1, i2);
    auto a = rec.to_array(), b = full.states[i].to_array();
    for (int k = 0; k < 6; ++k) dev = std::max(dev, std::fabs(a[k] - b[k]));
  }
  red.reconstruction_max_dev = dev;
  return red;
}

// ---------------------------------------------------------------------------
// The xi linear law
// ---------------------------------------------------------------------------

struct XiFit {
  double slope = 0, intercept = 0;
  double max_linear_dev = 0;   // worst deviation from the fitted line
  double predicted_slope = 0;  // closed form for the chosen combination
};

enum class XiForm {
  Conserved,  // (e2+et2) chi + 2 e1 (e3+et3) theta, affine along the flow
  Reference,  // (e2+et2) chi + 2 e1 (e3-et3) theta, the commonly quoted combination
};

/// Least-squares line fit of xi(t) along a reduced trajectory. The conserved
/// combination has slope 4 e1 (e3+et3)^2 L; the reference combination is fitted
/// against the quoted slope 4 L_ref (et3^2-e3^2) e1.
inline XiFit xi_check(const ReducedTrajectory& red, const ClassicalParams& p,
                      XiForm form = XiForm::Conserved) {
  if (red.t.size() < 2) throw std::invalid_argument("xi_check: trajectory too short");
  double theta_coeff =
      form == XiForm::Conserved ? 2 * p.e1 * (p.e3 + p.et3) : 2 * p.e1 * (p.e3 - p.et3);
  std::vector<double> xi(red.t.size());
  for (std::size_t i = 0; i < red.t.size(); ++i)
    xi[i] = (p.e2 + p.et2) * red.y[i][1] + theta_coeff * red.y[i][0];

  // angles coming out of the reduced integration are already continuous; guard anyway
  for (std::size_t i = 1; i < red.y.size(); ++i)
    if (std::fabs(red.y[i][0] - red.y[i - 1][0]) >= 1.5707963267948966)
      throw IntegrationError("xi_check: angle step exceeds the unwinding guard");

  double n = static_cast<double>(red.t.size());
  double st = 0, sx = 0, stt = 0, stx = 0;
  for (std::size_t i = 0; i < red.t.size(); ++i) {
    st += red.t[i];
    sx += xi[i];
    stt += red.t[i] * red.t[i];
    stx += red.t[i] * xi[i];
  }
  XiFit fit;
  double denom = n * stt - st * st;
  fit.slope = (n * stx - st * sx) / denom;
  fit.intercept = (sx - fit.slope * st) / n;
  for (std::size_t i = 0; i < red.t.size(); ++i)
    fit.max_linear_dev =
        std::max(fit.max_linear_dev, std::fabs(xi[i] - (fit.slope * red.t[i] + fit.intercept)));

  ClassicalState s0 = reconstruct_state(red.y.front(), p, red.I1, red.I2);
  InvariantSet v0 = invariants(s0, p);
  fit.predicted_slope = form == XiForm::Conserved
                            ? 4 * p.e1 * (p.e3 + p.et3) * (p.e3 + p.et3) * v0.L
                            : 4 * v0.L_reference * (p.et3 * p.et3 - p.e3 * p.e3) * p.e1;
  return fit;
}

// ---------------------------------------------------------------------------
// Reference reduced flow (the quoted closed-form system, kept for the audit)
// ---------------------------------------------------------------------------

/// The quoted theta-equation evaluated as printed:
/// -2 L (e3+et3) - 2 I1 I2 (e2+et2) sin(theta).
inline double reference_theta_dot_law(double L, double i1, double i2, double theta,
                                      const ClassicalParams& p) {
  return -2 * L * (p.e3 + p.et3) - 2 * i1 * i2 * (p.e2 + p.et2) * std::sin(theta);
}

/// Integrates the quoted reduced system as a flow in its own right:
///   theta' = -2 L_ref (e3+et3) - 2 I1 I2 (e2+et2) sin(theta)
///   chi'   = 4 e1 I1 I2 (e3-et3) sin(theta)
///   R'     = 2 e2 cos(theta) R,  C' = 2 et2 cos(theta) C
/// Along this flow the quoted xi law holds exactly with slope
/// 4 L_ref (et3^2-e3^2) e1. It is NOT the reduction of rhs_full; the audit
/// reports the differences.
inline ReducedTrajectory reference_reduced_integrate(const ClassicalState& s0,
                                                     const ClassicalParams& p, double t_end,
                                                     double dt) {
  double i1 = std::hypot(s0.P, s0.Q), i2 = std::hypot(s0.A, s0.B);
  if (i1 <= 0 || i2 <= 0)
    throw std::invalid_argument("reference reduced flow: vanishing amplitude");
  auto [phi0, psi0] = angles_from_state(s0);
  double L_ref = invariants(s0, p).L_reference;

  ReducedTrajectory red;
  red.I1 = i1;
  red.I2 = i2;
  OdeRhs f = [&](double, const std::vector<double>& y, std::vector<double>& dy) {
    double s = std::sin(y[0]), c = std::cos(y[0]);
    dy = {-2 * L_ref * (p.e3 + p.et3) - 2 * i1 * i2 * (p.e2 + p.et2) * s,
          4 * p.e1 * i1 * i2 * (p.e3 - p.et3) * s, 2 * p.e2 * c * y[2], 2 * p.et2 * c * y[3]};
  };
  rk4_integrate(f, {phi0 + psi0, p.e3 * psi0 - p.et3 * phi0, s0.R, s0.C}, t_end, dt,
                [&](double t, const std::vector<double>& y) {
                  red.t.push_back(t);
                  red.y.push_back({y[0], y[1], y[2], y[3]});
                });
  return red;
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

/// Writes the per-sample series with columns
/// t,P,Q,R,A,B,C,I1sq,I2sq,L,Lambda,theta,chi,xi (header row included).
/// Angles are reconstructed from the states with nearest-branch continuation;
/// xi uses the conserved combination.
inline void write_trajectory_csv(const Trajectory& traj, const ClassicalParams& p,
                                 const std::string& path, std::size_t stride = 1) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open CSV output: " + path);
  os << "t,P,Q,R,A,B,C,I1sq,I2sq,L,Lambda,theta,chi,xi\n";
  char line[512];
  double prev_phi = 0, prev_psi = 0;
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    const ClassicalState& s = traj.states[i];
    const InvariantSet& v = traj.invariants[i];
    auto [phi_raw, psi_raw] = angles_from_state(s);
    double phi = i == 0 ? phi_raw : unwind_angle(phi_raw, prev_phi);
    double psi = i == 0 ? psi_raw : unwind_angle(psi_raw, prev_psi);
    prev_phi = phi;
    prev_psi = psi;
    if (i % stride != 0 && i + 1 != traj.t.size()) continue;
    double theta = phi + psi;
    double chi = p.e3 * psi - p.et3 * phi;
    double xi = (p.e2 + p.et2) * chi + 2 * p.e1 * (p.e3 + p.et3) * theta;
    std::snprintf(line, sizeof(line),
                  "%.12g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g\n",
                  traj.t[i], s.P, s.Q, s.R, s.A, s.B, s.C, v.I1sq, v.I2sq, v.L,
                  v.lambda_ok ? v.Lambda : std::nan(""), theta, chi, xi);
    os << line;
  }
}

}  // namespace isopair
