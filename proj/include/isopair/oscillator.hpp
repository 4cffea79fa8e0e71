#pragma once

#include <string>
#include <vector>

#include "isopair/alts.hpp"
#include "isopair/pair.hpp"
#include "isopair/superalgebra.hpp"

namespace isopair {

// V1 basis order (p,q,r), V2 basis order (a,b,c) throughout this model.
enum OscV1 : std::size_t { kP = 0, kQ = 1, kR = 2 };
enum OscV2 : std::size_t { kA = 0, kB = 1, kC = 2 };

/// Six couplings on the constraint manifold
///   e1 + et1 = 0,  e2 - et2 = e1 - et1,  e3*et3 = e2*et2.
template <class S>
struct EpsilonParams {
  S e1{}, et1{}, e2{}, et2{}, e3{}, et3{};

  /// Derives the tilde couplings from (e1,e2,e3); the constraints are
  /// triangular in this order.
  static EpsilonParams resolve(const S& e1, const S& e2, const S& e3) {
    if (scalar_traits<S>::is_zero(e2, 0.0) || scalar_traits<S>::is_zero(e3, 0.0))
      throw std::invalid_argument("resolve_params: e2 and e3 must be nonzero");
    EpsilonParams p;
    p.e1 = e1;
    p.et1 = -e1;
    p.e2 = e2;
    p.et2 = e2 - S(2) * e1;
    p.e3 = e3;
    p.et3 = e2 * p.et2 / e3;
    return p;
  }

  /// Residuals of the three defining constraints (all zero for valid params).
  std::array<S, 3> constraint_residuals() const {
    return {e1 + et1, (e2 - et2) - (e1 - et1), e3 * et3 - e2 * et2};
  }

  /// Nonzero combinations required by the closed-form dynamics.
  bool formulas_generic() const {
    return !scalar_traits<S>::is_zero(e2, 0.0) && !scalar_traits<S>::is_zero(e3, 0.0) &&
           !scalar_traits<S>::is_zero(S(e2 + et2), 0.0) && !scalar_traits<S>::is_zero(S(e3 + et3), 0.0);
  }

  /// dim g0 = 6 additionally needs e1 != 0 (otherwise the diagonal operators collide).
  bool g0_generic() const { return formulas_generic() && !scalar_traits<S>::is_zero(e1, 0.0); }
};

template <class T, class S>
EpsilonParams<T> params_cast(const EpsilonParams<S>& p) {
  EpsilonParams<T> out;
  out.e1 = T(to_double(p.e1));
  out.et1 = T(to_double(p.et1));
  out.e2 = T(to_double(p.e2));
  out.et2 = T(to_double(p.et2));
  out.e3 = T(to_double(p.e3));
  out.et3 = T(to_double(p.et3));
  return out;
}

template <class S>
struct OscillatorPair {
  IsotopicPair<S> pair;
  EpsilonParams<S> params;
};

/// Structure tensors of the noncanonically coupled oscillator pair:
///   [p,q]_a = 2 e1 q   [p,r]_a = e2 r    [q,r]_a = 0
///   [p,q]_b = 2 e1 p   [p,r]_b = 0       [q,r]_b = -e2 r
///   [p,q]_c = e3 r     [p,r]_c = 0       [q,r]_c = 0
/// and the tilde-coupled mirror family on (a,b,c).
template <class S>
OscillatorPair<S> build_oscillator_pair(const EpsilonParams<S>& params) {
  for (const auto& r : params.constraint_residuals())
    if (!scalar_traits<S>::is_zero(r, 1e-12))
      throw std::invalid_argument("build_oscillator_pair: constraint violation");
  IsotopicPair<S> pair(3, 3);
  const S z = S(0);
  pair.set1(kA, kP, kQ, {z, S(2) * params.e1, z});
  pair.set1(kA, kP, kR, {z, z, params.e2});
  pair.set1(kB, kP, kQ, {S(2) * params.e1, z, z});
  pair.set1(kB, kQ, kR, {z, z, -params.e2});
  pair.set1(kC, kP, kQ, {z, z, params.e3});
  pair.set2(kP, kA, kB, {z, S(2) * params.et1, z});
  pair.set2(kP, kA, kC, {z, z, params.et2});
  pair.set2(kQ, kA, kB, {S(2) * params.et1, z, z});
  pair.set2(kQ, kB, kC, {z, z, -params.et2});
  pair.set2(kR, kA, kB, {z, z, params.et3});
  return {std::move(pair), params};
}

// ---------------------------------------------------------------------------
// Reference tables (the commonly quoted closed forms for this model) and the
// audit comparing them against values recomputed from the structure constants.
// ---------------------------------------------------------------------------

/// One comparison row: a quoted identity versus what the structure constants give.
struct TableAuditLine {
  std::string name;
  std::string reference;  // quoted value
  std::string computed;   // value derived from the R-matrices
  bool match = false;
};

namespace detail {

template <class S>
std::string coeff_string(const Vec<S>& coords, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (scalar_traits<S>::is_zero(coords[i], 1e-14)) continue;
    double c = to_double(coords[i]);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+g*", c);
    out += buf;
    out += names[i];
    out += " ";
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace detail

/// The six quoted R-matrices in display bases (q,p,r) and (a,b,c) compared
/// entry-by-entry against the ones computed from the triple product.
template <class S>
std::vector<TableAuditLine> audit_r_matrices(const OscillatorPair<S>& osc) {
  AltsTensor<S> alts = to_alts(osc.pair);
  const auto& p = osc.params;
  const S z = S(0);
  // expected blocks, rows/cols in display order (q,p,r) and (a,b,c)
  struct Expected {
    const char* name;
    std::size_t y, zidx;
    std::array<std::array<S, 3>, 3> v1, v2;
  };
  std::vector<Expected> table = {
      {"R(p,a)", kP, 3 + kA,
       {{{S(2) * p.e1, z, z}, {z, z, z}, {z, z, p.e2}}},
       {{{z, z, z}, {z, S(2) * p.et1, z}, {z, z, p.et2}}}},
      {"R(p,b)", kP, 3 + kB,
       {{{z, z, z}, {S(2) * p.e1, z, z}, {z, z, z}}},
       {{{z, z, z}, {S(-2) * p.et1, z, z}, {z, z, z}}}},
      {"R(q,a)", kQ, 3 + kA,
       {{{z, S(-2) * p.e1, z}, {z, z, z}, {z, z, z}}},
       {{{z, S(2) * p.et1, z}, {z, z, z}, {z, z, z}}}},
      {"R(q,b)", kQ, 3 + kB,
       {{{z, z, z}, {z, S(-2) * p.e1, z}, {z, z, -p.e2}}},
       {{{S(-2) * p.et1, z, z}, {z, z, z}, {z, z, -p.et2}}}},
      {"R(p,c)", kP, 3 + kC,
       {{{z, z, z}, {z, z, z}, {p.e3, z, z}}},
       {{{z, z, z}, {z, z, z}, {-p.et2, z, z}}}},
      {"R(q,c)", kQ, 3 + kC,
       {{{z, z, z}, {z, z, z}, {z, -p.e3, z}}},
       {{{z, z, z}, {z, z, z}, {z, p.et2, z}}}},
  };
  // display permutation: internal (p,q,r) -> display (q,p,r)
  const std::size_t perm[3] = {kQ, kP, kR};
  std::vector<TableAuditLine> out;
  for (const auto& e : table) {
    Mat<S> computed = alts.r_matrix(e.y, e.zidx);
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (computed(perm[i], perm[j]) != e.v1[i][j]) ok = false;
        if (computed(3 + i, 3 + j) != e.v2[i][j]) ok = false;
      }
    // off-block entries must vanish
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if ((i < 3) != (j < 3) && !scalar_traits<S>::is_zero(computed(i, j), 0.0)) ok = false;
    out.push_back({e.name, "quoted block", ok ? "identical" : "differs", ok});
  }
  // the two dependent operators
  {
    Mat<S> lhs = alts.r_matrix(kR, 3 + kB);
    Mat<S> rhs = alts.r_matrix(kP, 3 + kC);
    rhs *= p.e2 / p.e3;
    out.push_back({"R(r,b) = (e2/e3) R(p,c)", "quoted relation",
                   (lhs - rhs).is_zero() ? "identical" : "differs", (lhs - rhs).is_zero()});
  }
  {
    Mat<S> lhs = alts.r_matrix(kR, 3 + kA);
    Mat<S> rhs = alts.r_matrix(kQ, 3 + kC);
    rhs *= p.e2 / p.e3;
    out.push_back({"R(r,a) = (e2/e3) R(q,c)", "quoted relation",
                   (lhs - rhs).is_zero() ? "identical" : "differs", (lhs - rhs).is_zero()});
  }
  return out;
}

/// Recomputes every line of the quoted (6|6) supercommutation table from the
/// R-matrices. The audit is informational: downstream acceptance binds to the
/// computed values, never to the quoted ones.
template <class S>
std::vector<TableAuditLine> audit_structure_table(const OscillatorPair<S>& osc,
                                                  double tol = 1e-10) {
  AltsTensor<S> alts = to_alts(osc.pair);
  const auto& p = osc.params;
  const std::vector<std::string> rnames = {"R(p,a)", "R(p,b)", "R(q,a)",
                                           "R(q,b)", "R(p,c)", "R(q,c)"};
  const std::size_t rpairs[6][2] = {{kP, 3 + kA}, {kP, 3 + kB}, {kQ, 3 + kA},
                                    {kQ, 3 + kB}, {kP, 3 + kC}, {kQ, 3 + kC}};
  std::vector<Mat<S>> rmats;
  for (auto& yz : rpairs) rmats.push_back(alts.r_matrix(yz[0], yz[1]));
  SpanBasis<S> rspan(36);
  for (auto& m : rmats) rspan.add(m.flat());

  const std::vector<std::string> vnames = {"p", "q", "r", "a", "b", "c"};
  auto vidx = [&](const std::string& n) {
    for (std::size_t i = 0; i < 6; ++i)
      if (vnames[i] == n) return i;
    throw std::logic_error("bad generator name");
  };
  auto ridx = [&](const std::string& n) {
    for (std::size_t i = 0; i < 6; ++i)
      if (rnames[i] == n) return i;
    throw std::logic_error("bad operator name");
  };

  std::vector<TableAuditLine> out;
  auto describe_even = [&](const Mat<S>& m) {
    auto coords = rspan.coords(m.flat());
    return coords ? detail::coeff_string(*coords, rnames) : std::string("outside span(g0)");
  };

  // odd-odd rows: anticommutators against their quoted even values
  struct OddOdd {
    const char* lhs;
    const char* x;
    const char* y;
    std::vector<std::pair<std::string, S>> rhs;
  };
  std::vector<OddOdd> oddodd = {
      {"[q,p]+", "q", "p", {}},
      {"[q,r]+", "q", "r", {}},
      {"[p,r]+", "p", "r", {}},
      {"[a,b]+", "a", "b", {}},
      {"[a,c]+", "a", "c", {}},
      {"[b,c]+", "b", "c", {}},
      {"[r,c]+", "r", "c", {}},
      {"[p,a]+", "p", "a", {{"R(p,a)", S(1)}}},
      {"[q,a]+", "q", "a", {{"R(q,a)", S(1)}}},
      {"[p,b]+", "p", "b", {{"R(p,b)", S(1)}}},
      {"[q,b]+", "q", "b", {{"R(q,b)", S(1)}}},
      {"[p,c]+", "p", "c", {{"R(p,c)", S(1)}}},
      {"[q,c]+", "q", "c", {{"R(q,c)", S(1)}}},
      {"[r,a]+", "r", "a", {{"R(q,c)", p.e2 / p.e3}}},
      {"[r,b]+", "r", "b", {{"R(p,c)", p.e2 / p.e3}}},
  };
  for (const auto& row : oddodd) {
    Mat<S> computed = alts.r_matrix(vidx(row.x), vidx(row.y));
    Mat<S> quoted(6, 6);
    for (const auto& [nm, c] : row.rhs) {
      Mat<S> term = rmats[ridx(nm)];
      term *= c;
      quoted += term;
    }
    bool ok = (computed - quoted).max_abs() <= (scalar_traits<S>::is_exact ? 0.0 : tol);
    out.push_back({row.lhs, detail::coeff_string(rspan.coords(quoted.flat()).value_or(Vec<S>(6, S(0))), rnames),
                   describe_even(computed), ok});
  }

  // even-odd rows: operator action on generators
  struct EvenOdd {
    std::string op;
    std::string v;
    std::vector<std::pair<std::string, S>> rhs;  // coefficients on generators
  };
  std::vector<EvenOdd> evenodd = {
      {"R(p,a)", "q", {{"q", S(2) * p.e1}}},  {"R(p,a)", "p", {}},
      {"R(p,a)", "r", {{"r", p.e2}}},         {"R(q,a)", "q", {}},
      {"R(q,a)", "p", {{"q", S(-2) * p.e1}}}, {"R(q,a)", "r", {}},
      {"R(p,b)", "q", {{"p", S(2) * p.e1}}},  {"R(p,b)", "p", {}},
      {"R(p,b)", "r", {}},                    {"R(q,b)", "q", {}},
      {"R(q,b)", "p", {{"p", S(-2) * p.e1}}}, {"R(q,b)", "r", {{"r", -p.e2}}},
      {"R(p,c)", "q", {{"r", p.e3}}},         {"R(p,c)", "p", {}},
      {"R(p,c)", "r", {}},                    {"R(q,c)", "q", {}},
      {"R(q,c)", "p", {{"r", -p.e3}}},        {"R(q,c)", "r", {}},
      {"R(p,a)", "a", {}},                    {"R(p,a)", "b", {{"b", S(2) * p.et1}}},
      {"R(p,a)", "c", {{"c", p.et2}}},        {"R(q,a)", "a", {}},
      {"R(q,a)", "b", {{"a", S(2) * p.et1}}}, {"R(q,a)", "c", {}},
      {"R(p,b)", "a", {{"b", S(-2) * p.et1}}}, {"R(p,b)", "b", {}},
      {"R(p,b)", "c", {}},                    {"R(q,b)", "a", {{"a", S(-2) * p.et1}}},
      {"R(q,b)", "b", {}},                    {"R(q,b)", "c", {{"c", -p.et2}}},
      {"R(p,c)", "a", {{"c", -p.et2}}},       {"R(p,c)", "b", {}},
      {"R(p,c)", "c", {}},                    {"R(q,c)", "a", {}},
      {"R(q,c)", "b", {{"c", p.et2}}},        {"R(q,c)", "c", {}},
  };
  for (const auto& row : evenodd) {
    Vec<S> computed = rmats[ridx(row.op)].apply(basis_vec<S>(6, vidx(row.v)));
    Vec<S> quoted(6, S(0));
    for (const auto& [nm, c] : row.rhs) quoted[vidx(nm)] += c;
    double worst = 0.0;
    for (std::size_t k = 0; k < 6; ++k)
      worst = std::max(worst, std::fabs(to_double(computed[k] - quoted[k])));
    bool ok = worst <= (scalar_traits<S>::is_exact ? 0.0 : tol);
    out.push_back({"[" + row.op + "," + row.v + "]-", detail::coeff_string(quoted, vnames),
                   detail::coeff_string(computed, vnames), ok});
  }

  // even-even rows, exactly as quoted (including the duplicated contradictory line)
  struct EvenEven {
    const char* x;
    const char* y;
    std::vector<std::pair<std::string, S>> rhs;
    const char* note;
  };
  std::vector<EvenEven> eveneven = {
      {"R(p,a)", "R(p,b)", {{"R(p,b)", S(-2) * p.e1}}, ""},
      {"R(p,a)", "R(q,a)", {{"R(q,a)", S(2) * p.e1}}, ""},
      {"R(p,a)", "R(p,b)", {}, " (duplicated quoted line)"},
      {"R(p,a)", "R(p,c)", {{"R(p,c)", p.et2}}, ""},
      {"R(p,a)", "R(q,c)", {{"R(q,c)", p.e2}}, ""},
      {"R(p,b)", "R(q,a)", {{"R(q,b)", S(2) * p.e1}, {"R(p,a)", S(2) * p.e1}}, ""},
      {"R(p,b)", "R(q,b)", {{"R(p,b)", S(2) * p.e1}}, ""},
      {"R(p,b)", "R(p,c)", {}, ""},
      {"R(p,b)", "R(q,c)", {{"R(p,c)", S(2) * p.e1}}, ""},
      {"R(q,a)", "R(q,b)", {{"R(q,a)", S(-2) * p.e1}}, ""},
      {"R(q,a)", "R(p,c)", {{"R(p,c)", S(-2) * p.e1}}, ""},
      {"R(q,a)", "R(q,c)", {}, ""},
      {"R(q,b)", "R(p,c)", {{"R(p,c)", -p.e2}}, ""},
      {"R(q,b)", "R(q,c)", {{"R(q,c)", -p.et2}}, ""},
      {"R(p,c)", "R(q,c)", {}, ""},
  };
  for (const auto& row : eveneven) {
    Mat<S> computed = commutator(rmats[ridx(row.x)], rmats[ridx(row.y)]);
    Mat<S> quoted(6, 6);
    for (const auto& [nm, c] : row.rhs) {
      Mat<S> term = rmats[ridx(nm)];
      term *= c;
      quoted += term;
    }
    bool ok = (computed - quoted).max_abs() <= (scalar_traits<S>::is_exact ? 0.0 : tol);
    out.push_back({"[" + std::string(row.x) + "," + row.y + "]-" + row.note,
                   detail::coeff_string(rspan.coords(quoted.flat()).value_or(Vec<S>(6, S(0))), rnames),
                   describe_even(computed), ok});
  }
  return out;
}

/// Rescales the basis vectors c and r so that R(p,c) = R(b,r) and
/// R(q,c) = R(a,r) in the new pair; the forced factor is c -> (e2/e3) c.
template <class S>
OscillatorPair<S> renormalize_rc(const OscillatorPair<S>& osc) {
  const auto& p = osc.params;
  if (scalar_traits<S>::is_zero(p.e2, 0.0) || scalar_traits<S>::is_zero(p.e3, 0.0))
    throw std::invalid_argument("renormalize_rc: degenerate params");
  S gamma = p.e2 / p.e3;  // scale on c; r is left unscaled
  // transform structure constants under c' = gamma c (diagonal change of basis)
  IsotopicPair<S> np = osc.pair;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          S v = osc.pair.m1(a, i, j, k);
          if (a == kC) v = v * gamma;  // isotope slot is linear in c
          np.m1(a, i, j, k) = v;
        }
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          S v = osc.pair.m2(x, i, j, k);
          if (i == kC) v = v * gamma;  // scaled argument slots
          if (j == kC) v = v * gamma;
          if (k == kC) v = v / gamma;  // output coordinate in the scaled basis
          np.m2(x, i, j, k) = v;
        }
  return {std::move(np), osc.params};
}

}  // namespace isopair
