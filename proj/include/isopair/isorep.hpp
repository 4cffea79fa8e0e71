#pragma once

#include <utility>
#include <vector>

#include "isopair/bunch.hpp"
#include "isopair/representation.hpp"

namespace isopair {

/// A pair (T, Q) with T(X) Q T(Y) - T(Y) Q T(X) = T([X,Y]); equivalently a
/// representation of the pair (C, g) with T1(1) = Q and T2 = T.
template <class S>
struct Isorep {
  std::vector<Mat<S>> t;   // one matrix per g basis element
  Mat<S> q;
  std::optional<std::pair<std::size_t, std::size_t>> grading;  // split shape (d1,d2)

  std::size_t dim() const { return q.rows(); }
};

template <class S>
AxiomReport verify_isorep(const Isorep<S>& iso, const LieAlgebra<S>& g, double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  if (iso.t.size() != g.n) throw std::invalid_argument("verify_isorep: basis count mismatch");
  AxiomReport report;
  report.subject = "isorepresentation";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;
  CheckAccumulator acc("T(X)QT(Y)-T(Y)QT(X)=T([X,Y])", exact, tol);
  for (std::size_t x = 0; x < g.n; ++x)
    for (std::size_t y = x + 1; y < g.n; ++y) {
      Mat<S> lhs = iso.t[x] * iso.q * iso.t[y] - iso.t[y] * iso.q * iso.t[x];
      Vec<S> br = g.bracket(basis_vec<S>(g.n, x), basis_vec<S>(g.n, y));
      Mat<S> rhs(iso.dim(), iso.dim());
      for (std::size_t k = 0; k < g.n; ++k) {
        Mat<S> term = iso.t[k];
        term *= br[k];
        rhs += term;
      }
      acc.record((lhs - rhs).max_abs(), {static_cast<int>(x), static_cast<int>(y)});
    }
  report.checks.push_back(acc.result());
  return report;
}

/// The same data as a representation of the enlarged pair (C, g), for
/// cross-checking the two verifiers against each other.
template <class S>
std::pair<IsotopicPair<S>, PairRepresentation<S>> isorep_as_pair_representation(
    const Isorep<S>& iso, const LieAlgebra<S>& g) {
  PairRepresentation<S> rep;
  rep.dim_w = iso.dim();
  rep.grading = iso.grading;
  rep.t1 = {iso.q};
  rep.t2 = iso.t;
  return {pair_from_lie_algebra(g), rep};
}

/// Forward conversion: an isorep yields two ordinary g-representations
/// T+(X) = Q T(X) and T-(X) = T(X) Q (equivalent when Q is invertible).
template <class S>
std::pair<std::vector<Mat<S>>, std::vector<Mat<S>>> isorep_to_representations(
    const Isorep<S>& iso) {
  std::vector<Mat<S>> plus, minus;
  for (const auto& m : iso.t) {
    plus.push_back(iso.q * m);
    minus.push_back(m * iso.q);
  }
  return {plus, minus};
}

/// Commutator check [T(X),T(Y)] = T([X,Y]) for an ordinary representation.
template <class S>
AxiomReport verify_lie_representation(const std::vector<Mat<S>>& t, const LieAlgebra<S>& g,
                                      double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  AxiomReport report;
  report.subject = "Lie algebra representation";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;
  CheckAccumulator acc("[T(X),T(Y)]=T([X,Y])", exact, tol);
  const std::size_t w = t.empty() ? 0 : t.front().rows();
  for (std::size_t x = 0; x < g.n; ++x)
    for (std::size_t y = x + 1; y < g.n; ++y) {
      Mat<S> lhs = commutator(t[x], t[y]);
      Vec<S> br = g.bracket(basis_vec<S>(g.n, x), basis_vec<S>(g.n, y));
      Mat<S> rhs(w, w);
      for (std::size_t k = 0; k < g.n; ++k) {
        Mat<S> term = t[k];
        term *= br[k];
        rhs += term;
      }
      acc.record((lhs - rhs).max_abs(), {static_cast<int>(x), static_cast<int>(y)});
    }
  report.checks.push_back(acc.result());
  return report;
}

/// Reverse conversion: a representation T and invertible Q produce the two
/// isoreps T+(X) = Q^{-1} T(X) and T-(X) = T(X) Q^{-1}.
template <class S>
std::pair<Isorep<S>, Isorep<S>> representation_to_isoreps(const std::vector<Mat<S>>& t,
                                                          const Mat<S>& q, double tol = 1e-12) {
  auto qinv = inverse(q, tol);
  if (!qinv) throw std::invalid_argument("representation_to_isoreps: Q is singular");
  Isorep<S> plus, minus;
  plus.q = q;
  minus.q = q;
  for (const auto& m : t) {
    plus.t.push_back(*qinv * m);
    minus.t.push_back(m * (*qinv));
  }
  return {plus, minus};
}

/// Split isorep on ad (+) ad with Q the lower-left identity block and
/// T(X) the upper-right adjoint block; valid for every Lie algebra.
template <class S>
Isorep<S> standard_isorep(const LieAlgebra<S>& g) {
  const std::size_t n = g.n;
  Isorep<S> iso;
  iso.grading = std::make_pair(n, n);
  iso.q = Mat<S>(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) iso.q(n + i, i) = S(1);
  for (std::size_t a = 0; a < n; ++a) {
    Mat<S> ad = g.ad(a);
    Mat<S> t(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, n + j) = ad(i, j);
    iso.t.push_back(std::move(t));
  }
  return iso;
}

/// The 2-dimensional split isorep of a one-dimensional Lie algebra:
/// Q = [[0,0],[1,0]], T(generator) = [[0,1],[0,0]].
template <class S>
std::pair<LieAlgebra<S>, Isorep<S>> two_dimensional_example_isorep() {
  LieAlgebra<S> g(1);
  Isorep<S> iso;
  iso.grading = std::make_pair(1u, 1u);
  iso.q = Mat<S>(2, 2);
  iso.q(1, 0) = S(1);
  Mat<S> t(2, 2);
  t(0, 1) = S(1);
  iso.t = {t};
  return {g, iso};
}

struct SplitIsorepReport {
  bool split_shape = false;       // Q lower-left, T(X) upper-right
  bool q_block_invertible = false;
  bool intertwined = false;       // Q-block intertwines the two induced actions
  double max_intertwine_residual = 0;
};

/// Structure prescribed for irreducible split isoreps: V = V1 (+) V2 with the
/// Q-block an isomorphism V1 -> V2 intertwining the induced actions.
/// Irreducibility itself is an input assumption and is not tested.
template <class S>
SplitIsorepReport split_isorep_structure_check(const Isorep<S>& iso, double tol = 1e-10) {
  if (!iso.grading) throw std::invalid_argument("split structure check: no grading declared");
  auto [d1, d2] = *iso.grading;
  const std::size_t w = iso.dim();
  if (d1 + d2 != w) throw std::invalid_argument("split structure check: bad grading");
  SplitIsorepReport out;

  auto lower_left_only = [&](const Mat<S>& m) {
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j)
        if (!(i >= d1 && j < d1) && !scalar_traits<S>::is_zero(m(i, j), tol)) return false;
    return true;
  };
  auto upper_right_only = [&](const Mat<S>& m) {
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j)
        if (!(i < d1 && j >= d1) && !scalar_traits<S>::is_zero(m(i, j), tol)) return false;
    return true;
  };
  out.split_shape = lower_left_only(iso.q);
  for (const auto& m : iso.t) out.split_shape = out.split_shape && upper_right_only(m);

  Mat<S> qb(d2, d1);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d1; ++j) qb(i, j) = iso.q(d1 + i, j);
  out.q_block_invertible = d1 == d2 && rank(qb, tol) == d1;

  // induced actions: T-(X) = t_block * Q-block on V1, T+(X) = Q-block * t_block on V2
  out.intertwined = true;
  for (const auto& m : iso.t) {
    Mat<S> tb(d1, d2);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d2; ++j) tb(i, j) = m(i, d1 + j);
    Mat<S> lhs = qb * (tb * qb);
    Mat<S> rhs = (qb * tb) * qb;
    double res = (lhs - rhs).max_abs();
    out.max_intertwine_residual = std::max(out.max_intertwine_residual, res);
    if (res > tol) out.intertwined = false;
  }
  return out;
}

}  // namespace isopair
