#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isopair/diamond.hpp"
#include "isopair/pair.hpp"

namespace isopair {

/// Lie algebra given by structure constants, with optional matrix realization.
template <class S>
struct LieAlgebra {
  std::size_t n = 0;
  Tensor3<S> c;  // [e_i,e_j] = sum c(i,j,k) e_k
  std::vector<Mat<S>> matrices;

  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim) : n(dim), c(dim, dim, dim) {}

  void set(std::size_t i, std::size_t j, const Vec<S>& vec) {
    for (std::size_t k = 0; k < n; ++k) {
      c(i, j, k) = vec[k];
      c(j, i, k) = -vec[k];
    }
  }

  Vec<S> bracket(const Vec<S>& u, const Vec<S>& v) const { return apply_bracket(c, u, v); }

  /// Adjoint action matrix of basis element e_a.
  Mat<S> ad(std::size_t a) const {
    Mat<S> m(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m(k, j) = c(a, j, k);
    return m;
  }

  AxiomReport verify(double tol = 1e-10) const { return is_lie(c, tol); }
};

template <class S>
LieAlgebra<S> sl2() {
  // basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
  LieAlgebra<S> g(3);
  g.set(0, 1, {S(0), S(2), S(0)});
  g.set(0, 2, {S(0), S(0), S(-2)});
  g.set(1, 2, {S(1), S(0), S(0)});
  return g;
}

/// A g-module V carrying a g-indexed linear family of Lie brackets:
/// action[a] is the operator of e_a on V, bracket family br(a,u,v,w).
template <class S>
struct LieBunch {
  LieAlgebra<S> g;
  std::size_t dim_v = 0;
  std::vector<Mat<S>> action;  // one dim_v x dim_v matrix per g basis element
  Tensor4<S> brackets;         // (n_g, dim_v, dim_v, dim_v)

  LieBunch() = default;
  LieBunch(LieAlgebra<S> g_, std::size_t dv)
      : g(std::move(g_)), dim_v(dv), action(g.n, Mat<S>(dv, dv)), brackets(g.n, dv, dv, dv) {}

  Tensor3<S> bracket_for(const Vec<S>& iso) const {
    Tensor3<S> out(dim_v, dim_v, dim_v);
    for (std::size_t a = 0; a < g.n; ++a) {
      if (scalar_traits<S>::is_zero(iso[a], 0.0)) continue;
      for (std::size_t i = 0; i < dim_v; ++i)
        for (std::size_t j = 0; j < dim_v; ++j)
          for (std::size_t k = 0; k < dim_v; ++k) out(i, j, k) += iso[a] * brackets(a, i, j, k);
    }
    return out;
  }

  Vec<S> bracket(std::size_t a, const Vec<S>& u, const Vec<S>& v) const {
    Vec<S> out(dim_v, S(0));
    for (std::size_t i = 0; i < dim_v; ++i) {
      if (scalar_traits<S>::is_zero(u[i], 0.0)) continue;
      for (std::size_t j = 0; j < dim_v; ++j) {
        if (scalar_traits<S>::is_zero(v[j], 0.0)) continue;
        S f = u[i] * v[j];
        for (std::size_t k = 0; k < dim_v; ++k) out[k] += f * brackets(a, i, j, k);
      }
    }
    return out;
  }
};

struct BunchReport {
  AxiomReport axioms;
  bool complete = false;
  std::vector<int> failing_triple;  // (a, b, z) when completeness fails
};

namespace detail {

/// Diamond composition tensor of the family members a and b at basis element z.
template <class S>
Tensor3<S> bunch_diamond(const LieBunch<S>& bunch, std::size_t a, std::size_t b, std::size_t z) {
  Tensor3<S> ta(bunch.dim_v, bunch.dim_v, bunch.dim_v), tb = ta;
  for (std::size_t i = 0; i < bunch.dim_v; ++i)
    for (std::size_t j = 0; j < bunch.dim_v; ++j)
      for (std::size_t k = 0; k < bunch.dim_v; ++k) {
        ta(i, j, k) = bunch.brackets(a, i, j, k);
        tb(i, j, k) = bunch.brackets(b, i, j, k);
      }
  return diamond_bracket(ta, tb, basis_vec<S>(bunch.dim_v, z));
}

}  // namespace detail

/// Per-isotope Jacobi (basis + polarized), infinitesimal g-equivariance
///   X.[u,v]_A = [X.u,v]_A + [u,X.v]_A + [u,v]_{[X,A]},
/// and completeness: each diamond composition must be realized by some C in g.
/// The solved C tensors are returned through `compositions` for reuse.
template <class S>
BunchReport verify_bunch(const LieBunch<S>& bunch, double tol = 1e-10,
                         Tensor3<S>* compositions = nullptr) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  BunchReport out;
  out.axioms.subject = "Lie bunch";
  out.axioms.exact_backend = exact;
  out.axioms.tolerance = exact ? 0.0 : tol;
  const std::size_t ng = bunch.g.n, nv = bunch.dim_v;

  out.axioms.merge(bunch.g.verify(tol), "g");

  {
    CheckAccumulator acc("family antisymmetry", exact, tol);
    for (std::size_t a = 0; a < ng; ++a)
      for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j)
          for (std::size_t k = 0; k < nv; ++k)
            acc.record(std::fabs(to_double(bunch.brackets(a, i, j, k) + bunch.brackets(a, j, i, k))),
                       {static_cast<int>(a), static_cast<int>(i), static_cast<int>(j)});
    out.axioms.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("family jacobi", exact, tol);
    auto br = [&](std::size_t a, const Vec<S>& u, const Vec<S>& v) { return bunch.bracket(a, u, v); };
    detail::check_jacobi_basis<S>(acc, nv, ng, br, nv);
    detail::check_jacobi_polarized<S>(acc, nv, ng, br, nv);
    out.axioms.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("equivariance", exact, tol);
    for (std::size_t x = 0; x < ng; ++x)
      for (std::size_t a = 0; a < ng; ++a)
        for (std::size_t u = 0; u < nv; ++u)
          for (std::size_t v = 0; v < nv; ++v) {
            Vec<S> ub = basis_vec<S>(nv, u), vb = basis_vec<S>(nv, v);
            Vec<S> lhs = bunch.action[x].apply(bunch.bracket(a, ub, vb));
            Vec<S> r1 = bunch.bracket(a, bunch.action[x].apply(ub), vb);
            Vec<S> r2 = bunch.bracket(a, ub, bunch.action[x].apply(vb));
            Vec<S> xa = bunch.g.bracket(basis_vec<S>(ng, x), basis_vec<S>(ng, a));
            Vec<S> r3(nv, S(0));
            for (std::size_t w = 0; w < ng; ++w) {
              if (scalar_traits<S>::is_zero(xa[w], 0.0)) continue;
              Vec<S> t = bunch.bracket(w, ub, vb);
              for (std::size_t k = 0; k < nv; ++k) r3[k] += xa[w] * t[k];
            }
            double worst = 0;
            for (std::size_t k = 0; k < nv; ++k)
              worst = std::max(worst, std::fabs(to_double(lhs[k] - r1[k] - r2[k] - r3[k])));
            acc.record(worst, {static_cast<int>(x), static_cast<int>(a), static_cast<int>(u),
                               static_cast<int>(v)});
          }
    out.axioms.checks.push_back(acc.result());
  }

  // completeness: solve [.,.]_C = diamond(a,b,z) for C in g, per basis triple
  out.complete = true;
  if (compositions) *compositions = Tensor3<S>(ng, ng * nv, ng);  // flattened (a, b*nv+z, c)
  CheckAccumulator acc("completeness", exact, tol);
  for (std::size_t a = 0; a < ng && out.complete; ++a)
    for (std::size_t b = 0; b < ng && out.complete; ++b)
      for (std::size_t z = 0; z < nv && out.complete; ++z) {
        Tensor3<S> target = detail::bunch_diamond(bunch, a, b, z);
        // unknown coefficients C_w against the family tensor entries
        Mat<S> sys(nv * nv * nv, ng);
        Vec<S> rhs(nv * nv * nv, S(0));
        std::size_t row = 0;
        for (std::size_t i = 0; i < nv; ++i)
          for (std::size_t j = 0; j < nv; ++j)
            for (std::size_t k = 0; k < nv; ++k, ++row) {
              for (std::size_t w = 0; w < ng; ++w) sys(row, w) = bunch.brackets(w, i, j, k);
              rhs[row] = target(i, j, k);
            }
        auto sol = solve_consistent(sys, rhs, tol);
        if (!sol) {
          out.complete = false;
          out.failing_triple = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(z)};
          acc.record(1.0, {static_cast<int>(a), static_cast<int>(b), static_cast<int>(z)});
          break;
        }
        if (compositions)
          for (std::size_t w = 0; w < ng; ++w) (*compositions)(a, b * nv + z, w) = (*sol)[w];
      }
  out.axioms.checks.push_back(acc.result());
  return out;
}

/// Enlargement of a complete bunch to the pair (V (+) C, g):
///   [(X,l),(Y,m)]_A = ([X,Y]_A + l A(Y) - m A(X), 0)
///   [A,B]_{(X,l)}   = A diamond_X B + l [A,B].
template <class S>
IsotopicPair<S> enlarge_bunch(const LieBunch<S>& bunch, double tol = 1e-10) {
  Tensor3<S> comp;
  BunchReport rep = verify_bunch(bunch, tol, &comp);
  if (!rep.complete) {
    std::string where = "(?)";
    if (rep.failing_triple.size() == 3)
      where = "(" + std::to_string(rep.failing_triple[0]) + "," +
              std::to_string(rep.failing_triple[1]) + "," + std::to_string(rep.failing_triple[2]) +
              ")";
    throw std::invalid_argument("enlarge_bunch: bunch is not complete, failing triple " + where);
  }
  const std::size_t nv = bunch.dim_v, ng = bunch.g.n, n1 = nv + 1;
  IsotopicPair<S> pair(n1, ng);
  // V1 side: isotopes in g
  for (std::size_t a = 0; a < ng; ++a) {
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = i + 1; j < nv; ++j) {
        Vec<S> v = bunch.bracket(a, basis_vec<S>(nv, i), basis_vec<S>(nv, j));
        v.resize(n1, S(0));
        pair.set1(a, i, j, v);
      }
    for (std::size_t j = 0; j < nv; ++j) {
      // [(0,1),(e_j,0)]_A = (A(e_j), 0)
      Vec<S> v = bunch.action[a].apply(basis_vec<S>(nv, j));
      v.resize(n1, S(0));
      pair.set1(a, nv, j, v);
    }
  }
  // V2 side: isotopes in V (+) C
  for (std::size_t x = 0; x < nv; ++x)
    for (std::size_t a = 0; a < ng; ++a)
      for (std::size_t b = a + 1; b < ng; ++b) {
        Vec<S> v(ng);
        for (std::size_t w = 0; w < ng; ++w) v[w] = comp(a, b * nv + x, w);
        pair.set2(x, a, b, v);
      }
  for (std::size_t a = 0; a < ng; ++a)
    for (std::size_t b = a + 1; b < ng; ++b)
      pair.set2(nv, a, b, bunch.g.bracket(basis_vec<S>(ng, a), basis_vec<S>(ng, b)));
  return pair;
}

/// The bunch with V = 0 over g; its enlargement is the pair (C, g) with
/// [A,B]_lambda = lambda [A,B].
template <class S>
IsotopicPair<S> pair_from_lie_algebra(const LieAlgebra<S>& g) {
  IsotopicPair<S> pair(1, g.n);
  for (std::size_t a = 0; a < g.n; ++a)
    for (std::size_t b = a + 1; b < g.n; ++b)
      pair.set2(0, a, b, g.bracket(basis_vec<S>(g.n, a), basis_vec<S>(g.n, b)));
  return pair;
}

}  // namespace isopair
