#pragma once

#include "isopair/linalg.hpp"
#include "isopair/report.hpp"

namespace isopair {

/// Bracket tensor helpers for a single space: [e_i,e_j] = sum_k c(i,j,k) e_k.
template <class S>
Vec<S> apply_bracket(const Tensor3<S>& c, const Vec<S>& x, const Vec<S>& y) {
  const std::size_t n = c.dim(0);
  Vec<S> out(n, S(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (scalar_traits<S>::is_zero(x[i], 0.0)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (scalar_traits<S>::is_zero(y[j], 0.0)) continue;
      S f = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) out[k] += f * c(i, j, k);
    }
  }
  return out;
}

/// Composition of two brackets at a fixed element z:
/// [X,Y]_out = 1/2([[X,z]_A,Y]_B + [[X,Y]_A,z]_B + [[z,Y]_A,X]_B - (A<->B)).
/// Experimental tool: the result is reported, never asserted to be a Lie bracket.
template <class S>
Tensor3<S> diamond_bracket(const Tensor3<S>& bracket_a, const Tensor3<S>& bracket_b,
                           const Vec<S>& z) {
  const std::size_t n = bracket_a.dim(0);
  if (bracket_b.dim(0) != n || z.size() != n)
    throw std::invalid_argument("diamond_bracket: dimension mismatch");
  Tensor3<S> out(n, n, n);
  S half = S(1) / S(2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<S> x = basis_vec<S>(n, i), y = basis_vec<S>(n, j);
      auto sum3 = [&](const Tensor3<S>& A, const Tensor3<S>& B) {
        Vec<S> t1 = apply_bracket(B, apply_bracket(A, x, z), y);
        Vec<S> t2 = apply_bracket(B, apply_bracket(A, x, y), z);
        Vec<S> t3 = apply_bracket(B, apply_bracket(A, z, y), x);
        for (std::size_t k = 0; k < n; ++k) t1[k] += t2[k] + t3[k];
        return t1;
      };
      Vec<S> fwd = sum3(bracket_a, bracket_b), bwd = sum3(bracket_b, bracket_a);
      for (std::size_t k = 0; k < n; ++k) out(i, j, k) = half * (fwd[k] - bwd[k]);
    }
  return out;
}

/// Antisymmetry + Jacobi report for a bracket tensor on one space.
template <class S>
AxiomReport is_lie(const Tensor3<S>& c, double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  AxiomReport report;
  report.subject = "bracket tensor";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;
  const std::size_t n = c.dim(0);
  {
    CheckAccumulator acc("antisymmetry", exact, tol);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          acc.record(std::fabs(to_double(c(i, j, k) + c(j, i, k))),
                     {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("jacobi", exact, tol);
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = i + 1; j + 1 < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Vec<S> x = basis_vec<S>(n, i), y = basis_vec<S>(n, j), z = basis_vec<S>(n, k);
          Vec<S> r = apply_bracket(c, apply_bracket(c, x, y), z);
          Vec<S> r2 = apply_bracket(c, apply_bracket(c, z, x), y);
          Vec<S> r3 = apply_bracket(c, apply_bracket(c, y, z), x);
          double worst = 0.0;
          for (std::size_t w = 0; w < n; ++w)
            worst = std::max(worst, std::fabs(to_double(r[w] + r2[w] + r3[w])));
          acc.record(worst, {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)});
        }
    report.checks.push_back(acc.result());
  }
  return report;
}

}  // namespace isopair
