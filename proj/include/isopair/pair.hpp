#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "isopair/linalg.hpp"
#include "isopair/rational.hpp"
#include "isopair/report.hpp"

namespace isopair {

enum class Side { V1, V2 };

/// Two spaces, each carrying a family of Lie brackets indexed by the other:
/// m1(a,i,j,k) gives the e_k coefficient of [e_i,e_j] on V1 with isotope f_a in V2,
/// and m2 the mirror family on V2 with isotopes in V1.
template <class S>
struct IsotopicPair {
  std::size_t n1 = 0, n2 = 0;
  Tensor4<S> m1;  // (n2, n1, n1, n1)
  Tensor4<S> m2;  // (n1, n2, n2, n2)

  IsotopicPair() = default;
  IsotopicPair(std::size_t dim1, std::size_t dim2)
      : n1(dim1), n2(dim2), m1(dim2, dim1, dim1, dim1), m2(dim1, dim2, dim2, dim2) {}

  /// Sets [e_i,e_j]_{f_a} = vec on V1 (and the antisymmetric mirror entry).
  void set1(std::size_t a, std::size_t i, std::size_t j, const Vec<S>& vec) {
    for (std::size_t k = 0; k < n1; ++k) {
      m1(a, i, j, k) = vec[k];
      m1(a, j, i, k) = -vec[k];
    }
  }
  void set2(std::size_t x, std::size_t a, std::size_t b, const Vec<S>& vec) {
    for (std::size_t k = 0; k < n2; ++k) {
      m2(x, a, b, k) = vec[k];
      m2(x, b, a, k) = -vec[k];
    }
  }

  /// [x,y] on V1 with a general V2 isotope, all given in coordinates.
  Vec<S> bracket1(const Vec<S>& iso, const Vec<S>& x, const Vec<S>& y) const {
    if (iso.size() != n2 || x.size() != n1 || y.size() != n1)
      throw std::invalid_argument("isobracket: dimension mismatch on V1 side");
    Vec<S> out(n1, S(0));
    for (std::size_t a = 0; a < n2; ++a) {
      if (scalar_traits<S>::is_zero(iso[a], 0.0)) continue;
      for (std::size_t i = 0; i < n1; ++i) {
        if (scalar_traits<S>::is_zero(x[i], 0.0)) continue;
        for (std::size_t j = 0; j < n1; ++j) {
          if (scalar_traits<S>::is_zero(y[j], 0.0)) continue;
          S c = iso[a] * x[i] * y[j];
          for (std::size_t k = 0; k < n1; ++k) {
            const S& t = m1(a, i, j, k);
            if (!scalar_traits<S>::is_zero(t, 0.0)) out[k] += c * t;
          }
        }
      }
    }
    return out;
  }

  Vec<S> bracket2(const Vec<S>& iso, const Vec<S>& a, const Vec<S>& b) const {
    if (iso.size() != n1 || a.size() != n2 || b.size() != n2)
      throw std::invalid_argument("isobracket: dimension mismatch on V2 side");
    Vec<S> out(n2, S(0));
    for (std::size_t x = 0; x < n1; ++x) {
      if (scalar_traits<S>::is_zero(iso[x], 0.0)) continue;
      for (std::size_t i = 0; i < n2; ++i) {
        if (scalar_traits<S>::is_zero(a[i], 0.0)) continue;
        for (std::size_t j = 0; j < n2; ++j) {
          if (scalar_traits<S>::is_zero(b[j], 0.0)) continue;
          S c = iso[x] * a[i] * b[j];
          for (std::size_t k = 0; k < n2; ++k) {
            const S& t = m2(x, i, j, k);
            if (!scalar_traits<S>::is_zero(t, 0.0)) out[k] += c * t;
          }
        }
      }
    }
    return out;
  }

  /// Basis-indexed slice of the structure tensor.
  Vec<S> bracket1_basis(std::size_t a, std::size_t i, std::size_t j) const {
    Vec<S> out(n1);
    for (std::size_t k = 0; k < n1; ++k) out[k] = m1(a, i, j, k);
    return out;
  }
  Vec<S> bracket2_basis(std::size_t x, std::size_t i, std::size_t j) const {
    Vec<S> out(n2);
    for (std::size_t k = 0; k < n2; ++k) out[k] = m2(x, i, j, k);
    return out;
  }
};

template <class S>
Vec<S> basis_vec(std::size_t n, std::size_t i) {
  Vec<S> v(n, S(0));
  v[i] = S(1);
  return v;
}

/// The isocommutator [x,y]_isotope on the requested side.
template <class S>
Vec<S> isobracket(const IsotopicPair<S>& pair, Side side, const Vec<S>& isotope, const Vec<S>& x,
                  const Vec<S>& y) {
  return side == Side::V1 ? pair.bracket1(isotope, x, y) : pair.bracket2(isotope, x, y);
}

template <class T, class S>
IsotopicPair<T> pair_cast(const IsotopicPair<S>& p) {
  IsotopicPair<T> out(p.n1, p.n2);
  for (std::size_t a = 0; a < p.n2; ++a)
    for (std::size_t i = 0; i < p.n1; ++i)
      for (std::size_t j = 0; j < p.n1; ++j)
        for (std::size_t k = 0; k < p.n1; ++k) out.m1(a, i, j, k) = T(to_double(p.m1(a, i, j, k)));
  for (std::size_t x = 0; x < p.n1; ++x)
    for (std::size_t i = 0; i < p.n2; ++i)
      for (std::size_t j = 0; j < p.n2; ++j)
        for (std::size_t k = 0; k < p.n2; ++k) out.m2(x, i, j, k) = T(to_double(p.m2(x, i, j, k)));
  return out;
}

namespace detail {

template <class S>
void accumulate_vec(CheckAccumulator& acc, const Vec<S>& residual, std::initializer_list<int> w) {
  acc.record(vec_max_abs(residual), w);
}

template <class S>
Vec<S> vsub(Vec<S> a, const Vec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
template <class S>
Vec<S> vadd(Vec<S> a, const Vec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
template <class S>
Vec<S> vscale(const S& c, Vec<S> a) {
  for (auto& x : a) x *= c;
  return a;
}

// Jacobi identity for one basis isotope: J_A(X,Y,Z) over basis triples.
template <class S, class Br>
void check_jacobi_basis(CheckAccumulator& acc, std::size_t n_arg, std::size_t n_iso, Br&& br,
                        std::size_t dim_arg) {
  for (std::size_t a = 0; a < n_iso; ++a) {
    for (std::size_t i = 0; i + 2 < n_arg; ++i)
      for (std::size_t j = i + 1; j + 1 < n_arg; ++j)
        for (std::size_t k = j + 1; k < n_arg; ++k) {
          Vec<S> x = basis_vec<S>(dim_arg, i), y = basis_vec<S>(dim_arg, j),
                 z = basis_vec<S>(dim_arg, k);
          Vec<S> r = vadd(vadd(br(a, br(a, x, y), z), br(a, br(a, z, x), y)), br(a, br(a, y, z), x));
          accumulate_vec(acc, r, {static_cast<int>(a), static_cast<int>(i), static_cast<int>(j),
                                  static_cast<int>(k)});
        }
  }
}

// Polarized (two-isotope) Jacobi; with the single-isotope checks this covers the
// whole linear family, the identity being quadratic in the isotope.
template <class S, class Br>
void check_jacobi_polarized(CheckAccumulator& acc, std::size_t n_arg, std::size_t n_iso, Br&& br,
                            std::size_t dim_arg) {
  for (std::size_t a = 0; a + 1 < n_iso; ++a)
    for (std::size_t b = a + 1; b < n_iso; ++b)
      for (std::size_t i = 0; i + 2 < n_arg; ++i)
        for (std::size_t j = i + 1; j + 1 < n_arg; ++j)
          for (std::size_t k = j + 1; k < n_arg; ++k) {
            Vec<S> x = basis_vec<S>(dim_arg, i), y = basis_vec<S>(dim_arg, j),
                   z = basis_vec<S>(dim_arg, k);
            auto term = [&](std::size_t p, std::size_t q) {
              return vadd(vadd(br(q, br(p, x, y), z), br(q, br(p, z, x), y)),
                          br(q, br(p, y, z), x));
            };
            Vec<S> r = vadd(term(a, b), term(b, a));
            accumulate_vec(acc, r, {static_cast<int>(a), static_cast<int>(b), static_cast<int>(i),
                                    static_cast<int>(j), static_cast<int>(k)});
          }
}

}  // namespace detail

/// Checks antisymmetry, Jacobi (basis + polarized isotopes) and both
/// compatibility identities over all basis tuples.
template <class S>
AxiomReport verify_isotopic_pair(const IsotopicPair<S>& pair, double tol = 1e-10) {
  using detail::vadd;
  using detail::vscale;
  using detail::vsub;
  constexpr bool exact = scalar_traits<S>::is_exact;
  AxiomReport report;
  report.subject = "isotopic pair";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;

  const std::size_t n1 = pair.n1, n2 = pair.n2;

  {
    CheckAccumulator anti("antisymmetry", exact, tol);
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
          for (std::size_t k = 0; k < n1; ++k)
            anti.record(std::fabs(to_double(pair.m1(a, i, j, k) + pair.m1(a, j, i, k))),
                        {static_cast<int>(a), static_cast<int>(i), static_cast<int>(j),
                         static_cast<int>(k)});
    for (std::size_t x = 0; x < n1; ++x)
      for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t k = 0; k < n2; ++k)
            anti.record(std::fabs(to_double(pair.m2(x, i, j, k) + pair.m2(x, j, i, k))),
                        {static_cast<int>(x), static_cast<int>(i), static_cast<int>(j),
                         static_cast<int>(k)});
    report.checks.push_back(anti.result());
  }

  auto br1 = [&](std::size_t a, const Vec<S>& x, const Vec<S>& y) {
    return pair.bracket1(basis_vec<S>(n2, a), x, y);
  };
  auto br2 = [&](std::size_t x, const Vec<S>& a, const Vec<S>& b) {
    return pair.bracket2(basis_vec<S>(n1, x), a, b);
  };

  {
    CheckAccumulator acc("jacobi V1", exact, tol);
    detail::check_jacobi_basis<S>(acc, n1, n2, br1, n1);
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("jacobi V2", exact, tol);
    detail::check_jacobi_basis<S>(acc, n2, n1, br2, n2);
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("jacobi V1 polarized", exact, tol);
    detail::check_jacobi_polarized<S>(acc, n1, n2, br1, n1);
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("jacobi V2 polarized", exact, tol);
    detail::check_jacobi_polarized<S>(acc, n2, n1, br2, n2);
    report.checks.push_back(acc.result());
  }

  // Compatibility identity on V1:
  // [X,Y]_{[A,B]_Z} = 1/2([[X,Z]_A,Y]_B + [[X,Y]_A,Z]_B + [[Z,Y]_A,X]_B - (A<->B))
  {
    CheckAccumulator acc("compatibility V1", exact, tol);
    S half = S(1) / S(2);
    for (std::size_t X = 0; X < n1; ++X)
      for (std::size_t Y = 0; Y < n1; ++Y)
        for (std::size_t Z = 0; Z < n1; ++Z)
          for (std::size_t A = 0; A < n2; ++A)
            for (std::size_t B = 0; B < n2; ++B) {
              Vec<S> x = basis_vec<S>(n1, X), y = basis_vec<S>(n1, Y), z = basis_vec<S>(n1, Z);
              Vec<S> lhs = pair.bracket1(pair.bracket2_basis(Z, A, B), x, y);
              auto sum3 = [&](std::size_t P, std::size_t Q) {
                return vadd(vadd(br1(Q, br1(P, x, z), y), br1(Q, br1(P, x, y), z)),
                            br1(Q, br1(P, z, y), x));
              };
              Vec<S> rhs = vscale(half, vsub(sum3(A, B), sum3(B, A)));
              detail::accumulate_vec(acc, vsub(lhs, rhs),
                                     {static_cast<int>(X), static_cast<int>(Y), static_cast<int>(Z),
                                      static_cast<int>(A), static_cast<int>(B)});
            }
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("compatibility V2", exact, tol);
    S half = S(1) / S(2);
    for (std::size_t A = 0; A < n2; ++A)
      for (std::size_t B = 0; B < n2; ++B)
        for (std::size_t C = 0; C < n2; ++C)
          for (std::size_t X = 0; X < n1; ++X)
            for (std::size_t Y = 0; Y < n1; ++Y) {
              Vec<S> a = basis_vec<S>(n2, A), b = basis_vec<S>(n2, B), c = basis_vec<S>(n2, C);
              Vec<S> lhs = pair.bracket2(pair.bracket1_basis(C, X, Y), a, b);
              auto sum3 = [&](std::size_t P, std::size_t Q) {
                return vadd(vadd(br2(Q, br2(P, a, c), b), br2(Q, br2(P, a, b), c)),
                            br2(Q, br2(P, c, b), a));
              };
              Vec<S> rhs = vscale(half, vsub(sum3(X, Y), sum3(Y, X)));
              detail::accumulate_vec(acc, vsub(lhs, rhs),
                                     {static_cast<int>(A), static_cast<int>(B), static_cast<int>(C),
                                      static_cast<int>(X), static_cast<int>(Y)});
            }
    report.checks.push_back(acc.result());
  }
  return report;
}

/// The two weaker compatibility identities that define an anti-Jordan pair.
template <class S>
AxiomReport verify_anti_jordan(const IsotopicPair<S>& pair, double tol = 1e-10) {
  using detail::vadd;
  using detail::vsub;
  constexpr bool exact = scalar_traits<S>::is_exact;
  AxiomReport report;
  report.subject = "anti-Jordan pair";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;

  const std::size_t n1 = pair.n1, n2 = pair.n2;
  auto br1 = [&](std::size_t a, const Vec<S>& x, const Vec<S>& y) {
    return pair.bracket1(basis_vec<S>(n2, a), x, y);
  };
  auto br2 = [&](std::size_t x, const Vec<S>& a, const Vec<S>& b) {
    return pair.bracket2(basis_vec<S>(n1, x), a, b);
  };

  {
    CheckAccumulator acc("anti-jordan V1", exact, tol);
    for (std::size_t X = 0; X < n1; ++X)
      for (std::size_t Y = 0; Y < n1; ++Y)
        for (std::size_t Z = 0; Z < n1; ++Z)
          for (std::size_t A = 0; A < n2; ++A)
            for (std::size_t B = 0; B < n2; ++B) {
              Vec<S> x = basis_vec<S>(n1, X), y = basis_vec<S>(n1, Y), z = basis_vec<S>(n1, Z);
              Vec<S> lhs = pair.bracket1(pair.bracket2_basis(Z, A, B), x, y);
              Vec<S> rhs = vadd(br1(B, br1(A, x, z), y), br1(B, br1(A, z, y), x));
              rhs = vsub(rhs, br1(A, br1(B, x, y), z));
              detail::accumulate_vec(acc, vsub(lhs, rhs),
                                     {static_cast<int>(X), static_cast<int>(Y), static_cast<int>(Z),
                                      static_cast<int>(A), static_cast<int>(B)});
            }
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("anti-jordan V2", exact, tol);
    for (std::size_t A = 0; A < n2; ++A)
      for (std::size_t B = 0; B < n2; ++B)
        for (std::size_t C = 0; C < n2; ++C)
          for (std::size_t X = 0; X < n1; ++X)
            for (std::size_t Y = 0; Y < n1; ++Y) {
              Vec<S> a = basis_vec<S>(n2, A), b = basis_vec<S>(n2, B), c = basis_vec<S>(n2, C);
              Vec<S> lhs = pair.bracket2(pair.bracket1_basis(C, X, Y), a, b);
              // [[A,C]_X,B]_Y + [[C,B]_X,A]_Y - [[A,B]_Y,C]_X
              Vec<S> rhs = vadd(br2(Y, br2(X, a, c), b), br2(Y, br2(X, c, b), a));
              rhs = vsub(rhs, br2(X, br2(Y, a, b), c));
              detail::accumulate_vec(acc, vsub(lhs, rhs),
                                     {static_cast<int>(A), static_cast<int>(B), static_cast<int>(C),
                                      static_cast<int>(X), static_cast<int>(Y)});
            }
    report.checks.push_back(acc.result());
  }
  return report;
}

}  // namespace isopair
