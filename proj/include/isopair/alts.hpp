#pragma once

#include <cstddef>
#include <stdexcept>

#include "isopair/pair.hpp"

namespace isopair {

/// Polarized ternary product [xyz] on V = V1 (+) V2 with its part decomposition.
/// product(x,y,z,k) stores the e_k coefficient of [e_x e_y e_z].
template <class S>
struct AltsTensor {
  std::size_t n1 = 0, n2 = 0;
  Tensor4<S> product;

  AltsTensor() = default;
  AltsTensor(std::size_t dim1, std::size_t dim2)
      : n1(dim1), n2(dim2), product(dim1 + dim2, dim1 + dim2, dim1 + dim2, dim1 + dim2) {}

  std::size_t dim() const { return n1 + n2; }
  int part(std::size_t i) const { return i < n1 ? 0 : 1; }

  Vec<S> triple(std::size_t x, std::size_t y, std::size_t z) const {
    Vec<S> out(dim());
    for (std::size_t k = 0; k < dim(); ++k) out[k] = product(x, y, z, k);
    return out;
  }

  /// R_{yz}: x -> [x y z] as a matrix on V.
  Mat<S> r_matrix(std::size_t y, std::size_t z) const {
    const std::size_t n = dim();
    Mat<S> m(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t k = 0; k < n; ++k) m(k, x) = product(x, y, z, k);
    return m;
  }

  /// R for general arguments, by linearity in both slots.
  Mat<S> r_matrix(const Vec<S>& y, const Vec<S>& z) const {
    const std::size_t n = dim();
    if (y.size() != n || z.size() != n) throw std::invalid_argument("r_matrix: dimension mismatch");
    Mat<S> m(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      if (scalar_traits<S>::is_zero(y[a], 0.0)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (scalar_traits<S>::is_zero(z[b], 0.0)) continue;
        S c = y[a] * z[b];
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t k = 0; k < n; ++k) {
            const S& t = product(x, a, b, k);
            if (!scalar_traits<S>::is_zero(t, 0.0)) m(k, x) += c * t;
          }
      }
    }
    return m;
  }

  Vec<S> apply(const Vec<S>& x, std::size_t y, std::size_t z) const {
    const std::size_t n = dim();
    Vec<S> out(n, S(0));
    for (std::size_t w = 0; w < n; ++w) {
      if (scalar_traits<S>::is_zero(x[w], 0.0)) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] += x[w] * product(w, y, z, k);
    }
    return out;
  }
};

/// Polarized anti-Lie triple system of an anti-Jordan pair:
/// [xyz] = [z,x]_y when z shares x's part, [y,x]_z when y does, zero otherwise.
template <class S>
AltsTensor<S> to_alts(const IsotopicPair<S>& pair) {
  AltsTensor<S> alts(pair.n1, pair.n2);
  const std::size_t n1 = pair.n1, N = pair.n1 + pair.n2;
  auto part = [&](std::size_t i) { return i < n1 ? 0 : 1; };
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y)
      for (std::size_t z = 0; z < N; ++z) {
        if (part(y) == part(z)) continue;
        // exactly one of y,z shares x's part
        std::size_t same = part(z) == part(x) ? z : y;
        std::size_t iso = part(z) == part(x) ? y : z;
        if (part(x) == 0) {
          Vec<S> v = pair.bracket1_basis(iso - n1, same, x);
          for (std::size_t k = 0; k < n1; ++k) alts.product(x, y, z, k) = v[k];
        } else {
          Vec<S> v = pair.bracket2_basis(iso, same - n1, x - n1);
          for (std::size_t k = 0; k < pair.n2; ++k) alts.product(x, y, z, n1 + k) = v[k];
        }
      }
  return alts;
}

/// Ternary axioms: symmetry in the last two slots, vanishing cyclic sum, and the
/// derivation identity (checked in its operator form [R_uv,R_yz] = R_{R_uv y,z} + R_{y,R_uv z},
/// which quantifies the five-argument identity over all basis tuples at once).
template <class S>
AxiomReport verify_alts(const AltsTensor<S>& alts, double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  AxiomReport report;
  report.subject = "anti-Lie triple system";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;
  const std::size_t n = alts.dim();

  {
    CheckAccumulator acc("symmetry [xyz]=[xzy]", exact, tol);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = y; z < n; ++z)
          for (std::size_t k = 0; k < n; ++k)
            acc.record(std::fabs(to_double(alts.product(x, y, z, k) - alts.product(x, z, y, k))),
                       {static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)});
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("cyclic sum", exact, tol);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t k = 0; k < n; ++k)
            acc.record(std::fabs(to_double(alts.product(x, y, z, k) + alts.product(z, x, y, k) +
                                           alts.product(y, z, x, k))),
                       {static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)});
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("polarization", exact, tol);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          if (alts.part(y) != alts.part(z)) continue;
          for (std::size_t k = 0; k < n; ++k)
            acc.record(std::fabs(to_double(alts.product(x, y, z, k))),
                       {static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)});
        }
    report.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("derivation identity", exact, tol);
    // nontrivial combinations pair opposite parts; same-part R's vanish by polarization
    std::vector<std::pair<std::size_t, std::size_t>> cross;
    for (std::size_t y = 0; y < alts.n1; ++y)
      for (std::size_t z = alts.n1; z < n; ++z) cross.emplace_back(y, z);
    for (auto [u, v] : cross) {
      Mat<S> Ruv = alts.r_matrix(u, v);
      for (auto [y, z] : cross) {
        Mat<S> lhs = commutator(Ruv, alts.r_matrix(y, z));
        Vec<S> ruv_y = Ruv.apply(basis_vec<S>(n, y));
        Vec<S> ruv_z = Ruv.apply(basis_vec<S>(n, z));
        Mat<S> rhs = alts.r_matrix(ruv_y, basis_vec<S>(n, z)) +
                     alts.r_matrix(basis_vec<S>(n, y), ruv_z);
        acc.record((lhs - rhs).max_abs(), {static_cast<int>(u), static_cast<int>(v),
                                           static_cast<int>(y), static_cast<int>(z)});
      }
    }
    report.checks.push_back(acc.result());
  }
  return report;
}

/// Direct five-argument form of the derivation identity; quadratic-cost oracle for
/// small systems, used to cross-check the operator form.
template <class S>
AxiomReport verify_alts_derivation_direct(const AltsTensor<S>& alts, double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  AxiomReport report;
  report.subject = "anti-Lie triple system (direct derivation)";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;
  const std::size_t n = alts.dim();
  CheckAccumulator acc("derivation identity (direct)", exact, tol);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Vec<S> xyz = alts.triple(x, y, z);
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = 0; v < n; ++v) {
            Vec<S> lhs = alts.apply(xyz, u, v);
            Vec<S> r1 = alts.apply(alts.triple(x, u, v), y, z);
            Vec<S> yvu = alts.triple(y, v, u);
            Vec<S> r2(n, S(0));
            for (std::size_t w = 0; w < n; ++w) {
              if (scalar_traits<S>::is_zero(yvu[w], 0.0)) continue;
              for (std::size_t k = 0; k < n; ++k) r2[k] += yvu[w] * alts.product(x, w, z, k);
            }
            Vec<S> zuv = alts.triple(z, u, v);
            Vec<S> r3(n, S(0));
            for (std::size_t w = 0; w < n; ++w) {
              if (scalar_traits<S>::is_zero(zuv[w], 0.0)) continue;
              for (std::size_t k = 0; k < n; ++k) r3[k] += zuv[w] * alts.product(x, y, w, k);
            }
            double worst = 0.0;
            for (std::size_t k = 0; k < n; ++k)
              worst = std::max(worst, std::fabs(to_double(lhs[k] - r1[k] - r2[k] - r3[k])));
            acc.record(worst, {static_cast<int>(x), static_cast<int>(y), static_cast<int>(z),
                               static_cast<int>(u), static_cast<int>(v)});
          }
      }
  report.checks.push_back(acc.result());
  return report;
}

}  // namespace isopair
