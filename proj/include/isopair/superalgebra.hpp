#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isopair/alts.hpp"

namespace isopair {

/// Lie algebra realized by concrete matrices, with its commutator structure constants.
template <class S>
struct LieAlgebraRealization {
  std::vector<Mat<S>> basis;
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // generating (y,z) index pairs
  Tensor3<S> structure;                                     // [b_i,b_j] = sum_k c(i,j,k) b_k
  AxiomReport closure;

  std::size_t dim() const { return basis.size(); }
};

/// Span of the operators R_{yz} with commutator structure constants extracted by
/// exact row reduction; closure failures are reported, not asserted away.
template <class S>
LieAlgebraRealization<S> build_g0(const AltsTensor<S>& alts, double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  LieAlgebraRealization<S> out;
  out.closure.subject = "g0 closure";
  out.closure.exact_backend = exact;
  out.closure.tolerance = exact ? 0.0 : tol;

  const std::size_t n = alts.dim();
  SpanBasis<S> span(n * n);
  for (std::size_t y = 0; y < alts.n1; ++y)
    for (std::size_t z = alts.n1; z < n; ++z) {
      Mat<S> r = alts.r_matrix(y, z);
      if (r.is_zero(exact ? 0.0 : tol)) continue;
      if (span.add(r.flat())) {
        out.basis.push_back(std::move(r));
        out.labels.emplace_back(y, z);
      }
    }

  const std::size_t g = out.basis.size();
  out.structure = Tensor3<S>(g, g, g);
  CheckAccumulator acc("commutator closure", exact, tol);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      Mat<S> c = commutator(out.basis[i], out.basis[j]);
      auto coords = span.coords(c.flat());
      if (!coords) {
        acc.record(c.max_abs(), {static_cast<int>(i), static_cast<int>(j)});
        continue;
      }
      for (std::size_t k = 0; k < g; ++k) out.structure(i, j, k) = (*coords)[k];
      acc.record(0.0, {static_cast<int>(i), static_cast<int>(j)});
    }
  out.closure.checks.push_back(acc.result());
  return out;
}

/// Graded structure constants of g(V) = g0(V) (+) V with basis [even..., odd...];
/// bracket(x,y) is the supercommutator (anticommutator on odd pairs).
template <class S>
struct LieSuperalgebra {
  std::size_t n_even = 0, n_odd = 0;
  std::vector<std::string> names;
  Tensor3<S> c;
  std::optional<std::pair<std::size_t, std::size_t>> polarization;  // odd part split

  std::size_t dim() const { return n_even + n_odd; }
  bool odd(std::size_t x) const { return x >= n_even; }
  std::pair<std::size_t, std::size_t> superdimension() const { return {n_even, n_odd}; }
};

/// Assembles g(V) from the R-matrix realization; odd-odd anticommutators are
/// resolved into the even basis by exact span solves.
template <class S>
LieSuperalgebra<S> build_super(const AltsTensor<S>& alts, double tol = 1e-10) {
  LieAlgebraRealization<S> g0 = build_g0(alts, tol);
  if (!g0.closure.pass()) throw std::runtime_error("build_super: g0 not closed under commutators");

  const std::size_t ne = g0.dim(), no = alts.dim(), N = ne + no;
  LieSuperalgebra<S> sa;
  sa.n_even = ne;
  sa.n_odd = no;
  sa.polarization = std::make_pair(alts.n1, alts.n2);
  sa.c = Tensor3<S>(N, N, N);

  const char* v_names[] = {"p", "q", "r", "a", "b", "c"};
  for (std::size_t i = 0; i < ne; ++i) {
    auto [y, z] = g0.labels[i];
    std::string yn = no == 6 ? v_names[y] : "v" + std::to_string(y);
    std::string zn = no == 6 ? v_names[z] : "v" + std::to_string(z);
    sa.names.push_back("R(" + yn + "," + zn + ")");
  }
  for (std::size_t v = 0; v < no; ++v)
    sa.names.push_back(no == 6 ? v_names[v] : "v" + std::to_string(v));

  // even-even: copy g0 structure
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j)
      for (std::size_t k = 0; k < ne; ++k) sa.c(i, j, k) = g0.structure(i, j, k);

  // even-odd: matrix action of the realization, [E, v] = E v, [v, E] = -E v
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t v = 0; v < no; ++v) {
      Vec<S> img = g0.basis[i].apply(basis_vec<S>(no, v));
      for (std::size_t k = 0; k < no; ++k) {
        sa.c(i, ne + v, ne + k) = img[k];
        sa.c(ne + v, i, ne + k) = -img[k];
      }
    }

  // odd-odd: [v,w]_+ = R_{v,w} expressed in the even basis
  SpanBasis<S> span(no * no);
  for (const auto& b : g0.basis) span.add(b.flat());
  for (std::size_t v = 0; v < no; ++v)
    for (std::size_t w = v; w < no; ++w) {
      Mat<S> r = alts.r_matrix(v, w);
      auto coords = r.is_zero(scalar_traits<S>::is_exact ? 0.0 : tol)
                        ? std::optional<Vec<S>>(Vec<S>(ne, S(0)))
                        : span.coords(r.flat());
      if (!coords) throw std::runtime_error("build_super: R_{v,w} outside span of g0 basis");
      coords->resize(ne, S(0));
      for (std::size_t k = 0; k < ne; ++k) {
        sa.c(ne + v, ne + w, k) = (*coords)[k];
        sa.c(ne + w, ne + v, k) = (*coords)[k];  // graded symmetry of the anticommutator
      }
    }
  return sa;
}

/// Graded antisymmetry, graded Jacobi (super-Leibniz form) and, when a
/// polarization is declared, [V_i,V_i]_+ = 0 and [g(V),V_i] within g0 (+) V_i.
template <class S>
AxiomReport verify_super(const LieSuperalgebra<S>& sa, double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  AxiomReport report;
  report.subject = "Lie superalgebra";
  report.exact_backend = exact;
  report.tolerance = exact ? 0.0 : tol;
  const std::size_t N = sa.dim();

  // [x,y] = -(-1)^{|x||y|}[y,x]  ->  c(x,y,k) + (-1)^{|x||y|} c(y,x,k) = 0
  auto swap_sign = [&](std::size_t x, std::size_t y) {
    return sa.odd(x) && sa.odd(y) ? S(-1) : S(1);
  };

  {
    CheckAccumulator acc("graded antisymmetry", exact, tol);
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y)
        for (std::size_t k = 0; k < N; ++k) {
          S r = sa.c(x, y, k) + swap_sign(x, y) * sa.c(y, x, k);
          acc.record(std::fabs(to_double(r)),
                     {static_cast<int>(x), static_cast<int>(y), static_cast<int>(k)});
        }
    report.checks.push_back(acc.result());
  }
  {
    // parity homogeneity: [x,y] has parity |x|+|y|
    CheckAccumulator acc("parity homogeneity", exact, tol);
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y) {
        bool out_odd = sa.odd(x) != sa.odd(y);
        for (std::size_t k = 0; k < N; ++k)
          if (sa.odd(k) != out_odd)
            acc.record(std::fabs(to_double(sa.c(x, y, k))),
                       {static_cast<int>(x), static_cast<int>(y), static_cast<int>(k)});
      }
    report.checks.push_back(acc.result());
  }
  {
    // super-Leibniz: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
    CheckAccumulator acc("graded jacobi", exact, tol);
    auto brk = [&](std::size_t x, std::size_t y, Vec<S>& out) {
      for (std::size_t k = 0; k < N; ++k) out[k] = sa.c(x, y, k);
    };
    Vec<S> tmp(N), lhs(N), r1(N), r2(N);
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y)
        for (std::size_t z = 0; z < N; ++z) {
          std::fill(lhs.begin(), lhs.end(), S(0));
          std::fill(r1.begin(), r1.end(), S(0));
          std::fill(r2.begin(), r2.end(), S(0));
          brk(y, z, tmp);
          for (std::size_t w = 0; w < N; ++w) {
            if (scalar_traits<S>::is_zero(tmp[w], 0.0)) continue;
            for (std::size_t k = 0; k < N; ++k) lhs[k] += tmp[w] * sa.c(x, w, k);
          }
          brk(x, y, tmp);
          for (std::size_t w = 0; w < N; ++w) {
            if (scalar_traits<S>::is_zero(tmp[w], 0.0)) continue;
            for (std::size_t k = 0; k < N; ++k) r1[k] += tmp[w] * sa.c(w, z, k);
          }
          brk(x, z, tmp);
          for (std::size_t w = 0; w < N; ++w) {
            if (scalar_traits<S>::is_zero(tmp[w], 0.0)) continue;
            for (std::size_t k = 0; k < N; ++k) r2[k] += tmp[w] * sa.c(y, w, k);
          }
          S s = (sa.odd(x) && sa.odd(y)) ? S(-1) : S(1);
          double worst = 0.0;
          for (std::size_t k = 0; k < N; ++k)
            worst = std::max(worst, std::fabs(to_double(lhs[k] - r1[k] - s * r2[k])));
          acc.record(worst, {static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)});
        }
    report.checks.push_back(acc.result());
  }
  if (sa.polarization) {
    auto [p1, p2] = *sa.polarization;
    CheckAccumulator acc("polarization", exact, tol);
    auto odd_part = [&](std::size_t v) { return v < p1 ? 0 : 1; };
    for (std::size_t v = 0; v < sa.n_odd; ++v)
      for (std::size_t w = 0; w < sa.n_odd; ++w) {
        if (odd_part(v) != odd_part(w)) continue;
        for (std::size_t k = 0; k < N; ++k)
          acc.record(std::fabs(to_double(sa.c(sa.n_even + v, sa.n_even + w, k))),
                     {static_cast<int>(v), static_cast<int>(w)});
      }
    // [g(V), V_i] stays within g0 (+) V_i
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t v = 0; v < sa.n_odd; ++v) {
        if (sa.odd(x)) continue;
        for (std::size_t k = sa.n_even; k < N; ++k) {
          if (odd_part(k - sa.n_even) == odd_part(v)) continue;
          acc.record(std::fabs(to_double(sa.c(x, sa.n_even + v, k))),
                     {static_cast<int>(x), static_cast<int>(v), static_cast<int>(k)});
        }
      }
    report.checks.push_back(acc.result());
    (void)p2;
  }
  return report;
}

/// Structure-constant table export for external inspection.
template <class S>
nlohmann::ordered_json superalgebra_to_json(const LieSuperalgebra<S>& sa) {
  nlohmann::ordered_json j;
  j["n_even"] = sa.n_even;
  j["n_odd"] = sa.n_odd;
  j["names"] = sa.names;
  if (sa.polarization)
    j["polarization"] = {sa.polarization->first, sa.polarization->second};
  auto arr = nlohmann::ordered_json::array();
  const std::size_t N = sa.dim();
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y)
      for (std::size_t k = 0; k < N; ++k) {
        if (scalar_traits<S>::is_zero(sa.c(x, y, k), 0.0)) continue;
        arr.push_back({x, y, k, to_double(sa.c(x, y, k))});
      }
  j["brackets"] = std::move(arr);
  return j;
}

/// True when target_idx (a subset of basis indices) spans an ideal: brackets of
/// anything with the subset land back in its span plus nothing outside.
template <class S>
bool is_super_ideal(const LieSuperalgebra<S>& sa, const std::vector<std::size_t>& target_idx,
                    double tol = 1e-10) {
  std::vector<bool> inside(sa.dim(), false);
  for (auto i : target_idx) inside[i] = true;
  for (std::size_t x = 0; x < sa.dim(); ++x)
    for (auto y : target_idx)
      for (std::size_t k = 0; k < sa.dim(); ++k) {
        if (inside[k]) continue;
        if (!scalar_traits<S>::is_zero(sa.c(x, y, k), tol)) return false;
        if (!scalar_traits<S>::is_zero(sa.c(y, x, k), tol)) return false;
      }
  return true;
}

}  // namespace isopair
