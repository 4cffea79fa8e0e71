#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "isopair/pair.hpp"

namespace isopair {

/// Matrices T1 over the V1 basis and T2 over the V2 basis acting on a common
/// space W, with an optional split grading W = W1 (+) W2.
template <class S>
struct PairRepresentation {
  std::size_t dim_w = 0;
  std::optional<std::pair<std::size_t, std::size_t>> grading;  // (d1, d2), d1+d2 = dim_w
  std::vector<Mat<S>> t1;
  std::vector<Mat<S>> t2;

  static PairRepresentation zero(std::size_t n1, std::size_t n2, std::size_t w) {
    PairRepresentation r;
    r.dim_w = w;
    r.t1.assign(n1, Mat<S>(w, w));
    r.t2.assign(n2, Mat<S>(w, w));
    return r;
  }

  Mat<S> apply1(const Vec<S>& x) const {
    Mat<S> out(dim_w, dim_w);
    for (std::size_t i = 0; i < t1.size(); ++i) {
      if (scalar_traits<S>::is_zero(x[i], 0.0)) continue;
      Mat<S> m = t1[i];
      m *= x[i];
      out += m;
    }
    return out;
  }
  Mat<S> apply2(const Vec<S>& a) const {
    Mat<S> out(dim_w, dim_w);
    for (std::size_t i = 0; i < t2.size(); ++i) {
      if (scalar_traits<S>::is_zero(a[i], 0.0)) continue;
      Mat<S> m = t2[i];
      m *= a[i];
      out += m;
    }
    return out;
  }
};

template <class T, class S>
PairRepresentation<T> representation_cast(const PairRepresentation<S>& r) {
  PairRepresentation<T> out;
  out.dim_w = r.dim_w;
  out.grading = r.grading;
  for (const auto& m : r.t1) out.t1.push_back(mat_cast<T>(m));
  for (const auto& m : r.t2) out.t2.push_back(mat_cast<T>(m));
  return out;
}

struct RepresentationReport {
  AxiomReport relations;
  bool valid = false;
  bool nilpotent = false;
  bool split = false;
};

/// Defining relations T1([X,Y]_A) = T1(X)T2(A)T1(Y) - T1(Y)T2(A)T1(X) (and the
/// V2 mirror) over all basis triples, plus nilpotency and split block shape.
template <class S>
RepresentationReport verify_representation(const PairRepresentation<S>& rep,
                                           const IsotopicPair<S>& pair, double tol = 1e-10) {
  constexpr bool exact = scalar_traits<S>::is_exact;
  if (rep.t1.size() != pair.n1 || rep.t2.size() != pair.n2)
    throw std::invalid_argument("verify_representation: basis count mismatch");
  RepresentationReport out;
  out.relations.subject = "pair representation";
  out.relations.exact_backend = exact;
  out.relations.tolerance = exact ? 0.0 : tol;

  {
    CheckAccumulator acc("relations V1", exact, tol);
    for (std::size_t a = 0; a < pair.n2; ++a)
      for (std::size_t i = 0; i < pair.n1; ++i)
        for (std::size_t j = i + 1; j < pair.n1; ++j) {
          Mat<S> lhs = rep.apply1(pair.bracket1_basis(a, i, j));
          Mat<S> rhs = rep.t1[i] * rep.t2[a] * rep.t1[j] - rep.t1[j] * rep.t2[a] * rep.t1[i];
          acc.record((lhs - rhs).max_abs(),
                     {static_cast<int>(a), static_cast<int>(i), static_cast<int>(j)});
        }
    out.relations.checks.push_back(acc.result());
  }
  {
    CheckAccumulator acc("relations V2", exact, tol);
    for (std::size_t x = 0; x < pair.n1; ++x)
      for (std::size_t i = 0; i < pair.n2; ++i)
        for (std::size_t j = i + 1; j < pair.n2; ++j) {
          Mat<S> lhs = rep.apply2(pair.bracket2_basis(x, i, j));
          Mat<S> rhs = rep.t2[i] * rep.t1[x] * rep.t2[j] - rep.t2[j] * rep.t1[x] * rep.t2[i];
          acc.record((lhs - rhs).max_abs(),
                     {static_cast<int>(x), static_cast<int>(i), static_cast<int>(j)});
        }
    out.relations.checks.push_back(acc.result());
  }
  out.valid = out.relations.pass();

  out.nilpotent = true;
  for (const auto& x : rep.t1)
    for (const auto& y : rep.t1)
      if ((x * y).max_abs() > (exact ? 0.0 : tol)) out.nilpotent = false;
  for (const auto& a : rep.t2)
    for (const auto& b : rep.t2)
      if ((a * b).max_abs() > (exact ? 0.0 : tol)) out.nilpotent = false;

  out.split = false;
  if (rep.grading) {
    auto [d1, d2] = *rep.grading;
    if (d1 + d2 != rep.dim_w) throw std::invalid_argument("grading does not sum to dim W");
    auto block_ok = [&](const Mat<S>& m, bool lower_left) {
      double worst = 0.0;
      for (std::size_t i = 0; i < rep.dim_w; ++i)
        for (std::size_t j = 0; j < rep.dim_w; ++j) {
          bool allowed = lower_left ? (i >= d1 && j < d1) : (i < d1 && j >= d1);
          if (!allowed) worst = std::max(worst, std::fabs(to_double(m(i, j))));
        }
      return worst <= (exact ? 0.0 : tol);
    };
    out.split = true;
    for (const auto& m : rep.t1)
      if (!block_ok(m, true)) out.split = false;
    for (const auto& m : rep.t2)
      if (!block_ok(m, false)) out.split = false;
  }
  return out;
}

/// Doubling W -> W (+) W that turns any representation into a split one.
template <class S>
PairRepresentation<S> split_double(const PairRepresentation<S>& rep) {
  PairRepresentation<S> out;
  const std::size_t w = rep.dim_w;
  out.dim_w = 2 * w;
  out.grading = std::make_pair(w, w);
  for (const auto& m : rep.t1) {
    Mat<S> big(2 * w, 2 * w);
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j) big(w + i, j) = m(i, j);
    out.t1.push_back(std::move(big));
  }
  for (const auto& m : rep.t2) {
    Mat<S> big(2 * w, 2 * w);
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j) big(i, w + j) = m(i, j);
    out.t2.push_back(std::move(big));
  }
  return out;
}

/// Extends a sub-pair representation by zero matrices on the remaining basis
/// elements; idx1/idx2 map sub-basis positions into the full pair's bases.
template <class S>
PairRepresentation<S> extend_by_zero(const PairRepresentation<S>& sub, std::size_t full_n1,
                                     std::size_t full_n2, const std::vector<std::size_t>& idx1,
                                     const std::vector<std::size_t>& idx2) {
  PairRepresentation<S> out;
  out.dim_w = sub.dim_w;
  out.grading = sub.grading;
  out.t1.assign(full_n1, Mat<S>(sub.dim_w, sub.dim_w));
  out.t2.assign(full_n2, Mat<S>(sub.dim_w, sub.dim_w));
  for (std::size_t i = 0; i < idx1.size(); ++i) out.t1[idx1[i]] = sub.t1[i];
  for (std::size_t i = 0; i < idx2.size(); ++i) out.t2[idx2[i]] = sub.t2[i];
  return out;
}

/// Assembles a split representation from W2 x W1 blocks for T1 and W1 x W2
/// blocks for T2.
template <class S>
PairRepresentation<S> from_split_blocks(const std::vector<Mat<S>>& x_blocks,
                                        const std::vector<Mat<S>>& y_blocks, std::size_t d1,
                                        std::size_t d2) {
  PairRepresentation<S> out;
  out.dim_w = d1 + d2;
  out.grading = std::make_pair(d1, d2);
  for (const auto& x : x_blocks) {
    Mat<S> m(d1 + d2, d1 + d2);
    for (std::size_t i = 0; i < d2; ++i)
      for (std::size_t j = 0; j < d1; ++j) m(d1 + i, j) = x(i, j);
    out.t1.push_back(std::move(m));
  }
  for (const auto& y : y_blocks) {
    Mat<S> m(d1 + d2, d1 + d2);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d2; ++j) m(i, d1 + j) = y(i, j);
    out.t2.push_back(std::move(m));
  }
  return out;
}

}  // namespace isopair
