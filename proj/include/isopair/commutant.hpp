#pragma once

#include <vector>

#include "isopair/pair.hpp"

namespace isopair {

/// Solves for the commutant-like space {X : A X B - B X A in span(gens) for all
/// A,B in span(gens)} as the nullspace of the complement-projected constraints.
template <class S>
std::vector<Mat<S>> iso_commutant(const std::vector<Mat<S>>& gens, double tol = 1e-10) {
  if (gens.empty()) throw std::invalid_argument("iso_commutant: empty generator list");
  const std::size_t h = gens.front().rows();
  for (const auto& g : gens)
    if (g.rows() != h || g.cols() != h)
      throw std::invalid_argument("iso_commutant: generators must be square, same size");

  SpanBasis<S> span(h * h);
  std::vector<Mat<S>> basis;
  for (const auto& g : gens)
    if (span.add(g.flat())) basis.push_back(g);

  // complement projector via rref: rows = span basis, then residual of any
  // vector after elimination measures the out-of-span component
  Mat<S> rr(basis.size(), h * h);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Vec<S> f = basis[i].flat();
    for (std::size_t j = 0; j < h * h; ++j) rr(i, j) = f[j];
  }
  std::vector<std::size_t> pivots;
  rref_in_place(rr, &pivots, tol);

  auto out_of_span = [&](Vec<S> v) {
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      S c = v[pivots[r]];
      if (scalar_traits<S>::is_zero(c, 0.0)) continue;
      for (std::size_t j = 0; j < h * h; ++j) v[j] -= c * rr(r, j);
    }
    return v;  // components in non-pivot coordinates = complement part
  };

  // constraints: for each basis pair (A,B), complement(A X B - B X A) = 0;
  // rows are linear functionals of X
  std::vector<Vec<S>> rows;
  for (std::size_t p = 0; p < basis.size(); ++p)
    for (std::size_t q = p + 1; q < basis.size(); ++q) {
      const Mat<S>&A = basis[p], &B = basis[q];
      // build the linear map X -> out_of_span(AXB - BXA) column by column
      std::vector<Vec<S>> cols;
      for (std::size_t e = 0; e < h * h; ++e) {
        Mat<S> X(h, h);
        X(e / h, e % h) = S(1);
        cols.push_back(out_of_span((A * X * B - B * X * A).flat()));
      }
      for (std::size_t r = 0; r < h * h; ++r) {
        Vec<S> row(h * h);
        bool nz = false;
        for (std::size_t e = 0; e < h * h; ++e) {
          row[e] = cols[e][r];
          nz = nz || !scalar_traits<S>::is_zero(row[e], 0.0);
        }
        if (nz) rows.push_back(std::move(row));
      }
    }

  std::vector<Mat<S>> result;
  if (rows.empty()) {
    // no constraints: the whole of End(H) qualifies
    for (std::size_t e = 0; e < h * h; ++e) {
      Mat<S> X(h, h);
      X(e / h, e % h) = S(1);
      result.push_back(std::move(X));
    }
    return result;
  }
  Mat<S> sys(rows.size(), h * h);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < h * h; ++j) sys(i, j) = rows[i][j];
  for (const auto& v : nullspace(sys, tol)) {
    Mat<S> X(h, h);
    for (std::size_t e = 0; e < h * h; ++e) X(e / h, e % h) = v[e];
    result.push_back(std::move(X));
  }
  return result;
}

/// Builds the pair (span(gens), commutant) with both bracket families computed
/// in the associative algebra; coordinates are extracted by exact span solves.
template <class S>
IsotopicPair<S> pair_from_commutant(const std::vector<Mat<S>>& gens,
                                    const std::vector<Mat<S>>& comm, double tol = 1e-10) {
  const std::size_t h = gens.front().rows();
  SpanBasis<S> span1(h * h), span2(h * h);
  std::vector<Mat<S>> b1, b2;
  for (const auto& g : gens)
    if (span1.add(g.flat())) b1.push_back(g);
  for (const auto& g : comm)
    if (span2.add(g.flat())) b2.push_back(g);

  IsotopicPair<S> pair(b1.size(), b2.size());
  for (std::size_t x = 0; x < b2.size(); ++x)
    for (std::size_t i = 0; i < b1.size(); ++i)
      for (std::size_t j = i + 1; j < b1.size(); ++j) {
        Mat<S> br = b1[i] * b2[x] * b1[j] - b1[j] * b2[x] * b1[i];
        auto coords = span1.coords(br.flat());
        if (!coords) throw std::runtime_error("commutant pair: V1 bracket left span(A)");
        pair.set1(x, i, j, *coords);
      }
  for (std::size_t x = 0; x < b1.size(); ++x)
    for (std::size_t i = 0; i < b2.size(); ++i)
      for (std::size_t j = i + 1; j < b2.size(); ++j) {
        Mat<S> br = b2[i] * b1[x] * b2[j] - b2[j] * b1[x] * b2[i];
        auto coords = span2.coords(br.flat());
        if (!coords) throw std::runtime_error("commutant pair: V2 bracket left the commutant span");
        pair.set2(x, i, j, *coords);
      }
  (void)tol;
  return pair;
}

}  // namespace isopair
