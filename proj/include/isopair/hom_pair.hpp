#pragma once

#include "isopair/pair.hpp"
#include "isopair/representation.hpp"

namespace isopair {

/// The block-matrix pair (Hom(H1,H2), Hom(H2,H1)) with isocommutators
/// [X,Y]_A = XAY - YAX computed in the ambient associative algebra.
/// V1 elements are m x n matrices (n = dim H1, m = dim H2), row-major bases.
template <class S>
IsotopicPair<S> hom_pair(std::size_t n, std::size_t m) {
  if (n < 1 || m < 1) throw std::invalid_argument("hom_pair: dimensions must be positive");
  const std::size_t n1 = n * m, n2 = n * m;
  auto b1 = [&](std::size_t i) {
    Mat<S> M(m, n);
    M(i / n, i % n) = S(1);
    return M;
  };
  auto b2 = [&](std::size_t i) {
    Mat<S> M(n, m);
    M(i / m, i % m) = S(1);
    return M;
  };
  auto flat1 = [&](const Mat<S>& M) {
    Vec<S> v(n1);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r * n + c] = M(r, c);
    return v;
  };
  auto flat2 = [&](const Mat<S>& M) {
    Vec<S> v(n2);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < m; ++c) v[r * m + c] = M(r, c);
    return v;
  };

  IsotopicPair<S> pair(n1, n2);
  for (std::size_t a = 0; a < n2; ++a) {
    Mat<S> A = b2(a);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = i + 1; j < n1; ++j) {
        Mat<S> X = b1(i), Y = b1(j);
        pair.set1(a, i, j, flat1(X * A * Y - Y * A * X));
      }
  }
  for (std::size_t x = 0; x < n1; ++x) {
    Mat<S> X = b1(x);
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = i + 1; j < n2; ++j) {
        Mat<S> A = b2(i), B = b2(j);
        pair.set2(x, i, j, flat2(A * X * B - B * X * A));
      }
  }
  return pair;
}

/// Tautological split representation on W = H1 (+) H2: V1 acts as its own
/// lower-left block, V2 as its upper-right block.
template <class S>
PairRepresentation<S> hom_tautological_representation(std::size_t n, std::size_t m) {
  std::vector<Mat<S>> xs, ys;
  for (std::size_t i = 0; i < n * m; ++i) {
    Mat<S> X(m, n);
    X(i / n, i % n) = S(1);
    xs.push_back(std::move(X));
  }
  for (std::size_t i = 0; i < n * m; ++i) {
    Mat<S> Y(n, m);
    Y(i / m, i % m) = S(1);
    ys.push_back(std::move(Y));
  }
  return from_split_blocks(xs, ys, n, m);
}

}  // namespace isopair
