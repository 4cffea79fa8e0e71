#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "isopair/rational.hpp"

namespace isopair {

template <class S>
using Vec = std::vector<S>;

template <class S>
bool vec_is_zero(const Vec<S>& v, double tol = 0.0) {
  for (const auto& x : v)
    if (!scalar_traits<S>::is_zero(x, tol)) return false;
  return true;
}

template <class S>
double vec_max_abs(const Vec<S>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::fabs(to_double(x)));
  return m;
}

/// Dense row-major matrix over an exact or floating scalar.
template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, S(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<S>& data() const { return a_; }
  std::vector<S>& data() { return a_; }

  Vec<S> flat() const { return a_; }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

  Mat& operator+=(const Mat& o) {
    check_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Mat& operator*=(const S& c) {
    for (auto& x : a_) x *= c;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const S& c, Mat a) { return a *= c; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (scalar_traits<S>::is_zero(aik, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  Vec<S> apply(const Vec<S>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec<S> out(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Mat transpose() const {
    Mat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::fabs(to_double(x)));
    return m;
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& x : a_)
      if (!scalar_traits<S>::is_zero(x, tol)) return false;
    return true;
  }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  void check_shape(const Mat& o) const {
    if (!same_shape(o)) throw std::invalid_argument("matrix shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

template <class S>
Mat<S> commutator(const Mat<S>& a, const Mat<S>& b) {
  return a * b - b * a;
}

template <class S>
Mat<S> anticommutator(const Mat<S>& a, const Mat<S>& b) {
  return a * b + b * a;
}

template <class T, class S>
Mat<T> mat_cast(const Mat<S>& m) {
  Mat<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = T(to_double(m(i, j)));
  return out;
}

/// Rank-3 coefficient tensor c[i][j][k], e.g. a bracket table [e_i,e_j] = sum_k c(i,j,k) e_k.
template <class S>
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2)
      : d_{d0, d1, d2}, a_(d0 * d1 * d2, S(0)) {}

  std::size_t dim(int i) const { return d_[static_cast<std::size_t>(i)]; }
  S& operator()(std::size_t i, std::size_t j, std::size_t k) { return a_[(i * d_[1] + j) * d_[2] + k]; }
  const S& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * d_[1] + j) * d_[2] + k];
  }
  const std::vector<S>& data() const { return a_; }

 private:
  std::array<std::size_t, 3> d_{0, 0, 0};
  std::vector<S> a_;
};

/// Rank-4 coefficient tensor, e.g. structure constants m(iso, i, j, out).
template <class S>
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(std::size_t d0, std::size_t d1, std::size_t d2, std::size_t d3)
      : d_{d0, d1, d2, d3}, a_(d0 * d1 * d2 * d3, S(0)) {}

  std::size_t dim(int i) const { return d_[static_cast<std::size_t>(i)]; }
  S& operator()(std::size_t a, std::size_t i, std::size_t j, std::size_t k) {
    return a_[((a * d_[1] + i) * d_[2] + j) * d_[3] + k];
  }
  const S& operator()(std::size_t a, std::size_t i, std::size_t j, std::size_t k) const {
    return a_[((a * d_[1] + i) * d_[2] + j) * d_[3] + k];
  }
  const std::vector<S>& data() const { return a_; }
  std::vector<S>& data() { return a_; }

 private:
  std::array<std::size_t, 4> d_{0, 0, 0, 0};
  std::vector<S> a_;
};

// ---------------------------------------------------------------------------
// Exact / tolerant Gaussian elimination
// ---------------------------------------------------------------------------

namespace detail {

template <class S>
bool pivot_is_zero(const S& v, double scaled_tol) {
  if constexpr (scalar_traits<S>::is_exact)
    return v == 0;
  else
    return std::fabs(to_double(v)) <= scaled_tol;
}

}  // namespace detail

/// Reduced row echelon form in place; returns the rank and (optionally) pivot columns.
template <class S>
std::size_t rref_in_place(Mat<S>& m, std::vector<std::size_t>* pivot_cols = nullptr,
                          double tol = 1e-12) {
  const std::size_t rows = m.rows(), cols = m.cols();
  double scale = std::max(1.0, m.max_abs());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    // pick pivot: exact backend takes the first nonzero, floats the largest entry
    std::size_t piv = rows;
    if constexpr (scalar_traits<S>::is_exact) {
      for (std::size_t r = rank; r < rows; ++r)
        if (m(r, col) != 0) {
          piv = r;
          break;
        }
    } else {
      double best = tol * scale;
      for (std::size_t r = rank; r < rows; ++r) {
        double v = std::fabs(to_double(m(r, col)));
        if (v > best) {
          best = v;
          piv = r;
        }
      }
    }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
    S pv = m(rank, col);
    for (std::size_t j = 0; j < cols; ++j) m(rank, j) /= pv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      S c = m(r, col);
      if (detail::pivot_is_zero(c, tol * scale)) {
        m(r, col) = S(0);
        continue;
      }
      for (std::size_t j = 0; j < cols; ++j) m(r, j) -= c * m(rank, j);
      m(r, col) = S(0);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

template <class S>
std::size_t rank(Mat<S> m, double tol = 1e-12) {
  return rref_in_place(m, nullptr, tol);
}

/// Basis of the solution space of A x = 0.
template <class S>
std::vector<Vec<S>> nullspace(Mat<S> a, double tol = 1e-12) {
  std::vector<std::size_t> pivots;
  std::size_t rk = rref_in_place(a, &pivots, tol);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec<S>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<S> v(n, S(0));
    v[free] = S(1);
    for (std::size_t r = 0; r < rk; ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solve A x = b exactly (or within tolerance); nullopt when inconsistent.
template <class S>
std::optional<Vec<S>> solve_consistent(const Mat<S>& a, const Vec<S>& b, double tol = 1e-12) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
  Mat<S> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  double scale = std::max(1.0, aug.max_abs());
  std::vector<std::size_t> pivots;
  std::size_t rk = rref_in_place(aug, &pivots, tol);
  Vec<S> x(a.cols(), S(0));
  for (std::size_t r = 0; r < rk; ++r) {
    if (pivots[r] == a.cols()) return std::nullopt;  // pivot in rhs column
    x[pivots[r]] = aug(r, a.cols());
  }
  // consistency of discarded rows is implied by rref; double backend re-checks residual
  if constexpr (!scalar_traits<S>::is_exact) {
    Vec<S> res = a.apply(x);
    for (std::size_t i = 0; i < res.size(); ++i)
      if (std::fabs(to_double(res[i] - b[i])) > 1e-8 * scale) return std::nullopt;
  }
  return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a, double tol = 1e-12) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  Mat<S> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = S(1);
  }
  std::vector<std::size_t> pivots;
  std::size_t rk = rref_in_place(aug, &pivots, tol);
  if (rk < n) return std::nullopt;
  for (std::size_t r = 0; r < n; ++r)
    if (pivots[r] != r) return std::nullopt;
  Mat<S> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Incremental span tracker keeping the original spanning vectors.
template <class S>
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t ambient, double tol = 1e-12) : ambient_(ambient), tol_(tol) {}

  /// Adds v to the basis when independent of the current span; returns true if added.
  bool add(const Vec<S>& v) {
    if (v.size() != ambient_) throw std::invalid_argument("span: dimension mismatch");
    if (contains(v)) return false;
    vecs_.push_back(v);
    return true;
  }

  bool contains(const Vec<S>& v) const { return static_cast<bool>(coords(v)); }

  /// Coordinates of v in the stored spanning vectors, if representable.
  std::optional<Vec<S>> coords(const Vec<S>& v) const {
    if (vecs_.empty()) return vec_is_zero(v, tol_scaled(v)) ? std::optional<Vec<S>>(Vec<S>{}) : std::nullopt;
    Mat<S> cols(ambient_, vecs_.size());
    for (std::size_t j = 0; j < vecs_.size(); ++j)
      for (std::size_t i = 0; i < ambient_; ++i) cols(i, j) = vecs_[j][i];
    return solve_consistent(cols, v, tol_);
  }

  std::size_t size() const { return vecs_.size(); }
  const std::vector<Vec<S>>& vectors() const { return vecs_; }

 private:
  double tol_scaled(const Vec<S>& v) const {
    return scalar_traits<S>::is_exact ? 0.0 : tol_ * std::max(1.0, vec_max_abs(v));
  }
  std::size_t ambient_;
  double tol_;
  std::vector<Vec<S>> vecs_;
};

}  // namespace isopair
