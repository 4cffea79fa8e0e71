#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isopair/linalg.hpp"

using namespace isopair;

namespace {

Mat<Rational> random_rational_matrix(std::mt19937_64& eng, std::size_t r, std::size_t c) {
  Mat<Rational> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = Rational(static_cast<int>(eng() % 11) - 5, 1 + static_cast<int>(eng() % 4));
  return m;
}

}  // namespace

TEST_CASE("rref rank on exact rationals") {
  Mat<Rational> m(3, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;   // dependent row
  m(2, 0) = 0; m(2, 1) = 1; m(2, 2) = 1;
  REQUIRE(rank(m) == 2);

  Mat<Rational> id = Mat<Rational>::identity(4);
  REQUIRE(rank(id) == 4);
}

TEST_CASE("nullspace vectors satisfy A x = 0 exactly") {
  std::mt19937_64 eng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Mat<Rational> a = random_rational_matrix(eng, 3, 5);
    auto ns = nullspace(a);
    REQUIRE(ns.size() + rank(a) == 5);
    for (const auto& v : ns) {
      Vec<Rational> res = a.apply(v);
      REQUIRE(vec_is_zero(res));
    }
  }
}

TEST_CASE("solve_consistent solves and detects inconsistency") {
  Mat<Rational> a(3, 2);
  a(0, 0) = 1; a(1, 1) = 1; a(2, 0) = 1; a(2, 1) = 1;
  Vec<Rational> b = {Rational(2), Rational(3), Rational(5)};
  auto x = solve_consistent(a, b);
  REQUIRE(x);
  REQUIRE((*x)[0] == 2);
  REQUIRE((*x)[1] == 3);

  b[2] = Rational(4);  // now 2 + 3 != 4
  REQUIRE_FALSE(solve_consistent(a, b));
}

TEST_CASE("inverse round-trips on random invertible matrices") {
  std::mt19937_64 eng(5);
  int found = 0;
  while (found < 10) {
    Mat<Rational> a = random_rational_matrix(eng, 4, 4);
    auto inv = inverse(a);
    if (!inv) continue;
    ++found;
    Mat<Rational> prod = a * (*inv);
    REQUIRE(prod == Mat<Rational>::identity(4));
  }
}

TEST_CASE("span basis tracks independence and coordinates") {
  SpanBasis<Rational> span(3);
  REQUIRE(span.add({Rational(1), Rational(0), Rational(1)}));
  REQUIRE(span.add({Rational(0), Rational(1), Rational(0)}));
  REQUIRE_FALSE(span.add({Rational(2), Rational(3), Rational(2)}));  // combination
  auto coords = span.coords({Rational(2), Rational(3), Rational(2)});
  REQUIRE(coords);
  REQUIRE((*coords)[0] == 2);
  REQUIRE((*coords)[1] == 3);
  REQUIRE_FALSE(span.coords({Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("double backend tolerates rounding in rank decisions") {
  Mat<double> m(2, 2);
  m(0, 0) = 1.0; m(0, 1) = 1.0;
  m(1, 0) = 1.0; m(1, 1) = 1.0 + 1e-15;
  REQUIRE(rank(m) == 1);
  m(1, 1) = 2.0;
  REQUIRE(rank(m) == 2);
}

TEST_CASE("commutator and anticommutator shapes") {
  Mat<Rational> a(2, 2), b(2, 2);
  a(0, 1) = 1;
  b(1, 0) = 1;
  Mat<Rational> c = commutator(a, b);
  REQUIRE(c(0, 0) == 1);
  REQUIRE(c(1, 1) == -1);
  Mat<Rational> ac = anticommutator(a, b);
  REQUIRE(ac(0, 0) == 1);
  REQUIRE(ac(1, 1) == 1);
}
