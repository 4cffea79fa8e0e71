#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isopair/alts.hpp"
#include "isopair/isorep.hpp"
#include "isopair/json_io.hpp"

using namespace isopair;

namespace {

/// g = C acting on V = sl2 through ad(h), family [u,v]_t = t [u,v].
LieBunch<Rational> one_dim_bunch() {
  LieAlgebra<Rational> g(1);
  LieBunch<Rational> bunch(g, 3);
  auto s = sl2<Rational>();
  bunch.action[0] = s.ad(0);  // derivation of the bracket
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) bunch.brackets(0, i, j, k) = s.c(i, j, k);
  return bunch;
}

}  // namespace

TEST_CASE("sl2 structure constants verify") {
  auto g = sl2<Rational>();
  REQUIRE(g.verify().pass());
}

TEST_CASE("the empty bunch over any algebra is complete") {
  LieBunch<Rational> bunch(sl2<Rational>(), 0);
  BunchReport rep = verify_bunch(bunch);
  REQUIRE(rep.axioms.pass());
  REQUIRE(rep.complete);
}

TEST_CASE("trivial brackets give a complete bunch with zero compositions") {
  LieBunch<Rational> bunch(sl2<Rational>(), 2);
  // module structure: anything works for zero brackets; use the zero action
  Tensor3<Rational> comp;
  BunchReport rep = verify_bunch(bunch, 1e-10, &comp);
  REQUIRE(rep.axioms.pass());
  REQUIRE(rep.complete);
  for (const auto& v : comp.data()) REQUIRE(v == 0);
}

TEST_CASE("one-dimensional bunch over sl2 is complete and enlarges to a pair") {
  auto bunch = one_dim_bunch();
  BunchReport rep = verify_bunch(bunch);
  INFO(rep.axioms.summary());
  REQUIRE(rep.axioms.pass());
  REQUIRE(rep.complete);
  IsotopicPair<Rational> pair = enlarge_bunch(bunch);
  REQUIRE(pair.n1 == 4);
  REQUIRE(pair.n2 == 1);
  REQUIRE(verify_isotopic_pair(pair).pass());
  REQUIRE(verify_anti_jordan(pair).pass());
  REQUIRE(verify_alts(to_alts(pair)).pass());
}

TEST_CASE("the lambda = mu = 0 slice of an enlarged bunch reproduces the brackets") {
  auto bunch = one_dim_bunch();
  IsotopicPair<Rational> pair = enlarge_bunch(bunch);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Vec<Rational> lifted = pair.bracket1_basis(0, i, j);
      Vec<Rational> orig = bunch.bracket(0, basis_vec<Rational>(3, i), basis_vec<Rational>(3, j));
      for (std::size_t k = 0; k < 3; ++k) REQUIRE(lifted[k] == orig[k]);
      REQUIRE(lifted[3] == 0);  // the scalar slot stays zero
    }
}

TEST_CASE("a non-equivariant action is rejected") {
  auto bunch = one_dim_bunch();
  bunch.action[0](0, 1) += 1;  // no longer a derivation of the bracket
  BunchReport rep = verify_bunch(bunch);
  REQUIRE_FALSE(rep.axioms.pass());
}

TEST_CASE("enlargement refuses incomplete bunches") {
  // two-dimensional abelian g with brackets that cannot absorb the diamond
  LieAlgebra<Rational> g(2);
  LieBunch<Rational> bunch(g, 2);
  // family: [e0,e1]_{a0} = e0, [e0,e1]_{a1} = e1 -- both are Lie (dim 2);
  // the diamond of the two at z = e0 is not a combination of the family
  bunch.brackets(0, 0, 1, 0) = 1;
  bunch.brackets(0, 1, 0, 0) = -1;
  bunch.brackets(1, 0, 1, 1) = 1;
  bunch.brackets(1, 1, 0, 1) = -1;
  BunchReport rep = verify_bunch(bunch);
  if (!rep.complete) {
    REQUIRE(rep.failing_triple.size() == 3);
    REQUIRE_THROWS_AS(enlarge_bunch(bunch), std::invalid_argument);
  } else {
    SUCCEED("family happens to be closed; nothing to refuse");
  }
}

TEST_CASE("the pair (C,g) built from sl2 passes every check exactly") {
  auto g = sl2<Rational>();
  IsotopicPair<Rational> ig = pair_from_lie_algebra(g);
  REQUIRE(ig.n1 == 1);
  REQUIRE(ig.n2 == 3);
  REQUIRE(verify_isotopic_pair(ig).pass());
  REQUIRE(verify_anti_jordan(ig).pass());
  REQUIRE(verify_alts(to_alts(ig)).pass());
  // scaled bracket: [A,B]_lambda = lambda [A,B]
  Vec<Rational> lam = {Rational(5)};
  Vec<Rational> he = ig.bracket2(lam, basis_vec<Rational>(3, 0), basis_vec<Rational>(3, 1));
  REQUIRE(he[1] == 10);  // 5 * [h,e] = 10 e
}

TEST_CASE("two-dimensional example isorepresentation passes exactly") {
  auto [g, iso] = two_dimensional_example_isorep<Rational>();
  REQUIRE(verify_isorep(iso, g).pass());
  auto split = split_isorep_structure_check(iso);
  REQUIRE(split.split_shape);
  REQUIRE(split.q_block_invertible);
  REQUIRE(split.intertwined);
}

TEST_CASE("zero T with any Q is an isorepresentation") {
  auto g = sl2<Rational>();
  Isorep<Rational> iso;
  iso.q = Mat<Rational>(2, 2);
  iso.q(0, 0) = 3;
  iso.q(1, 0) = 1;
  iso.t.assign(3, Mat<Rational>(2, 2));
  REQUIRE(verify_isorep(iso, g).pass());
}

TEST_CASE("standard isorepresentation of sl2 verifies exactly") {
  auto g = sl2<Rational>();
  Isorep<Rational> iso = standard_isorep(g);
  REQUIRE(iso.dim() == 6);
  REQUIRE(verify_isorep(iso, g).pass());
  // block oracle: T(X) Q T(Y) - T(Y) Q T(X) has the ad-bracket in its upper-right block
  Mat<Rational> lhs = iso.t[0] * iso.q * iso.t[1] - iso.t[1] * iso.q * iso.t[0];
  Mat<Rational> adh_ade = commutator(g.ad(0), g.ad(1));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(lhs(i, 3 + j) == adh_ade(i, j));
  auto split = split_isorep_structure_check(iso);
  REQUIRE(split.split_shape);
  REQUIRE(split.q_block_invertible);
  REQUIRE(split.intertwined);
}

TEST_CASE("standard isorepresentation of an abelian algebra degenerates to zero T") {
  LieAlgebra<Rational> g(1);
  Isorep<Rational> iso = standard_isorep(g);
  REQUIRE(iso.t[0].is_zero());  // abelian adjoint vanishes
  REQUIRE(verify_isorep(iso, g).pass());
}

TEST_CASE("forward conversion produces honest Lie algebra representations") {
  auto [g1, iso1] = two_dimensional_example_isorep<Rational>();
  auto [plus1, minus1] = isorep_to_representations(iso1);
  REQUIRE(verify_lie_representation(plus1, g1).pass());   // abelian: commutator must vanish
  REQUIRE(verify_lie_representation(minus1, g1).pass());
  auto g = sl2<Rational>();
  auto iso = standard_isorep(g);
  auto [plus, minus] = isorep_to_representations(iso);
  REQUIRE(verify_lie_representation(plus, g).pass());
  REQUIRE(verify_lie_representation(minus, g).pass());
}

TEST_CASE("adjoint representation with identity Q gives back itself") {
  auto g = sl2<Rational>();
  std::vector<Mat<Rational>> ad = {g.ad(0), g.ad(1), g.ad(2)};
  REQUIRE(verify_lie_representation(ad, g).pass());
  auto [plus, minus] = representation_to_isoreps(ad, Mat<Rational>::identity(3));
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(plus.t[i] == ad[i]);
    REQUIRE(minus.t[i] == ad[i]);
  }
  REQUIRE(verify_isorep(plus, g).pass());
  REQUIRE(verify_isorep(minus, g).pass());
}

TEST_CASE("round trip representation -> isorep -> T+ recovers the original") {
  auto g = sl2<Rational>();
  std::vector<Mat<Rational>> ad = {g.ad(0), g.ad(1), g.ad(2)};
  Mat<Rational> q(3, 3);
  q(0, 0) = 2;
  q(1, 2) = 1;
  q(2, 1) = -1;
  auto [plus, minus] = representation_to_isoreps(ad, q);
  REQUIRE(verify_isorep(plus, g).pass());
  REQUIRE(verify_isorep(minus, g).pass());
  auto [tplus, tminus] = isorep_to_representations(plus);
  (void)tminus;
  for (std::size_t i = 0; i < 3; ++i) REQUIRE(tplus[i] == ad[i]);  // Q (Q^-1 T) = T
}

TEST_CASE("reverse conversion rejects a singular Q") {
  auto g = sl2<Rational>();
  std::vector<Mat<Rational>> ad = {g.ad(0), g.ad(1), g.ad(2)};
  REQUIRE_THROWS_AS(representation_to_isoreps(ad, Mat<Rational>(3, 3)), std::invalid_argument);
}

TEST_CASE("isorep verification agrees with the pair-representation verifier") {
  auto g = sl2<Rational>();
  std::mt19937_64 eng(53);
  auto rnd_mat = [&](std::size_t n) {
    Mat<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = Rational(static_cast<int>(eng() % 7) - 3, 1 + static_cast<int>(eng() % 3));
    return m;
  };
  int valid_seen = 0, invalid_seen = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Isorep<Rational> iso;
    if (trial % 4 == 0) {
      // genuinely valid instances via the reverse construction
      std::vector<Mat<Rational>> ad = {g.ad(0), g.ad(1), g.ad(2)};
      Mat<Rational> q = rnd_mat(3);
      if (!inverse(q)) continue;
      iso = representation_to_isoreps(ad, q).first;
    } else {
      iso.q = rnd_mat(3);
      iso.t = {rnd_mat(3), rnd_mat(3), rnd_mat(3)};
    }
    AxiomReport direct = verify_isorep(iso, g);
    auto [ig, rep] = isorep_as_pair_representation(iso, g);
    RepresentationReport via_pair = verify_representation(rep, ig);
    REQUIRE(direct.pass() == via_pair.valid);
    REQUIRE(direct.max_residual() == Catch::Approx(via_pair.relations.max_residual()).margin(0));
    (direct.pass() ? valid_seen : invalid_seen)++;
  }
  REQUIRE(valid_seen > 0);
  REQUIRE(invalid_seen > 0);
}

TEST_CASE("rank-deficient Q-block fails the split structure shape") {
  auto g = sl2<Rational>();
  Isorep<Rational> iso = standard_isorep(g);
  // zero out one row of the lower-left identity block
  for (std::size_t j = 0; j < 3; ++j) iso.q(3, j) = 0;
  auto split = split_isorep_structure_check(iso);
  REQUIRE(split.split_shape);
  REQUIRE_FALSE(split.q_block_invertible);
}

TEST_CASE("bunch and Lie algebra JSON loaders round-trip on sl2") {
  json g_doc = {{"dim", 3},
                {"c", json::array({json::array({0, 1, 1, 2, 1}), json::array({0, 2, 2, -2, 1}),
                                   json::array({1, 2, 0, 1, 1})})}};
  auto g = lie_algebra_from_json<Rational>(g_doc);
  REQUIRE(g.verify().pass());
  REQUIRE(g.c(0, 1, 1) == 2);
  REQUIRE_THROWS_AS(lie_algebra_from_json<Rational>(json{{"dim", 2}, {"junk", 1}}), ConfigError);
}

TEST_CASE("enlarging the zero-module bunch reproduces the pair (C,g)") {
  auto g = sl2<Rational>();
  LieBunch<Rational> zero_bunch(g, 0);
  IsotopicPair<Rational> enlarged = enlarge_bunch(zero_bunch);
  IsotopicPair<Rational> direct = pair_from_lie_algebra(g);
  REQUIRE(enlarged.n1 == direct.n1);
  REQUIRE(enlarged.n2 == direct.n2);
  REQUIRE(enlarged.m1.data() == direct.m1.data());
  REQUIRE(enlarged.m2.data() == direct.m2.data());
}

TEST_CASE("bunch JSON documents load and verify") {
  json doc = {{"g", {{"dim", 1}, {"c", json::array()}}},
              {"dim_v", 3},
              {"action", json::array({json::array({0, 1, 1, 2, 1}), json::array({0, 2, 2, -2, 1})})},
              {"brackets", json::array({json::array({0, 0, 1, 1, 2, 1}),
                                        json::array({0, 0, 2, 2, -2, 1}),
                                        json::array({0, 1, 2, 0, 1, 1})})}};
  LieBunch<Rational> bunch = bunch_from_json<Rational>(doc);
  BunchReport rep = verify_bunch(bunch);
  REQUIRE(rep.axioms.pass());
  REQUIRE(rep.complete);
  REQUIRE(verify_isotopic_pair(enlarge_bunch(bunch)).pass());
  REQUIRE_THROWS_AS(bunch_from_json<Rational>(json{{"dim_v", 1}, {"junk", 0}}), ConfigError);
}
