#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "isopair/bunch.hpp"
#include "isopair/hom_pair.hpp"
#include "isopair/oscillator.hpp"
#include "isopair/superalgebra.hpp"

using namespace isopair;

namespace {

OscillatorPair<Rational> worked_pair() {
  return build_oscillator_pair(EpsilonParams<Rational>::resolve(Rational(1), Rational(3), Rational(3)));
}

}  // namespace

TEST_CASE("triple product picks the bracketed form by polarization part") {
  auto alts = to_alts(worked_pair().pair);
  // [q a p]: x=q, y=a (other part), z=p (same part as x) -> [p,q]_a = 2 e1 q
  Vec<Rational> v = alts.triple(kQ, 3 + kA, kP);
  REQUIRE(v[kQ] == 2);
  REQUIRE(v[kP] == 0);
  REQUIRE(v[kR] == 0);
  // [p q r]: q and r share a part -> zero
  REQUIRE(vec_is_zero(alts.triple(kP, kQ, kR)));
}

TEST_CASE("oscillator triple system satisfies all three axioms exactly") {
  auto alts = to_alts(worked_pair().pair);
  AxiomReport rep = verify_alts(alts);
  INFO(rep.summary());
  REQUIRE(rep.pass());
  // cross-check the operator-form derivation identity against the direct form
  REQUIRE(verify_alts_derivation_direct(alts).pass());
}

TEST_CASE("hom pair triple systems verify exactly") {
  for (auto [n, m] : {std::pair<int, int>{1, 1}, {2, 1}, {2, 2}}) {
    auto alts = to_alts(hom_pair<Rational>(n, m));
    INFO("hom(" << n << "," << m << ")");
    REQUIRE(verify_alts(alts).pass());
    if (alts.dim() <= 8) REQUIRE(verify_alts_derivation_direct(alts).pass());
  }
}

TEST_CASE("zero triple system passes") {
  AltsTensor<Rational> zero(2, 2);
  REQUIRE(verify_alts(zero).pass());
}

TEST_CASE("g0 of the oscillator has dimension six at generic couplings") {
  auto g0 = build_g0(to_alts(worked_pair().pair));
  REQUIRE(g0.dim() == 6);
  REQUIRE(g0.closure.pass());
  // R(r,b) = (e2/e3) R(p,c): dependent operators must not enlarge the span
  auto alts = to_alts(worked_pair().pair);
  SpanBasis<Rational> span(36);
  for (const auto& b : g0.basis) span.add(b.flat());
  REQUIRE(span.coords(alts.r_matrix(kR, 3 + kB).flat()));
  REQUIRE(span.coords(alts.r_matrix(kR, 3 + kA).flat()));
}

TEST_CASE("g0 dimension is six for many generic couplings and drops when e1 = 0") {
  std::mt19937_64 eng(17);
  int generic_checked = 0;
  while (generic_checked < 50) {
    Rational e1(static_cast<int>(eng() % 9) - 4, 1 + static_cast<int>(eng() % 3));
    Rational e2(static_cast<int>(eng() % 9) - 4, 1 + static_cast<int>(eng() % 3));
    Rational e3(static_cast<int>(eng() % 9) - 4, 1 + static_cast<int>(eng() % 3));
    if (e1 == 0 || e2 == 0 || e3 == 0) continue;
    auto params = EpsilonParams<Rational>::resolve(e1, e2, e3);
    auto g0 = build_g0(to_alts(build_oscillator_pair(params).pair));
    INFO("eps = (" << e1 << "," << e2 << "," << e3 << ")");
    REQUIRE(g0.dim() == 6);
    ++generic_checked;
  }
  // degenerate locus: e1 = 0 collapses the two diagonal operators
  auto degenerate = EpsilonParams<Rational>::resolve(Rational(0), Rational(1), Rational(1));
  REQUIRE_FALSE(degenerate.g0_generic());
  auto g0 = build_g0(to_alts(build_oscillator_pair(degenerate).pair));
  REQUIRE(g0.dim() < 6);
}

TEST_CASE("zero triple system gives zero g0") {
  AltsTensor<Rational> zero(3, 3);
  REQUIRE(build_g0(zero).dim() == 0);
}

TEST_CASE("oscillator superalgebra has superdimension (6|6) and passes graded axioms") {
  auto sa = build_super(to_alts(worked_pair().pair));
  REQUIRE(sa.superdimension() == std::make_pair<std::size_t, std::size_t>(6, 6));
  AxiomReport rep = verify_super(sa);
  INFO(rep.summary());
  REQUIRE(rep.pass());
  REQUIRE(rep.exact_backend);
}

TEST_CASE("oscillator odd-odd brackets match the operator identifications") {
  auto alts = to_alts(worked_pair().pair);
  auto sa = build_super(alts);
  auto idx_of = [&](const std::string& n) {
    for (std::size_t i = 0; i < sa.names.size(); ++i)
      if (sa.names[i] == n) return i;
    FAIL("name not found: " << n);
    return std::size_t(0);
  };
  // [p,a]+ = R(p,a)
  std::size_t p = idx_of("p"), a = idx_of("a"), rpa = idx_of("R(p,a)");
  for (std::size_t k = 0; k < sa.dim(); ++k)
    REQUIRE(sa.c(p, a, k) == (k == rpa ? Rational(1) : Rational(0)));
  // [q,p]+ = 0 and [r,c]+ = 0
  std::size_t q = idx_of("q"), r = idx_of("r"), c = idx_of("c");
  for (std::size_t k = 0; k < sa.dim(); ++k) {
    REQUIRE(sa.c(q, p, k) == 0);
    REQUIRE(sa.c(r, c, k) == 0);
  }
  // [r,a]+ = (e2/e3) R(q,c) = R(q,c) at the worked couplings
  std::size_t rqc = idx_of("R(q,c)");
  for (std::size_t k = 0; k < sa.dim(); ++k)
    REQUIRE(sa.c(r, a, k) == (k == rqc ? Rational(1) : Rational(0)));
}

TEST_CASE("purely even superalgebra reduces to an ordinary Lie algebra check") {
  LieSuperalgebra<Rational> sa;
  sa.n_even = 3;
  sa.n_odd = 0;
  sa.names = {"h", "e", "f"};
  sa.c = Tensor3<Rational>(3, 3, 3);
  auto g = sl2<Rational>();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) sa.c(i, j, k) = g.c(i, j, k);
  REQUIRE(verify_super(sa).pass());
}

TEST_CASE("a corrupted graded constant fails with a witness triple") {
  auto sa = build_super(to_alts(worked_pair().pair));
  sa.c(0, 1, 2) += 1;
  AxiomReport rep = verify_super(sa);
  REQUIRE_FALSE(rep.pass());
  const CheckResult* worst = rep.worst();
  REQUIRE(worst != nullptr);
  REQUIRE_FALSE(worst->witness.empty());
}

TEST_CASE("hom pair superdimensions follow the operator-span rank") {
  // even part is the inner span: n^2+m^2-1 for n != m (one more collapses when n == m)
  struct Case {
    int n, m;
    std::size_t even, odd;
  };
  for (auto [n, m, even, odd] : {Case{1, 1, 0, 2}, Case{2, 1, 4, 4}, Case{2, 2, 6, 8}}) {
    auto sa = build_super(to_alts(hom_pair<Rational>(n, m)));
    INFO("hom(" << n << "," << m << ")");
    REQUIRE(sa.n_even == even);
    REQUIRE(sa.n_odd == odd);
    REQUIRE(verify_super(sa).pass());
  }
}

TEST_CASE("the span of R(p,c),R(q,c) is an abelian ideal of g0") {
  auto alts = to_alts(worked_pair().pair);
  auto g0 = build_g0(alts);
  Mat<Rational> rpc = alts.r_matrix(kP, 3 + kC), rqc = alts.r_matrix(kQ, 3 + kC);
  REQUIRE(commutator(rpc, rqc).is_zero());
  SpanBasis<Rational> ideal(36);
  ideal.add(rpc.flat());
  ideal.add(rqc.flat());
  for (const auto& b : g0.basis) {
    REQUIRE(ideal.coords(commutator(b, rpc).flat()));
    REQUIRE(ideal.coords(commutator(b, rqc).flat()));
  }
  // quotient dimension 4, consistent with a four-dimensional complement
  REQUIRE(g0.dim() - ideal.size() == 4);
}

TEST_CASE("R(p,c),R(q,c),r,c span a (2|2) ideal of the superalgebra") {
  auto sa = build_super(to_alts(worked_pair().pair));
  auto idx_of = [&](const std::string& n) {
    for (std::size_t i = 0; i < sa.names.size(); ++i)
      if (sa.names[i] == n) return i;
    FAIL("name not found: " << n);
    return std::size_t(0);
  };
  std::vector<std::size_t> ideal = {idx_of("R(p,c)"), idx_of("R(q,c)"), idx_of("r"), idx_of("c")};
  REQUIRE(is_super_ideal(sa, ideal));
  // and the even pair alone is not an ideal of the full superalgebra
  std::vector<std::size_t> even_only = {idx_of("R(p,c)"), idx_of("R(q,c)")};
  REQUIRE_FALSE(is_super_ideal(sa, even_only));
}

TEST_CASE("superalgebra of the pair (C,g) acts on the odd part as ad plus trivial") {
  auto g = sl2<Rational>();
  auto sa = build_super(to_alts(pair_from_lie_algebra(g)));
  REQUIRE(sa.n_even == 3);   // dim sl2
  REQUIRE(sa.n_odd == 4);    // dim g + 1
  REQUIRE(verify_super(sa).pass());
  // the 1-dimensional odd slot (the C factor) is annihilated by the even part
  for (std::size_t i = 0; i < sa.n_even; ++i)
    for (std::size_t k = 0; k < sa.dim(); ++k) REQUIRE(sa.c(i, sa.n_even + 0, k) == 0);
  // the remaining odd slots transform as the adjoint
  for (std::size_t i = 0; i < 3; ++i) {
    // even basis element i is R_{1, e_a} for some a; its action on odd slot (1+j)
    // must match ad of the matching algebra element
    Mat<Rational> action(3, 3);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) action(k, j) = sa.c(i, sa.n_even + 1 + j, sa.n_even + 1 + k);
    bool matches_some_ad = false;
    for (std::size_t a = 0; a < 3; ++a)
      if (action == g.ad(a)) matches_some_ad = true;
    REQUIRE(matches_some_ad);
  }
}

TEST_CASE("superalgebra JSON export carries dimensions and brackets") {
  auto sa = build_super(to_alts(worked_pair().pair));
  auto doc = superalgebra_to_json(sa);
  REQUIRE(doc["n_even"] == 6);
  REQUIRE(doc["n_odd"] == 6);
  REQUIRE(doc["brackets"].is_array());
  REQUIRE_FALSE(doc["brackets"].empty());
}

TEST_CASE("larger hom pairs keep the exact axioms and rank pattern") {
  // dims follow n^2+m^2-1-[n==m] for the even part, 2nm for the odd part
  struct Case {
    int n, m;
    std::size_t even;
  };
  for (auto [n, m, even] : {Case{1, 2, 4}, Case{3, 1, 9}, Case{3, 2, 12}, Case{3, 3, 16}}) {
    auto hp = hom_pair<Rational>(n, m);
    auto alts = to_alts(hp);
    INFO("hom(" << n << "," << m << ")");
    REQUIRE(verify_alts(alts).pass());
    auto sa = build_super(alts);
    REQUIRE(sa.n_even == even);
    REQUIRE(sa.n_odd == static_cast<std::size_t>(2 * n * m));
  }
}

TEST_CASE("superalgebra of an enlarged bunch passes the graded axioms") {
  LieAlgebra<Rational> g(1);
  LieBunch<Rational> bunch(g, 3);
  auto s = sl2<Rational>();
  bunch.action[0] = s.ad(0);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) bunch.brackets(0, i, j, k) = s.c(i, j, k);
  IsotopicPair<Rational> pair = enlarge_bunch(bunch);
  auto alts = to_alts(pair);
  REQUIRE(verify_alts(alts).pass());
  auto sa = build_super(alts);
  REQUIRE(verify_super(sa).pass());
}
