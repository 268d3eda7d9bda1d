#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradua/duality.hpp"

using namespace gradua;

namespace {

TablePtr yz() { return VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}}); }

GradedPolyMap phi(const TablePtr& tbl) {
  return GradedPolyMap(tbl, tbl, {parse_polynomial(tbl, "y"), parse_polynomial(tbl, "z + y^2")});
}

GradedPolyMap phi_inv(const TablePtr& tbl) {
  return GradedPolyMap(tbl, tbl, {parse_polynomial(tbl, "y"), parse_polynomial(tbl, "z - y^2")});
}

// random graded endomorphism of R^(d1, d2) of polynomial degree <= 3
GradedPolyMap random_graded_map(std::mt19937_64& rng, const TablePtr& src, const TablePtr& tgt) {
  std::uniform_int_distribution<int> c(-2, 2);
  std::vector<GradedPolynomial> comps;
  for (int v = 0; v < tgt->size(); ++v) {
    Weight w = tgt->var(v).weight;
    GradedPolynomial comp(src);
    for (const auto& md : enumerate_monomials(src, w))
      comp = comp + GradedPolynomial::monomial(src, md, c(rng));
    comps.push_back(comp);
  }
  return GradedPolyMap(src, tgt, comps);
}

}  // namespace

TEST_CASE("g_dual_space dimensions") {
  GradedSpace line(RankVector({1}));
  auto dual = g_dual_space(line);
  for (long w = 0; w <= 6; ++w) CHECK(dual.dimension(w) == 1);

  GradedSpace V(RankVector({1, 1}));
  CHECK(g_dual_space(V).dimension(4) == 3);

  GradedSpace point(RankVector({0}));
  auto pd = g_dual_space(point);
  CHECK(pd.dimension(0) == 1);
  for (long w = 1; w <= 4; ++w) CHECK(pd.dimension(w) == 0);
}

TEST_CASE("alg_dual recovers the graded space") {
  CHECK(alg_dual(yz()).rank() == RankVector({1, 1}));
  CHECK(alg_dual(VariableTable::canonical(RankVector({0}))).rank() == RankVector({0}));
  CHECK(alg_dual(VariableTable::make({{"y1", Weight(1)}, {"y2", Weight(1)}})).rank() ==
        RankVector({2}));
}

TEST_CASE("g_dual_morphism is generator substitution") {
  auto tbl = yz();
  auto dual = g_dual_morphism(phi(tbl));
  CHECK(dual.generator_image(0) == parse_polynomial(tbl, "y"));
  CHECK(dual.generator_image(1) == parse_polynomial(tbl, "z + y^2"));
  CHECK(dual.apply(parse_polynomial(tbl, "z^2")) == parse_polynomial(tbl, "z^2 + 2*y^2*z + y^4"));

  auto id_dual = g_dual_morphism(GradedPolyMap::identity(tbl));
  auto p = parse_polynomial(tbl, "3*y*z - z + 1");
  CHECK(id_dual.apply(p) == p);

  // zero map kills every positive-weight generator
  GradedPolyMap zero(tbl, tbl, {GradedPolynomial(tbl), GradedPolynomial(tbl)});
  auto zd = g_dual_morphism(zero);
  CHECK(zd.apply(parse_polynomial(tbl, "y + z")).is_zero());
  CHECK(zd.apply(parse_polynomial(tbl, "2")) == parse_polynomial(tbl, "2"));

  GradedPolyMap bad(tbl, tbl, {parse_polynomial(tbl, "y"), parse_polynomial(tbl, "y")});
  CHECK_THROWS_AS(g_dual_morphism(bad), Error);
}

TEST_CASE("ev_point") {
  GradedSpace V(RankVector({1, 1}));
  DualPoint origin = ev_point(V, V.origin());
  CHECK(is_zero_vector(origin.lambda));

  Point p = V.point({Rational(2), Rational(3)});
  DualPoint dp = ev_point(V, p);
  CHECK(dp.lambda == QVector{Rational(2), Rational(3)});
  CHECK(ev_point_inverse(V, dp).coords == p.coords);

  // equivariance at t = 2, P = (1, 1)
  Point q = V.point({Rational(1), Rational(1)});
  DualPoint lhs = ev_point(V, act(Rational(2), q));
  Point rhs = act(Rational(2), ev_point_inverse(V, ev_point(V, q)));
  CHECK(lhs.lambda == rhs.coords);
  CHECK(lhs.lambda == QVector{Rational(2), Rational(4)});
}

TEST_CASE("k-duals") {
  GradedSpace line(RankVector({1}));
  auto A1 = k_dual_space_presented(line, 1);
  CHECK(A1.dim(Weight(0)) == 1);
  CHECK(A1.dim(Weight(1)) == 1);

  GradedSpace V(RankVector({1, 1}));
  auto A2 = k_dual_space_presented(V, 2);
  CHECK(A2.dim(Weight(0)) == 1);
  CHECK(A2.dim(Weight(1)) == 1);
  CHECK(A2.dim(Weight(2)) == 2);

  CHECK(k_alg_dual(A2, 2).rank() == RankVector({1, 1}));

  // non-free algebras are rejected
  std::map<Weight, AlgComponent> comps;
  comps[Weight(0)] = {1, {}};
  comps[Weight(1)] = {1, {}};
  PresentedGradedAlgebra notfree(Weight(2), std::move(comps), {});
  CHECK_THROWS_AS(k_alg_dual(notfree, 2), Error);

  TruncatedAlgebra T = k_dual_space(V, 2);
  CHECK(T.mul(parse_polynomial(T.table(), "y + z"), parse_polynomial(T.table(), "y + z")) ==
        parse_polynomial(T.table(), "y^2"));
}

TEST_CASE("functoriality") {
  auto tbl = yz();
  CHECK(check_functoriality(GradedPolyMap::identity(tbl), GradedPolyMap::identity(tbl)).pass);
  // dual of (phi^-1 o phi) equals dual(phi) o dual(phi^-1): both identity
  CHECK(check_functoriality(phi(tbl), phi_inv(tbl)).pass);

  std::mt19937_64 rng(23);
  auto src = VariableTable::canonical(RankVector({2, 1}));
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_graded_map(rng, src, src);
    auto g = random_graded_map(rng, src, src);
    std::vector<GradedPolynomial> probes = {
        parse_polynomial(src, "y1*y2 + z"),
        parse_polynomial(src, "z^2 - y1^3*y2"),
    };
    CHECK(check_functoriality(f, g, probes).pass);
  }
}

TEST_CASE("duality round trips for all small rank vectors") {
  for (long d1 = 0; d1 <= 3; ++d1)
    for (long d2 = 0; d2 <= 2; ++d2) {
      GradedSpace V(RankVector({d1, d2}));
      auto rep = duality_roundtrip(V, 2);
      CHECK(rep.pass);
      CHECK(rep.coordinate_identity);
      CHECK(rep.h_equivariant);
    }
}

TEST_CASE("k-duality factors duality componentwise") {
  GradedSpace V(RankVector({2, 1}));
  auto dual = g_dual_space(V);
  for (long k = 1; k <= 4; ++k) {
    auto Ak = k_dual_space_presented(V, k);
    for (long w = 0; w <= k; ++w) CHECK(Ak.dim(Weight(w)) == dual.dimension(w));
  }
}
