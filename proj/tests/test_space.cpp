#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradua/space.hpp"

using namespace gradua;

namespace {

TablePtr yz() { return VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}}); }

}  // namespace

TEST_CASE("monoid action on points") {
  GradedSpace V(RankVector({1, 1}));
  Point p = V.point({Rational(1), Rational(1)});
  Point scaled = act(Rational(2), p);
  CHECK(scaled.coords == QVector{Rational(2), Rational(4)});
  CHECK(act(Rational(1), p).coords == p.coords);
  Point origin = act(Rational(0), p);
  CHECK(origin.coords == QVector{Rational(0), Rational(0)});
}

TEST_CASE("monoid law h_t h_s = h_ts") {
  GradedSpace V(RankVector({2, 1, 1}));
  std::vector<Rational> ts = {Rational(0), Rational(1), Rational(-1), Rational(2), frac(1, 2), frac(-3, 2)};
  Point p = V.point({Rational(1), Rational(-2), frac(1, 3), Rational(5)});
  for (const auto& t : ts)
    for (const auto& s : ts) {
      Point lhs = act(t, act(s, p));
      Point rhs = act(t * s, p);
      CHECK(lhs.coords == rhs.coords);
    }
}

TEST_CASE("evaluation is an algebra homomorphism") {
  auto tbl = yz();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pick(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    Point p{tbl, {Rational(pick(rng)), Rational(pick(rng))}};
    auto f = parse_polynomial(tbl, "1 + 2*y - z");
    auto g = parse_polynomial(tbl, "y^2 - 3*z + y");
    CHECK((f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p));
    CHECK((f + g).evaluate(p) == f.evaluate(p) + g.evaluate(p));
  }
}

TEST_CASE("homogeneous scaling law f(h_t P) = t^w f(P)") {
  auto tbl = yz();
  auto f = parse_polynomial(tbl, "y^2 + 5*z");  // weight 2
  Point p{tbl, {frac(2, 3), Rational(-1)}};
  Rational t(3);
  CHECK(f.evaluate(act(t, p)) == rational_pow(t, 2) * f.evaluate(p));
}

TEST_CASE("pointwise intertwining agrees with the symbolic check") {
  auto tbl = yz();
  GradedPolyMap phi(tbl, tbl, {parse_polynomial(tbl, "y"), parse_polynomial(tbl, "z + y^2")});
  auto rep = check_intertwines_pointwise(phi);
  CHECK(rep.pass);
  CHECK(rep.exhaustive);

  GradedPolyMap bad(tbl, tbl, {parse_polynomial(tbl, "y"), parse_polynomial(tbl, "z + y")});
  auto rep2 = check_intertwines_pointwise(bad);
  CHECK_FALSE(rep2.pass);

  // this violation is invisible at t in {0, 1, -1}: it needs the sampler's
  // extra t values
  GradedPolyMap subtle(tbl, tbl, {parse_polynomial(tbl, "y"), parse_polynomial(tbl, "z + y^4")});
  auto rep3 = check_intertwines_pointwise(subtle);
  CHECK_FALSE(rep3.pass);
  CHECK(rep3.t != 0);
  CHECK(rep3.t != 1);
  CHECK(rep3.t != -1);

  CHECK(check_intertwines_pointwise(GradedPolyMap::identity(tbl)).pass);
}

TEST_CASE("pointwise and symbolic checks agree on random maps") {
  auto tbl = yz();
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> c(-2, 2);
  int pass_seen = 0, fail_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // mix graded and non-graded components
    GradedPolynomial c0 = parse_polynomial(tbl, "y") * Rational(c(rng));
    GradedPolynomial c1 = parse_polynomial(tbl, "z") * Rational(c(rng)) +
                          parse_polynomial(tbl, "y^2") * Rational(c(rng)) +
                          parse_polynomial(tbl, "y") * Rational(rng() % 2 ? c(rng) : 0);
    GradedPolyMap f(tbl, tbl, {c0, c1});
    bool symbolic = f.check_graded().pass;
    bool pointwise = check_intertwines_pointwise(f).pass;
    CHECK(symbolic == pointwise);
    (symbolic ? pass_seen : fail_seen)++;
  }
  CHECK(pass_seen > 5);
  CHECK(fail_seen > 5);
}

TEST_CASE("sample failure from the worked example") {
  auto tbl = yz();
  GradedPolyMap f(tbl, tbl, {parse_polynomial(tbl, "y"), parse_polynomial(tbl, "z + y")});
  Point p{tbl, {Rational(1), Rational(0)}};
  Point lhs = f.apply(act(Rational(2), p));
  Point rhs = act(Rational(2), f.apply(p));
  CHECK(lhs.coords == QVector{Rational(2), Rational(2)});
  CHECK(rhs.coords == QVector{Rational(2), Rational(4)});
}
