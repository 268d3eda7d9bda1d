#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradua/coalgebra.hpp"

using namespace gradua;

namespace {

Rational delta_coeff(const std::vector<CotensorTerm>& terms, const Multidegree& l,
                     const Multidegree& r) {
  for (const auto& t : terms)
    if (t.left == l && t.right == r) return t.coeff;
  return 0;
}

}  // namespace

TEST_CASE("bases of the graded dual") {
  auto line = VariableTable::make({{"y", Weight(1)}});
  auto C = graded_dual(line, 2);
  CHECK(C.dim(Weight(0)) == 1);
  CHECK(C.dim(Weight(1)) == 1);
  CHECK(C.dim(Weight(2)) == 1);

  auto yz = VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}});
  auto C2 = graded_dual(yz, 2);
  CHECK(C2.dim(Weight(2)) == 2);  // Y_yy and Y_z

  auto point = VariableTable::canonical(RankVector({0}));
  auto C3 = graded_dual(point, 3);
  CHECK(C3.dim(Weight(0)) == 1);
  CHECK(C3.dim(Weight(1)) == 0);
  auto du = C3.comultiply(Multidegree::unit());
  REQUIRE(du.size() == 1);
  CHECK(du[0].coeff == 1);
  CHECK(du[0].left.is_unit());
  CHECK(du[0].right.is_unit());
}

TEST_CASE("comultiplication of low monomials") {
  auto tbl = VariableTable::make({{"a", Weight(1)}, {"b", Weight(1)}});
  auto C = graded_dual(tbl, 4);

  // degree-1 elements are primitive up to unit terms
  auto da = C.comultiply(Multidegree::single(0, 1));
  REQUIRE(da.size() == 2);
  CHECK(delta_coeff(da, Multidegree::unit(), Multidegree::single(0, 1)) == 1);
  CHECK(delta_coeff(da, Multidegree::single(0, 1), Multidegree::unit()) == 1);

  // distinct indices follow the shuffle expression
  Multidegree ab({{0, 1}, {1, 1}});
  auto dab = C.comultiply(ab);
  CHECK(delta_coeff(dab, Multidegree::unit(), ab) == 1);
  CHECK(delta_coeff(dab, ab, Multidegree::unit()) == 1);
  CHECK(delta_coeff(dab, Multidegree::single(0, 1), Multidegree::single(1, 1)) == 1);
  CHECK(delta_coeff(dab, Multidegree::single(1, 1), Multidegree::single(0, 1)) == 1);
  CHECK(dab.size() == 4);

  // repeated index: the transpose of multiplication puts coefficient 1 on
  // the middle term, matching <Y_aa, a*a> = 1
  Multidegree aa = Multidegree::single(0, 2);
  auto daa = C.comultiply(aa);
  CHECK(delta_coeff(daa, Multidegree::single(0, 1), Multidegree::single(0, 1)) == 1);
  CHECK(delta_coeff(daa, Multidegree::unit(), aa) == 1);
  CHECK(daa.size() == 3);
}

TEST_CASE("shuffle formula matches on distinct indices") {
  auto tbl = VariableTable::make({{"a", Weight(1)}, {"b", Weight(1)}, {"c", Weight(2)}});
  auto C = graded_dual(tbl, 4);
  for (const auto& md : {Multidegree({{0, 1}, {1, 1}}), Multidegree({{0, 1}, {2, 1}}),
                         Multidegree({{0, 1}, {1, 1}, {2, 1}})}) {
    auto expected = shuffle_comultiplication(tbl, md);
    auto got = C.comultiply(md);
    CHECK(got.size() == expected.size());
    for (const auto& term : expected)
      CHECK(delta_coeff(got, term.left, term.right) == term.coeff);
  }
  CHECK_THROWS_AS(shuffle_comultiplication(tbl, Multidegree::single(0, 2)), Error);
}

TEST_CASE("pairing identity <Delta c, a x b> = <c, ab>") {
  // exhaustive over all rank vectors with |d| <= 3, degree <= 3, weight <= 6
  std::vector<RankVector> dds;
  for (long d1 = 0; d1 <= 3; ++d1)
    for (long d2 = 0; d1 + d2 <= 3; ++d2)
      for (long d3 = 0; d1 + d2 + d3 <= 3; ++d3)
        if (d1 + d2 + d3 > 0) dds.push_back(RankVector({d1, d2, d3}));
  for (const auto& dd : dds) {
    auto tbl = VariableTable::canonical(dd);
    long W = 6;
    auto C = graded_dual(tbl, W);
    for (long w = 0; w <= W; ++w) {
      for (const auto& cmd : C.basis(Weight(w))) {
        auto delta = C.comultiply(cmd);
        for (long i = 0; i <= w; ++i) {
          for (const auto& a : C.basis(Weight(i))) {
            for (const auto& b : C.basis(Weight(w - i))) {
              GradedPolynomial prod = GradedPolynomial::monomial(tbl, a, 1) *
                                      GradedPolynomial::monomial(tbl, b, 1);
              CHECK(delta_coeff(delta, a, b) == C.pairing(cmd, prod));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("axioms hold for graded polynomial coalgebras") {
  CHECK(check_coalgebra_axioms(graded_dual(VariableTable::make({{"y", Weight(1)}}), 6)).pass);
  CHECK(check_coalgebra_axioms(
            graded_dual(VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}}), 6))
            .pass);
  CHECK(check_coalgebra_axioms(graded_dual(VariableTable::canonical(RankVector({0})), 4)).pass);
  CHECK(check_coalgebra_axioms(graded_dual(VariableTable::canonical(RankVector({2, 1})), 5)).pass);
}

TEST_CASE("perturbing one Delta entry breaks the axioms") {
  auto tbl = VariableTable::make({{"y", Weight(1)}});
  GradedCoalgebra C = graded_dual(tbl, 4);
  Tensor3& t = C.delta_tensor(Weight(1), Weight(2));
  t.at(0, 0, 0) += 1;  // Delta(Y_yyy) gains an extra Y_y (x) Y_yy
  auto rep = check_coalgebra_axioms(C);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.coassociative);
}

TEST_CASE("double transpose returns the original structure constants") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  auto C = dualize_structure(A);
  auto B = structure_from_dual(C);
  for (const auto& [w1, c1] : A.components())
    for (const auto& [w2, c2] : A.components()) {
      Weight sum = w1 + w2;
      if (!sum.within(A.truncation())) continue;
      CHECK(A.mu(w1, w2) == B.mu(w1, w2));
    }
  // counit is the projection onto weight zero: the unit is homogeneous
  CHECK(A.dim(Weight(0)) == 1);
}

TEST_CASE("pairing identity on random triples of a presented dual") {
  std::mt19937_64 rng(41);
  auto A = model_algebra(RankVector({2, 1}), 3);
  auto C = dualize_structure(A);
  std::vector<Weight> ws;
  for (const auto& [w, c] : A.components())
    if (c.dim > 0) ws.push_back(w);
  for (int trial = 0; trial < 100; ++trial) {
    Weight w1 = ws[rng() % ws.size()];
    Weight w2 = ws[rng() % ws.size()];
    Weight sum = w1 + w2;
    if (!sum.within(A.truncation())) continue;
    int a = static_cast<int>(rng() % A.dim(w1));
    int b = static_cast<int>(rng() % A.dim(w2));
    int c = static_cast<int>(rng() % A.dim(sum));
    // <Delta Y_c, e_a (x) e_b> = <Y_c, e_a e_b>
    const Tensor3& d = C.delta.at({w1, w2});
    QVector prod = A.mul_basis(w1, a, w2, b);
    CHECK(d.at(c, a, b) == prod[static_cast<size_t>(c)]);
  }
}

TEST_CASE("tensor duals glue by identity blocks per weight") {
  // dims of V (x) W per weight computed two ways: once through the graded
  // tensor product, once through the duals; the index enumerations coincide
  std::vector<long> dimsV = {1, 2, 1};  // weights 0..2
  std::vector<long> dimsW = {1, 1, 3};
  for (long k = 0; k <= 4; ++k) {
    std::vector<std::tuple<long, int, int>> primal, dual;
    for (long i = 0; i <= k; ++i) {
      long j = k - i;
      if (i >= static_cast<long>(dimsV.size()) || j >= static_cast<long>(dimsW.size())) continue;
      for (int p = 0; p < dimsV[static_cast<size_t>(i)]; ++p)
        for (int q = 0; q < dimsW[static_cast<size_t>(j)]; ++q) primal.push_back({i, p, q});
    }
    for (long i = 0; i <= k; ++i) {
      long j = k - i;
      if (i >= static_cast<long>(dimsV.size()) || j >= static_cast<long>(dimsW.size())) continue;
      for (int p = 0; p < dimsV[static_cast<size_t>(i)]; ++p)
        for (int q = 0; q < dimsW[static_cast<size_t>(j)]; ++q) dual.push_back({i, p, q});
    }
    CHECK(primal == dual);
  }
}
