#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradua/weil.hpp"

using namespace gradua;

namespace {

TablePtr yz() { return VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}}); }

// graded basis change mixing z with y^2 inside weight 2, the presented-level
// shadow of the automorphism (y, z) -> (y, z + y^2)
std::map<Weight, QMatrix> shear_basis_change() {
  QMatrix b2 = QMatrix::identity(2);
  // model weight-2 basis over {y:1, z:2} is [y^2, z]; send z -> z + y^2
  b2.at(0, 1) = 1;
  return {{Weight(2), b2}};
}

}  // namespace

TEST_CASE("truncate_mul") {
  auto eps_tbl = VariableTable::make({{"y", Weight(1)}});
  auto e = parse_polynomial(eps_tbl, "y");
  long k = 3;
  auto ek = parse_polynomial(eps_tbl, "y^3");
  CHECK(truncate_mul(e, ek, k).is_zero());
  auto tbl = yz();
  CHECK(truncate_mul(parse_polynomial(tbl, "y"), parse_polynomial(tbl, "y"), 2) ==
        parse_polynomial(tbl, "y^2"));
  CHECK(truncate_mul(parse_polynomial(tbl, "y + z"), parse_polynomial(tbl, "y + z"), 2) ==
        parse_polynomial(tbl, "y^2"));
  TruncatedAlgebra A(tbl, 2);
  CHECK(A.mul(parse_polynomial(tbl, "y + z"), parse_polynomial(tbl, "y + z")) ==
        parse_polynomial(tbl, "y^2"));
}

TEST_CASE("model algebra is a valid presented algebra") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  CHECK(A.validate().pass);
  CHECK(A.dim(Weight(0)) == 1);
  CHECK(A.dim(Weight(1)) == 1);
  CHECK(A.dim(Weight(2)) == 2);
  // y * y = y^2: first weight-2 basis vector (descending lex puts y^2 first)
  CHECK(A.mul_basis(Weight(1), 0, Weight(1), 0) == QVector{Rational(1), Rational(0)});
}

TEST_CASE("nilradical") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  CHECK(nilradical(A).total_dim() == 3);  // y, z, y^2
  auto R = model_algebra(RankVector({0}), 0);
  CHECK(nilradical(R).total_dim() == 0);
  auto B = model_algebra(RankVector({1}), 3);
  CHECK(nilradical(B).total_dim() == 3);  // y, y^2, y^3
}

TEST_CASE("algebra order") {
  CHECK(algebra_order(model_algebra(RankVector({1}), 3)) == 3);
  CHECK(algebra_order(model_algebra(RankVector({0}), 0)) == 0);
  // one weight-2 variable truncated at 2: z^2 dies, order 1
  CHECK(algebra_order(model_algebra(RankVector({0, 1}), 2)) == 1);
}

TEST_CASE("generator extraction") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  auto gens = extract_generators(A);
  CHECK(gens.count(Weight(1)) == 1);
  CHECK(gens.count(Weight(2)) == 1);
  CHECK(gens.rank_vector() == RankVector({1, 1}));
  // weight-2 basis is [y^2, z]; the products span is y^2, so the lift is z
  CHECK(gens.lifts.at(Weight(2))[0] == QVector{Rational(0), Rational(1)});

  auto B = model_algebra(RankVector({2}), 2);
  auto gens_b = extract_generators(B);
  CHECK(gens_b.count(Weight(1)) == 2);
  CHECK(gens_b.count(Weight(2)) == 0);  // Sym^2 fills all of weight 2

  auto R = model_algebra(RankVector({0}), 0);
  CHECK(extract_generators(R).total() == 0);
}

TEST_CASE("check_free accepts models and recovers the rank vector") {
  for (auto dd : {RankVector({1, 1}), RankVector({2}), RankVector({2, 1}), RankVector({1, 0, 1})}) {
    for (long k = dd.degree(); k <= 3; ++k) {
      auto A = model_algebra(dd, k);
      auto rep = check_free(A, k);
      CHECK(rep.free);
      CHECK(rep.generators.rank_vector() == dd);
      CHECK_FALSE(rep.witness.has_value());
    }
  }
}

TEST_CASE("check_free rejects R[y]/(y^2) at k = 2 with witness y^2") {
  // dims (1, 1, 0): the weight-2 component is gone
  std::map<Weight, AlgComponent> comps;
  comps[Weight(0)] = {1, {}};
  comps[Weight(1)] = {1, {}};
  comps[Weight(2)] = {0, {}};
  PresentedGradedAlgebra A(Weight(2), std::move(comps), {});
  auto rep = check_free(A, 2);
  CHECK_FALSE(rep.free);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.deficient_weight == Weight(2));
  CHECK(rep.witness->str() == "y^2");
}

TEST_CASE("freeness is invariant under graded basis change") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  auto B = conjugate(A, shear_basis_change());
  CHECK(B.validate().pass);
  auto rep = check_free(B, 2);
  CHECK(rep.free);
  CHECK(rep.generators.rank_vector() == RankVector({1, 1}));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    RankVector dd({1 + static_cast<long>(rng() % 2), static_cast<long>(rng() % 2)});
    long k = 3;
    auto M = model_algebra(dd, k);
    std::map<Weight, QMatrix> change;
    for (const auto& [w, comp] : M.components()) {
      if (w.is_zero()) continue;
      QMatrix m(comp.dim, comp.dim);
      do {
        for (int i = 0; i < comp.dim; ++i)
          for (int j = 0; j < comp.dim; ++j) m.at(i, j) = Rational(c(rng));
      } while (m.rank() < comp.dim);
      change[w] = m;
    }
    auto C = conjugate(M, change);
    CHECK(C.validate().pass);
    auto rep2 = check_free(C, k);
    CHECK(rep2.free);
    CHECK(rep2.generators.rank_vector() == dd);
  }
}

TEST_CASE("quotient by a product relation is rejected with a verified witness") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  // kill y^2 (first weight-2 basis vector)
  auto Q = quotient_by(A, Weight(2), {Rational(1), Rational(0)});
  CHECK(Q.validate().pass);
  CHECK(Q.dim(Weight(2)) == 1);
  auto rep = check_free(Q, 2);
  CHECK_FALSE(rep.free);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.deficient_weight == Weight(2));
  // witness evaluates to zero in Q by construction (verified inside
  // check_free); it is a nonzero polynomial in the extracted generators
  CHECK_FALSE(rep.witness->is_zero());
  CHECK(rep.witness->homogeneous_weight() == Weight(2));
}

TEST_CASE("iso_to_model") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  auto iso = iso_to_model(A, Weight(2));
  // the model is its own model: identity matrices
  for (const auto& [w, m] : iso.from_model) CHECK(m == QMatrix::identity(m.rows()));

  auto B = conjugate(A, shear_basis_change());
  auto iso_b = iso_to_model(B, Weight(2));  // throws if structure constants fail to carry over
  CHECK(iso_b.from_model.at(Weight(2)).rows() == 2);
  // round trip on coordinates
  for (const auto& [w, m] : iso_b.from_model) {
    CHECK(m.mul(iso_b.to_model.at(w)) == QMatrix::identity(m.rows()));
  }

  std::map<Weight, AlgComponent> comps;
  comps[Weight(0)] = {1, {}};
  comps[Weight(1)] = {1, {}};
  PresentedGradedAlgebra notfree(Weight(2), std::move(comps), {});
  CHECK_THROWS_AS(iso_to_model(notfree, Weight(2)), Error);
}

TEST_CASE("graded nilpotency: products of more than order factors vanish") {
  for (auto dd : {RankVector({2}), RankVector({1, 1})}) {
    for (long k = 2; k <= 3; ++k) {
      auto A = model_algebra(dd, k);
      long r = algebra_order(A);
      CHECK(r <= k);
      // any (r+1)-fold product of positive elements is zero: multiply basis
      // elements of weight >= 1 in all sequences of length r+1
      std::vector<std::pair<Weight, int>> positives;
      for (const auto& [w, c] : A.components())
        if (!w.is_zero())
          for (int i = 0; i < c.dim; ++i) positives.push_back({w, i});
      // sample the full product set when small
      for (const auto& [w1, i1] : positives)
        for (const auto& [w2, i2] : positives)
          for (const auto& [w3, i3] : positives)
            for (const auto& [w4, i4] : positives) {
              if (r + 1 > 4) continue;
              auto prod = A.mul(A.mul(A.basis_element(w1, i1), A.basis_element(w2, i2)),
                                A.mul(A.basis_element(w3, i3), A.basis_element(w4, i4)));
              if (r + 1 == 4) CHECK(PresentedGradedAlgebra::is_zero(prod));
            }
    }
  }
}

TEST_CASE("order equals the longest surviving monomial degree") {
  for (auto dd : {RankVector({1}), RankVector({2}), RankVector({0, 1}), RankVector({1, 1}),
                  RankVector({0, 0, 1}), RankVector({2, 1})}) {
    for (long k = 1; k <= 4; ++k) {
      auto tbl = VariableTable::canonical(dd);
      long longest = 0;
      for (long w = 0; w <= k; ++w)
        for (const auto& md : enumerate_monomials(tbl, Weight(w)))
          longest = std::max(longest, md.total_degree());
      CHECK(algebra_order(model_algebra(dd, k)) == longest);
    }
  }
}

TEST_CASE("weil weight: dim N/N^2 equals the generator count") {
  for (auto dd : {RankVector({1, 1}), RankVector({2, 1}), RankVector({3}), RankVector({1, 1, 1})}) {
    auto A = model_algebra(dd, dd.degree());
    CHECK(extract_generators(A).total() == dd.total());
  }
}

TEST_CASE("non-connected input is rejected") {
  std::map<Weight, AlgComponent> comps;
  comps[Weight(0)] = {2, {}};
  std::map<std::pair<Weight, Weight>, Tensor3> mu;
  Tensor3 t(2, 2, 2);
  t.at(0, 0, 0) = 1;
  t.at(0, 1, 1) = 1;
  t.at(1, 0, 1) = 1;
  t.at(1, 1, 1) = 1;
  mu[{Weight(0), Weight(0)}] = t;
  PresentedGradedAlgebra A(Weight(0), std::move(comps), std::move(mu));
  CHECK_FALSE(A.validate().pass);
  CHECK_THROWS_AS(extract_generators(A), Error);
  CHECK_THROWS_AS(check_free(A, 0), Error);
}

TEST_CASE("order above the bound is rejected") {
  auto A = model_algebra(RankVector({1}), 3);  // order 3
  CHECK_THROWS_AS(check_free(A, 2), Error);
}
