#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gradua/io.hpp"

using namespace gradua;

TEST_CASE("table json round trip") {
  auto tbl = VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}});
  auto back = table_from_json(table_to_json(tbl));
  CHECK(back->same_as(*tbl));

  auto super = VariableTable::make(
      {{"y", Weight(1).set_parity(Parity::Even)}, {"th", Weight(1).set_parity(Parity::Odd)}});
  CHECK(table_from_json(table_to_json(super))->is_super());

  CHECK_THROWS_AS(table_from_json(Json::parse(R"([{"name":"y","weight":[-1]}])")), Error);
  CHECK_THROWS_AS(table_from_json(Json::parse(R"([{"name":"y"}])")), ParseError);
}

TEST_CASE("space table forms") {
  CHECK(space_table_from_json(Json::parse(R"({"rank":[1,1]})"))->size() == 2);
  CHECK(space_table_from_json(Json::parse(R"({"rank":{"even":[1],"odd":[1]}})"))->is_super());
  auto t = space_table_from_json(
      Json::parse(R"({"table":[{"name":"a","weight":[3]}]})"));
  CHECK(t->var(0).weight == Weight(3));
  CHECK_THROWS_AS(space_table_from_json(Json::parse(R"({"rank":[-1]})")), ParseError);
}

TEST_CASE("polynomial json forms") {
  auto tbl = VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}});
  CHECK(poly_from_json(tbl, Json("3/2*y^2 - z")) ==
        parse_polynomial(tbl, "3/2*y^2 - z"));
  Json terms = Json::parse(R"([{"coeff":"3/2","powers":{"y":2}},{"coeff":"-1","powers":{"z":1}}])");
  CHECK(poly_from_json(tbl, terms) == parse_polynomial(tbl, "3/2*y^2 - z"));
  CHECK(poly_from_json(tbl, Json(7)) == parse_polynomial(tbl, "7"));
}

TEST_CASE("map json") {
  Json j = Json::parse(R"({
    "source": {"rank": [1, 1]},
    "target": {"rank": [1, 1]},
    "components": {"y": "y", "z": "z + y^2"}
  })");
  GradedPolyMap f = map_from_json(j);
  CHECK(f.check_graded().pass);
  GradedPolyMap g = map_from_json(map_to_json(f));
  CHECK(f == g);
}

TEST_CASE("algebra json round trip") {
  auto A = model_algebra(RankVector({1, 1}), 2);
  Json j = algebra_to_json(A);
  CHECK(j.at("dims") == Json::parse("[1,1,2]"));
  PresentedGradedAlgebra B = algebra_from_json(j);
  for (const auto& [w, c] : A.components()) {
    CHECK(B.dim(w) == c.dim);
    for (const auto& [w2, c2] : A.components()) {
      Weight sum = w + w2;
      if (!sum.within(A.truncation())) continue;
      CHECK(A.mu(w, w2) == B.mu(w, w2));
    }
  }
  // serialization is deterministic
  CHECK(algebra_to_json(B).dump() == j.dump());

  // super algebra with parity lists
  Json sj = Json::parse(R"({
    "order": 2, "dims": [1, 2, 1],
    "parity": [["even"], ["odd", "odd"], ["even"]],
    "mu": [{"i": 1, "j": 1, "tensor": [[["0"], ["1"]], [["-1"], ["0"]]]}]
  })");
  PresentedGradedAlgebra S = algebra_from_json(sj);
  CHECK(S.is_super());
  CHECK(S.validate().pass);

  // invalid algebras are rejected at parse time
  Json bad = Json::parse(R"({"order": 1, "dims": [2, 1], "mu": []})");
  CHECK_THROWS_AS(algebra_from_json(bad), ParseError);
}

TEST_CASE("bi-graded algebra json") {
  Json j = Json::parse(R"({
    "kind": "algebra",
    "truncation": [1, 1],
    "components": [
      {"weight": [1, 0], "dim": 1},
      {"weight": [0, 1], "dim": 1},
      {"weight": [1, 1], "dim": 1}
    ],
    "mu": [{"w1": [1, 0], "w2": [0, 1], "tensor": [[["1"]]]}]
  })");
  PresentedGradedAlgebra A = algebra_from_json(j);
  CHECK(A.truncation() == Weight{1, 1});
  CHECK(check_free(A, Weight{1, 1}).free);
}

TEST_CASE("symalg, dvb and ndeg2 json") {
  Json sj = Json::parse(R"({
    "order": 2, "dims": [1, 1],
    "m": [{"i": 1, "j": 1, "tensor": [[["1"]]]}]
  })");
  SymAlgData data = symalg_from_json(sj);
  CHECK(data.order == 2);
  CHECK(data.dim(1) == 1);

  Json dj = Json::parse(R"({"dims": [1, 1, 2], "map": [["1"], ["0"]]})");
  DVBData d = dvb_from_json(dj);
  CHECK(d.dim_e11 == 2);
  CHECK_THROWS_AS(dvb_from_json(Json::parse(R"({"dims": [1, 1], "map": []})")), ParseError);

  Json nj = Json::parse(R"({"odd_dim": 2, "even_dim": 1, "m": [["1"]]})");
  NDeg2Data n = ndeg2_from_json(nj);
  CHECK(n.m.at(0, 1, 0) == 1);
  CHECK(n.m.at(1, 0, 0) == -1);
}

TEST_CASE("atlas json") {
  Json j = Json::parse(R"({
    "charts": [
      {"id": "U", "base": [{"name": "x", "weight": [0]}]},
      {"id": "V", "base": [{"name": "x", "weight": [0]}]}
    ],
    "fiber": [{"name": "y", "weight": [1]}, {"name": "z", "weight": [2]}],
    "transitions": [
      {"from": "V", "to": "U", "components": {"x": "x", "y": "y", "z": "z + x*y^2"}},
      {"from": "U", "to": "V", "components": {"x": "x", "y": "y", "z": "z - x*y^2"}}
    ]
  })");
  GradedBundleAtlas atlas = atlas_from_json(j);
  CHECK(atlas.check_all().pass);
  CHECK_THROWS_AS(atlas_from_json(Json::parse(R"({"charts": []})")), Error);

  // split base_map/fiber_map form with a declared inverse
  Json j2 = Json::parse(R"({
    "charts": [
      {"id": "U", "base": [{"name": "x", "weight": [0]}]},
      {"id": "V", "base": [{"name": "x", "weight": [0]}]}
    ],
    "fiber": [{"name": "y", "weight": [1]}, {"name": "z", "weight": [2]}],
    "transitions": [
      {"from": "V", "to": "U",
       "base_map": {"x": "x"},
       "fiber_map": {"y": "2*y", "z": "z + x*y^2"},
       "inverse": {"base_map": {"x": "x"},
                   "fiber_map": {"y": "1/2*y", "z": "z - 1/4*x*y^2"}}}
    ]
  })");
  GradedBundleAtlas atlas2 = atlas_from_json(j2);
  CHECK(atlas2.transitions().size() == 2);
  CHECK(atlas2.check_all().pass);
}

TEST_CASE("morphism json round trip") {
  Json j = Json::parse(R"({
    "kind": "zakrzewski",
    "domain_base": [{"name": "t", "weight": [0]}],
    "codomain_base": [{"name": "s", "weight": [0]}],
    "base_map": {"s": "t^2 + 1"},
    "blocks": [{"weight": [1], "matrix": [["t", "0"], ["1", "3"]]}]
  })");
  ZakrzewskiMorphism zm = zm_from_json(j);
  CHECK(zm.rep.blocks.at(Weight(1)).rows() == 2);
  ZakrzewskiMorphism back = zm_from_json(zm_to_json(zm));
  CHECK(back == zm);
  StandardMorphism sm = dualize_zm(zm);
  StandardMorphism sm_back = std_from_json(std_to_json(sm));
  CHECK(sm_back == sm);
}

TEST_CASE("dual basis element syntax") {
  auto tbl = VariableTable::make({{"y", Weight(1)}, {"z", Weight(2)}});
  CHECK(dual_basis_element(tbl, "Y[y,z]") == Multidegree({{0, 1}, {1, 1}}));
  CHECK(dual_basis_element(tbl, "Y[y, y]") == Multidegree::single(0, 2));
  CHECK(dual_basis_element(tbl, "Y[]").is_unit());
  CHECK_THROWS_AS(dual_basis_element(tbl, "Y[w]"), ParseError);
  CHECK_THROWS_AS(dual_basis_element(tbl, "nonsense"), ParseError);
}

TEST_CASE("spec parsing and version checks") {
  SpecFile f = parse_spec(R"({"rank": [1, 1]})");
  CHECK(f.kind == "space");
  CHECK(parse_spec(R"({"kind": "algebra", "order": 0, "dims": [1]})").kind == "algebra");
  CHECK(parse_spec(R"({"charts": [], "fiber": []})").kind == "atlas");
  CHECK(parse_spec(R"({"components": {"y": "y"}})").kind == "map");
  CHECK(parse_spec(R"({"odd_dim": 1, "even_dim": 0})").kind == "ndeg2");
  CHECK_THROWS_AS(parse_spec(R"({"version": 2, "rank": [1]})"), ParseError);
  CHECK_THROWS_AS(parse_spec(R"({"rank": )"), ParseError);
  CHECK_THROWS_AS(parse_spec("/does/not/exist.json"), ParseError);
  CHECK_THROWS_AS(parse_spec(R"({"mystery": 1})"), ParseError);
}
