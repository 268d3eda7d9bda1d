// Python bindings: the main operations behind a JSON-string surface plus a
// few direct helpers. Structured results come back as JSON text; the
// package wrapper turns them into dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gradua/coalgebra.hpp"
#include "gradua/io.hpp"
#include "gradua/selftest.hpp"
#include "gradua/space.hpp"

namespace py = pybind11;
using namespace gradua;

namespace {

std::string check_morphism(const std::string& space_arg, const std::string& map_arg) {
  TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
  Json map_json = parse_spec(map_arg).raw;
  if (!map_json.contains("source")) map_json["source"] = table_to_json(table);
  if (!map_json.contains("target")) map_json["target"] = table_to_json(table);
  GradedPolyMap f = map_from_json(map_json);
  auto symbolic = f.check_graded();
  auto pointwise = check_intertwines_pointwise(f);
  Json out;
  out["pass"] = symbolic.pass;
  out["pointwise_pass"] = pointwise.pass;
  if (!symbolic.pass) out["detail"] = symbolic.violations.front().detail;
  return out.dump();
}

std::string dualize_space(const std::string& space_arg, long order) {
  TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
  GradedSpace V(table);
  Json out;
  out["generators"] = table_to_json(table);
  Json dims = Json::array();
  GDualAlgebra dual = g_dual_space(V);
  for (long w = 0; w <= std::max(order, 6L); ++w) dims.push_back(dual.dimension(w));
  out["dims_by_weight"] = std::move(dims);
  if (order > 0) out["k_dual"] = algebra_to_json(k_dual_space_presented(V, order));
  return out.dump();
}

std::string weil_check_free(const std::string& algebra_arg, long order) {
  PresentedGradedAlgebra A = algebra_from_json(parse_spec(algebra_arg).raw);
  long k = order > 0 ? order : A.truncation()[0];
  FreenessReport rep = check_free(A, k);
  Json out;
  out["free"] = rep.free;
  if (rep.free) {
    out["rank"] = rank_to_json(rep.generators.rank_vector());
  } else {
    out["witness"] = rep.witness->str();
    out["deficient_weight"] = (*rep.deficient_weight)[0];
  }
  return out.dump();
}

std::string comultiply(const std::string& space_arg, const std::string& element, long max_weight) {
  TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
  Multidegree md = dual_basis_element(table, element);
  long bound = std::max(max_weight, weight_of(md, *table).grading_key()[0]);
  GradedCoalgebra C = graded_dual(table, bound);
  Json terms = Json::array();
  for (const auto& t : C.comultiply(md)) {
    Json e;
    e["left"] = t.left.str(*table);
    e["right"] = t.right.str(*table);
    e["coeff"] = rational_str(t.coeff);
    terms.push_back(std::move(e));
  }
  return terms.dump();
}

std::string characterize(const std::string& data_arg, long order) {
  SymAlgData data = symalg_from_json(parse_spec(data_arg).raw);
  DegreeKReport rep = check_degree_k(data, order > 0 ? order : data.order);
  Json out;
  out["accepted"] = rep.is_graded_bundle_data;
  out["free_verdict"] = rep.free_verdict;
  out["verdicts_agree"] = rep.verdicts_agree;
  if (rep.witness.has_value()) out["witness"] = rep.witness->str();
  return out.dump();
}

std::string characterize_dvb(const std::string& data_arg) {
  DVBReport rep = check_dvb(dvb_from_json(parse_spec(data_arg).raw));
  Json out;
  out["accepted"] = rep.accepted;
  out["core_dim"] = rep.core.size();
  out["rank_nullity_ok"] = rep.rank_nullity_ok;
  return out.dump();
}

std::string super_check_n2(const std::string& data_arg) {
  NDeg2Report rep = check_n_deg2(ndeg2_from_json(parse_spec(data_arg).raw));
  Json out;
  out["accepted"] = rep.accepted;
  out["super_free_verdict"] = rep.super_free_verdict;
  out["verdicts_agree"] = rep.verdicts_agree;
  return out.dump();
}

std::string bundle_check(const std::string& atlas_arg) {
  GradedBundleAtlas atlas = atlas_from_json(parse_spec(atlas_arg).raw);
  auto rep = atlas.check_all();
  Json out;
  out["pass"] = rep.pass;
  Json vs = Json::array();
  for (const auto& v : rep.violations) vs.push_back(v.via + ": " + v.detail);
  out["violations"] = std::move(vs);
  return out.dump();
}

std::string roundtrip(const std::string& space_arg, long order) {
  TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
  auto rep = duality_roundtrip(GradedSpace(table),
                               order > 0 ? std::optional<long>(order) : std::nullopt);
  Json out;
  out["pass"] = rep.pass;
  out["rank"] = rank_to_json(rep.rank);
  return out.dump();
}

std::string selftest(unsigned long seed) {
  Json out = Json::array();
  for (const auto& r : run_selftest(seed)) {
    Json e;
    e["id"] = r.id;
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["cases"] = r.cases;
    out.push_back(std::move(e));
  }
  return out.dump();
}

std::string poly_product(const std::string& space_arg, const std::string& p, const std::string& q) {
  TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
  return (parse_polynomial(table, p) * parse_polynomial(table, q)).str();
}

std::optional<long> poly_degree(const std::string& space_arg, const std::string& p) {
  TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
  auto w = parse_polynomial(table, p).euler_degree();
  if (!w) return std::nullopt;
  return (*w)[0];
}

}  // namespace

PYBIND11_MODULE(_gradua, m) {
  m.doc() = "exact duality toolkit for graded bundles and Weil algebras";
  m.def("check_morphism", &check_morphism, py::arg("space"), py::arg("map"));
  m.def("dualize_space", &dualize_space, py::arg("space"), py::arg("order") = 0);
  m.def("check_free", &weil_check_free, py::arg("algebra"), py::arg("order") = 0);
  m.def("comultiply", &comultiply, py::arg("space"), py::arg("element"),
        py::arg("max_weight") = 6);
  m.def("characterize", &characterize, py::arg("data"), py::arg("order") = 0);
  m.def("characterize_dvb", &characterize_dvb, py::arg("data"));
  m.def("check_n2", &super_check_n2, py::arg("data"));
  m.def("bundle_check", &bundle_check, py::arg("atlas"));
  m.def("roundtrip", &roundtrip, py::arg("space"), py::arg("order") = 0);
  m.def("selftest", &selftest, py::arg("seed") = 20240717ul);
  m.def("poly_product", &poly_product, py::arg("space"), py::arg("p"), py::arg("q"));
  m.def("poly_degree", &poly_degree, py::arg("space"), py::arg("p"));
  m.def(
      "component_dimension",
      [](const std::vector<long>& dd, long w) { return component_dimension(RankVector(dd), w); },
      py::arg("rank"), py::arg("weight"));
  py::register_exception<ParseError>(m, "InputError");
  py::register_exception<Error>(m, "GraduaError");
}
