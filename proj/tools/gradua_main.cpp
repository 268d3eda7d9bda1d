// gradua: exact-arithmetic toolkit for graded spaces, Weil algebras,
// their duals and the rank-condition characterizations.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "gradua/coalgebra.hpp"
#include "gradua/io.hpp"
#include "gradua/selftest.hpp"
#include "gradua/space.hpp"

using namespace gradua;

namespace {

struct Outcome {
  int exit_code = 0;
  Json report;
};

Json violations_json(const std::vector<CocycleViolation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json e;
    e["via"] = v.via;
    if (!v.component.empty()) e["component"] = v.component;
    if (!v.detail.empty()) e["detail"] = v.detail;
    out.push_back(std::move(e));
  }
  return out;
}

Json poly_matrix_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json linear_transitions_json(const std::vector<SplitForm::LinearTransition>& ts) {
  Json out = Json::array();
  for (const auto& lt : ts) {
    Json e;
    e["from"] = lt.from;
    e["to"] = lt.to;
    Json blocks = Json::array();
    for (const auto& [w, m] : lt.blocks) {
      Json b;
      b["weight"] = w[0];
      b["matrix"] = poly_matrix_json(m);
      blocks.push_back(std::move(b));
    }
    e["blocks"] = std::move(blocks);
    out.push_back(std::move(e));
  }
  return out;
}

Outcome do_check_morphism(const std::string& space_arg, const std::string& map_arg) {
  SpecFile space_file = parse_spec(space_arg);
  TablePtr table = space_table_from_json(space_file.raw);
  SpecFile map_file = parse_spec(map_arg);
  Json map_json = map_file.raw;
  if (!map_json.contains("source")) map_json["source"] = table_to_json(table);
  if (!map_json.contains("target")) map_json["target"] = table_to_json(table);
  GradedPolyMap f = map_from_json(map_json);
  if (!f.source()->same_as(*table)) throw ParseError("map source does not match the space");
  auto symbolic = f.check_graded();
  auto pointwise = check_intertwines_pointwise(f);
  if (symbolic.pass != pointwise.pass) throw Error("internal: check routes disagree");
  Outcome out;
  out.report["pass"] = symbolic.pass;
  if (!symbolic.pass) {
    Json w;
    w["component"] = symbolic.violations.front().component;
    w["detail"] = symbolic.violations.front().detail;
    w["sample_t"] = rational_str(pointwise.t);
    out.report["witness"] = std::move(w);
    out.exit_code = 1;
  } else {
    out.report["witness"] = nullptr;
  }
  out.report["samples_checked"] = pointwise.samples_checked;
  return out;
}

Outcome do_dualize(const std::string& space_arg, const std::string& algebra_arg, long order) {
  Outcome out;
  if (!space_arg.empty()) {
    TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
    GradedSpace V(table);
    out.report["pass"] = true;
    out.report["dual"] = "graded polynomial algebra";
    out.report["generators"] = table_to_json(table);
    Json dims = Json::array();
    long top = order > 0 ? order : 6;
    GDualAlgebra dual = g_dual_space(V);
    for (long w = 0; w <= top; ++w) dims.push_back(dual.dimension(w));
    out.report["dims_by_weight"] = std::move(dims);
    if (order > 0) out.report["k_dual"] = algebra_to_json(k_dual_space_presented(V, order));
    out.report["witness"] = nullptr;
    return out;
  }
  PresentedGradedAlgebra A = algebra_from_json(parse_spec(algebra_arg).raw);
  long k = order > 0 ? order : A.truncation()[0];
  FreenessReport rep = check_free(A, k);
  if (!rep.free) {
    out.exit_code = 1;
    out.report["pass"] = false;
    Json w;
    w["relation"] = rep.witness->str();
    w["weight"] = (*rep.deficient_weight)[0];
    out.report["witness"] = std::move(w);
    return out;
  }
  GradedSpace V = k_alg_dual(A, k);
  out.report["pass"] = true;
  out.report["dual"] = "graded space";
  out.report["rank"] = rank_to_json(V.rank());
  out.report["coordinates"] = table_to_json(V.table());
  out.report["witness"] = nullptr;
  return out;
}

Outcome do_roundtrip(const std::string& space_arg, long order) {
  TablePtr table = space_table_from_json(parse_spec(space_arg).raw);
  GradedSpace V(table);
  auto rep = duality_roundtrip(V, order > 0 ? std::optional<long>(order) : std::nullopt);
  Outcome out;
  out.exit_code = rep.pass ? 0 : 1;
  out.report["pass"] = rep.pass;
  out.report["rank"] = rank_to_json(rep.rank);
  out.report["coordinate_identity"] = rep.coordinate_identity;
  out.report["h_equivariant"] = rep.h_equivariant;
  out.report["witness"] = rep.pass ? Json(nullptr) : Json(rep.detail);
  return out;
}

Outcome do_weil_check_free(const std::string& algebra_arg, long order) {
  PresentedGradedAlgebra A = algebra_from_json(parse_spec(algebra_arg).raw);
  long k = order > 0 ? order : A.truncation()[0];
  FreenessReport rep = check_free(A, k);
  Outcome out;
  out.exit_code = rep.free ? 0 : 1;
  out.report["pass"] = rep.free;
  if (rep.free) {
    out.report["rank"] = rank_to_json(rep.generators.rank_vector());
    out.report["witness"] = nullptr;
  } else {
    Json w;
    w["relation"] = rep.witness->str();
    w["weight"] = (*rep.deficient_weight)[0];
    out.report["witness"] = std::move(w);
  }
  Json dims = Json::array();
  for (const auto& [w, pair] : rep.dimension_table) {
    Json e;
    e["weight"] = w[0];
    e["dim"] = pair.first;
    e["model_dim"] = pair.second;
    dims.push_back(std::move(e));
  }
  out.report["dimension_table"] = std::move(dims);
  return out;
}

Outcome do_weil_generators(const std::string& algebra_arg) {
  PresentedGradedAlgebra A = algebra_from_json(parse_spec(algebra_arg).raw);
  GeneratorSpace gens = extract_generators(A);
  Outcome out;
  out.report["pass"] = true;
  Json gs = Json::array();
  for (const auto& [w, lifts] : gens.lifts) {
    for (size_t i = 0; i < lifts.size(); ++i) {
      Json e;
      e["weight"] = w[0];
      if (!gens.parities.at(w).empty())
        e["parity"] = gens.parities.at(w)[i] == Parity::Odd ? "odd" : "even";
      Json lift = Json::array();
      for (const auto& c : lifts[i]) lift.push_back(rational_str(c));
      e["lift"] = std::move(lift);
      gs.push_back(std::move(e));
    }
  }
  out.report["generators"] = std::move(gs);
  out.report["count"] = gens.total();
  out.report["witness"] = nullptr;
  return out;
}

Outcome do_coalg_comul(const std::string& algebra_arg, const std::string& element,
                       long max_weight) {
  TablePtr table = space_table_from_json(parse_spec(algebra_arg).raw);
  Multidegree md = dual_basis_element(table, element);
  long w = weight_of(md, *table).grading_key()[0];
  long bound = std::max(max_weight, w);
  GradedCoalgebra C = graded_dual(table, bound);
  Outcome out;
  out.report["pass"] = true;
  out.report["element"] = md.str(*table);
  Json terms = Json::array();
  for (const auto& t : C.comultiply(md)) {
    Json e;
    e["left"] = t.left.str(*table);
    e["right"] = t.right.str(*table);
    e["coeff"] = rational_str(t.coeff);
    terms.push_back(std::move(e));
  }
  out.report["terms"] = std::move(terms);
  out.report["witness"] = nullptr;
  return out;
}

Outcome do_coalg_axioms(const std::string& algebra_arg, long max_weight) {
  TablePtr table = space_table_from_json(parse_spec(algebra_arg).raw);
  GradedCoalgebra C = graded_dual(table, max_weight);
  auto rep = check_coalgebra_axioms(C);
  Outcome out;
  out.exit_code = rep.pass ? 0 : 1;
  out.report["pass"] = rep.pass;
  out.report["coassociative"] = rep.coassociative;
  out.report["cocommutative"] = rep.cocommutative;
  out.report["counit"] = rep.counit_ok;
  out.report["witness"] = rep.pass ? Json(nullptr) : Json(rep.detail);
  return out;
}

Outcome do_bundle_check(const std::string& atlas_arg) {
  GradedBundleAtlas atlas = atlas_from_json(parse_spec(atlas_arg).raw);
  auto rep = atlas.check_all();
  Outcome out;
  out.exit_code = rep.pass ? 0 : 1;
  out.report["pass"] = rep.pass;
  out.report["witness"] = rep.pass ? Json(nullptr) : violations_json(rep.violations);
  return out;
}

Outcome do_bundle_split(const std::string& atlas_arg) {
  GradedBundleAtlas atlas = atlas_from_json(parse_spec(atlas_arg).raw);
  SplitForm split = split_form(atlas);
  Outcome out;
  out.exit_code = split.cocycle_verified ? 0 : 1;
  out.report["pass"] = split.cocycle_verified;
  Json ranks = Json::array();
  for (long r : split.ranks) ranks.push_back(r);
  out.report["ranks"] = std::move(ranks);
  out.report["transitions"] = linear_transitions_json(split.transitions);
  out.report["witness"] = nullptr;
  return out;
}

Outcome do_bundle_dualize(const std::string& atlas_arg, long max_weight) {
  GradedBundleAtlas atlas = atlas_from_json(parse_spec(atlas_arg).raw);
  DualBundle dual = g_dual_bundle(atlas, max_weight);
  Outcome out;
  out.report["pass"] = true;
  Json dims = Json::array();
  for (const auto& [w, d] : dual.fiber_dims) dims.push_back(d);
  out.report["fiber_dims"] = std::move(dims);
  out.report["cocycle_verified"] = dual.cocycle.cocycle_verified;
  out.report["transitions"] = linear_transitions_json(dual.cocycle.transitions);
  out.report["witness"] = nullptr;
  return out;
}

Outcome do_characterize(const std::string& data_arg, long order) {
  SymAlgData data = symalg_from_json(parse_spec(data_arg).raw);
  long k = order > 0 ? order : data.order;
  DegreeKReport rep = check_degree_k(data, k);
  Outcome out;
  out.exit_code = rep.is_graded_bundle_data ? 0 : 1;
  out.report["pass"] = rep.is_graded_bundle_data;
  out.report["assoc_comm"] = rep.assoc.pass;
  out.report["free_verdict"] = rep.free_verdict;
  out.report["verdicts_agree"] = rep.verdicts_agree;
  if (rep.is_graded_bundle_data) {
    out.report["witness"] = nullptr;
  } else if (!rep.assoc.pass) {
    out.report["witness"] = rep.assoc.counterexample;
  } else if (rep.witness.has_value()) {
    Json w;
    w["relation"] = rep.witness->str();
    w["j"] = rep.failing_j;
    w["weight"] = (*rep.failing_weight)[0];
    out.report["witness"] = std::move(w);
  }
  if (data.order == 3 && rep.is_graded_bundle_data) {
    RankM12Report rk = rank_m12(data);
    Json r;
    r["brute_force"] = rk.brute_force_rank;
    r["rank_vector_formula"] = rk.rank_vector_formula;
    r["literal_formula"] = rk.literal_formula;
    out.report["m12_rank"] = std::move(r);
  }
  return out;
}

Outcome do_characterize_dvb(const std::string& data_arg) {
  DVBData d = dvb_from_json(parse_spec(data_arg).raw);
  DVBReport rep = check_dvb(d);
  Outcome out;
  out.exit_code = rep.accepted ? 0 : 1;
  out.report["pass"] = rep.accepted;
  Json core = Json::array();
  for (const auto& v : rep.core) {
    Json row = Json::array();
    for (const auto& c : v) row.push_back(rational_str(c));
    core.push_back(std::move(row));
  }
  out.report["core"] = std::move(core);
  out.report["core_dim"] = rep.core.size();
  out.report["rank_nullity_ok"] = rep.rank_nullity_ok;
  out.report["witness"] = rep.accepted ? Json(nullptr) : Json("tensor map is not injective");
  return out;
}

Outcome do_characterize_reconstruct(const std::string& data_arg, long order) {
  SymAlgData data = symalg_from_json(parse_spec(data_arg).raw);
  long k = order > 0 ? order : data.order;
  DegreeKReport check = check_degree_k(data, k);
  Outcome out;
  if (!check.is_graded_bundle_data) {
    out.exit_code = 1;
    out.report["pass"] = false;
    out.report["witness"] =
        check.witness.has_value() ? Json(check.witness->str()) : Json(check.assoc.counterexample);
    return out;
  }
  ReconstructionReport rep = reconstruct(data, k);
  out.exit_code = (rep.accepted && rep.structure_constants_recovered) ? 0 : 1;
  out.report["pass"] = rep.accepted && rep.structure_constants_recovered;
  out.report["rank"] = rank_to_json(rep.rank);
  out.report["fiber"] = table_to_json(rep.fiber_table);
  out.report["structure_constants_recovered"] = rep.structure_constants_recovered;
  out.report["witness"] = nullptr;
  return out;
}

Outcome do_super_check_n2(const std::string& data_arg) {
  NDeg2Data d = ndeg2_from_json(parse_spec(data_arg).raw);
  NDeg2Report rep = check_n_deg2(d);
  Outcome out;
  out.exit_code = rep.accepted ? 0 : 1;
  out.report["pass"] = rep.accepted;
  out.report["primal_injective"] = rep.primal_injective;
  out.report["dual_surjective"] = rep.dual_surjective;
  out.report["super_free_verdict"] = rep.super_free_verdict;
  out.report["verdicts_agree"] = rep.verdicts_agree;
  out.report["witness"] = rep.accepted ? Json(nullptr) : Json("wedge-square map is not injective");
  return out;
}

Outcome do_super_check_free(const std::string& algebra_arg, long order) {
  PresentedGradedAlgebra A = algebra_from_json(parse_spec(algebra_arg).raw);
  long k = order > 0 ? order : A.truncation()[0];
  FreenessReport rep = super_check_free(A, k);
  Outcome out;
  out.exit_code = rep.free ? 0 : 1;
  out.report["pass"] = rep.free;
  if (rep.free) {
    auto srv = rep.generators.super_rank_vector();
    Json even = Json::array(), odd = Json::array();
    for (long c : srv.even) even.push_back(c);
    for (long c : srv.odd) odd.push_back(c);
    Json r;
    r["even"] = std::move(even);
    r["odd"] = std::move(odd);
    out.report["rank"] = std::move(r);
    out.report["witness"] = nullptr;
  } else {
    Json w;
    w["relation"] = rep.witness->str();
    w["weight"] = (*rep.deficient_weight)[0];
    out.report["witness"] = std::move(w);
  }
  return out;
}

Outcome do_selftest(unsigned long seed) {
  auto results = run_selftest(seed);
  Outcome out;
  bool all = true;
  Json list = Json::array();
  for (const auto& r : results) {
    Json e;
    e["id"] = r.id;
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["cases"] = r.cases;
    e["detail"] = r.detail;
    list.push_back(std::move(e));
    all = all && r.pass;
  }
  out.report["pass"] = all;
  out.report["criteria"] = std::move(list);
  out.report["seed"] = seed;
  out.exit_code = all ? 0 : 1;
  return out;
}

void print_text(const Json& j, int indent = 0) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || v.is_array()) {
        std::cout << pad << k << ":\n";
        print_text(v, indent + 1);
      } else {
        std::cout << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                  << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        std::cout << pad << "-\n";
        print_text(v, indent + 1);
      } else {
        std::cout << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    std::cout << pad << j.dump() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact duality toolkit for graded bundles and Weil algebras"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string space_arg, map_arg, algebra_arg, atlas_arg, data_arg, element;
  long order = 0, max_weight = 6;
  unsigned long seed = selftest_seed_from_env();

  auto* space = app.add_subcommand("space", "graded space operations");
  space->require_subcommand(1);
  auto* check_morphism = space->add_subcommand("check-morphism", "verify a graded morphism");
  check_morphism->add_option("--space", space_arg, "space file or inline JSON")->required();
  check_morphism->add_option("--map", map_arg, "map file or inline JSON")->required();

  auto* dualize = app.add_subcommand("dualize", "dualize a space or an algebra");
  dualize->add_option("--space", space_arg, "space file");
  dualize->add_option("--algebra", algebra_arg, "algebra file");
  dualize->add_option("--order", order, "truncation order");

  auto* roundtrip = app.add_subcommand("roundtrip", "duality round trip report");
  roundtrip->add_option("--space", space_arg, "space file")->required();
  roundtrip->add_option("--order", order, "truncation order");

  auto* weil = app.add_subcommand("weil", "Weil algebra operations");
  weil->require_subcommand(1);
  auto* weil_free = weil->add_subcommand("check-free", "free graded Weil algebra test");
  weil_free->add_option("--algebra", algebra_arg, "algebra file")->required();
  weil_free->add_option("--order", order, "order bound");
  auto* weil_gens = weil->add_subcommand("generators", "homogeneous generator extraction");
  weil_gens->add_option("--algebra", algebra_arg, "algebra file")->required();

  auto* coalg = app.add_subcommand("coalg", "graded coalgebra operations");
  coalg->require_subcommand(1);
  auto* comul = coalg->add_subcommand("comul", "comultiplication of a dual basis element");
  comul->add_option("--algebra", algebra_arg, "polynomial algebra (space file)")->required();
  comul->add_option("--element", element, "dual basis element, e.g. Y[y,z]")->required();
  comul->add_option("--max-weight", max_weight, "computed weight bound");
  auto* axioms = coalg->add_subcommand("axioms", "coalgebra axiom check");
  axioms->add_option("--algebra", algebra_arg, "polynomial algebra (space file)")->required();
  axioms->add_option("--max-weight", max_weight, "computed weight bound");

  auto* bundle = app.add_subcommand("bundle", "graded bundle operations");
  bundle->require_subcommand(1);
  auto* bcheck = bundle->add_subcommand("check", "atlas checks: weights, inverses, cocycle");
  bcheck->add_option("--atlas", atlas_arg, "atlas file")->required();
  auto* bsplit = bundle->add_subcommand("split", "per-weight linear split form");
  bsplit->add_option("--atlas", atlas_arg, "atlas file")->required();
  auto* bdual = bundle->add_subcommand("dualize", "dual algebra bundle cocycle");
  bdual->add_option("--atlas", atlas_arg, "atlas file")->required();
  bdual->add_option("--max-weight", max_weight, "fiber algebra weight bound");

  auto* characterize = app.add_subcommand("characterize", "rank-condition characterizations");
  characterize->add_option("--data", data_arg, "symmetric algebra data file");
  characterize->add_option("--order", order, "degree bound k");
  auto* dvb = characterize->add_subcommand("dvb", "double vector bundle test");
  dvb->add_option("--data", data_arg, "DVB data file")->required();
  auto* recon = characterize->add_subcommand("reconstruct", "rebuild the graded space");
  recon->add_option("--data", data_arg, "symmetric algebra data file")->required();
  recon->add_option("--order", order, "degree bound k");

  auto* super = app.add_subcommand("super", "super-graded operations");
  super->require_subcommand(1);
  auto* n2 = super->add_subcommand("check-n2", "degree-2 N-manifold data test");
  n2->add_option("--data", data_arg, "N-manifold data file")->required();
  auto* sfree = super->add_subcommand("check-free", "super free Weil algebra test");
  sfree->add_option("--algebra", algebra_arg, "parity-tagged algebra file")->required();
  sfree->add_option("--order", order, "order bound");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance battery");
  selftest->add_option("--seed", seed, "seed for randomized properties");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  Outcome out;
  std::string command;
  try {
    if (check_morphism->parsed()) {
      command = "space check-morphism";
      out = do_check_morphism(space_arg, map_arg);
    } else if (dualize->parsed()) {
      command = "dualize";
      if (space_arg.empty() && algebra_arg.empty())
        throw ParseError("dualize needs --space or --algebra");
      out = do_dualize(space_arg, algebra_arg, order);
    } else if (roundtrip->parsed()) {
      command = "roundtrip";
      out = do_roundtrip(space_arg, order);
    } else if (weil_free->parsed()) {
      command = "weil check-free";
      out = do_weil_check_free(algebra_arg, order);
    } else if (weil_gens->parsed()) {
      command = "weil generators";
      out = do_weil_generators(algebra_arg);
    } else if (comul->parsed()) {
      command = "coalg comul";
      out = do_coalg_comul(algebra_arg, element, max_weight);
    } else if (axioms->parsed()) {
      command = "coalg axioms";
      out = do_coalg_axioms(algebra_arg, max_weight);
    } else if (bcheck->parsed()) {
      command = "bundle check";
      out = do_bundle_check(atlas_arg);
    } else if (bsplit->parsed()) {
      command = "bundle split";
      out = do_bundle_split(atlas_arg);
    } else if (bdual->parsed()) {
      command = "bundle dualize";
      out = do_bundle_dualize(atlas_arg, max_weight);
    } else if (dvb->parsed()) {
      command = "characterize dvb";
      out = do_characterize_dvb(data_arg);
    } else if (recon->parsed()) {
      command = "characterize reconstruct";
      out = do_characterize_reconstruct(data_arg, order);
    } else if (characterize->parsed()) {
      command = "characterize";
      if (data_arg.empty()) throw ParseError("characterize needs --data");
      out = do_characterize(data_arg, order);
    } else if (n2->parsed()) {
      command = "super check-n2";
      out = do_super_check_n2(data_arg);
    } else if (sfree->parsed()) {
      command = "super check-free";
      out = do_super_check_free(algebra_arg, order);
    } else if (selftest->parsed()) {
      command = "selftest";
      out = do_selftest(seed);
    } else {
      std::cerr << app.help() << "\n";
      return 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Json report;
  report["command"] = command;
  for (const auto& [k, v] : out.report.items()) report[k] = v;
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    print_text(report);
    std::cout << "elapsed_ms: " << elapsed << "\n";
  }
  return out.exit_code;
}
