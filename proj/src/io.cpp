#include "gradua/io.hpp"

#include <fstream>

namespace gradua {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

Weight weight_from_json(const Json& j, const Json* parity) {
  Weight w;
  if (j.is_number_integer()) {
    w = Weight(j.get<long>());
  } else if (j.is_array()) {
    std::vector<long> comps;
    for (const auto& c : j) {
      if (!c.is_number_integer()) bad("weight", "components must be integers");
      comps.push_back(c.get<long>());
    }
    if (comps.empty()) bad("weight", "needs at least one component");
    w = Weight::of_arity(static_cast<int>(comps.size()));
    for (size_t i = 0; i < comps.size(); ++i) w[static_cast<int>(i)] = comps[i];
  } else {
    bad("weight", "must be an integer or an array of integers");
  }
  if (!w.nonnegative()) bad("weight", "negative weight");
  if (parity) {
    std::string p = parity->get<std::string>();
    if (p == "even")
      w.set_parity(Parity::Even);
    else if (p == "odd")
      w.set_parity(Parity::Odd);
    else
      bad("parity", "must be \"even\" or \"odd\"");
  }
  return w;
}

Json weight_to_json(const Weight& w) {
  Json arr = Json::array();
  for (int i = 0; i < w.arity(); ++i) arr.push_back(w[i]);
  return arr;
}

}  // namespace

Json table_to_json(const TablePtr& table) {
  Json out = Json::array();
  for (const auto& v : table->vars()) {
    Json e;
    e["name"] = v.name;
    e["weight"] = weight_to_json(v.weight);
    if (auto p = v.weight.parity()) e["parity"] = (*p == Parity::Odd) ? "odd" : "even";
    out.push_back(std::move(e));
  }
  return out;
}

TablePtr table_from_json(const Json& j, bool allow_weight_zero) {
  if (!j.is_array()) bad("table", "must be an array of variables");
  std::vector<Variable> vars;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("name") || !e.contains("weight"))
      bad("table", "each variable needs name and weight");
    const Json* parity = e.contains("parity") ? &e.at("parity") : nullptr;
    vars.push_back({e.at("name").get<std::string>(), weight_from_json(e.at("weight"), parity)});
  }
  return VariableTable::make(std::move(vars), allow_weight_zero);
}

Json rank_to_json(const RankVector& dd) {
  Json out = Json::array();
  for (long c : dd.counts()) out.push_back(c);
  return out;
}

TablePtr space_table_from_json(const Json& j) {
  if (j.contains("table")) return table_from_json(j.at("table"));
  if (!j.contains("rank")) bad("space", "needs rank or table");
  const Json& r = j.at("rank");
  if (r.is_array()) {
    std::vector<long> counts;
    for (const auto& c : r) {
      if (!c.is_number_integer() || c.get<long>() < 0) bad("rank", "counts are naturals");
      counts.push_back(c.get<long>());
    }
    return VariableTable::canonical(RankVector(counts));
  }
  if (r.is_object() && r.contains("even") && r.contains("odd")) {
    SuperRankVector dd;
    for (const auto& c : r.at("even")) dd.even.push_back(c.get<long>());
    for (const auto& c : r.at("odd")) dd.odd.push_back(c.get<long>());
    return VariableTable::canonical_super(dd);
  }
  bad("rank", "must be a list of naturals or {even, odd}");
}

Json poly_to_json(const GradedPolynomial& p) { return Json(p.str()); }

GradedPolynomial poly_from_json(const TablePtr& table, const Json& j) {
  if (j.is_string()) return parse_polynomial(table, j.get<std::string>());
  if (j.is_number_integer()) return GradedPolynomial::constant(table, Rational(j.get<long>()));
  if (j.is_array()) {
    GradedPolynomial p(table);
    for (const auto& term : j) {
      if (!term.is_object() || !term.contains("coeff")) bad("polynomial", "term needs coeff");
      Rational c = parse_rational(term.at("coeff").is_string()
                                      ? term.at("coeff").get<std::string>()
                                      : std::to_string(term.at("coeff").get<long>()));
      std::vector<std::pair<int, int>> entries;
      if (term.contains("powers")) {
        for (const auto& [name, exp] : term.at("powers").items()) {
          int idx = table->index_of(name);
          if (idx < 0) bad("polynomial", "unknown variable " + name);
          entries.push_back({idx, exp.get<int>()});
        }
      }
      p = p + GradedPolynomial::monomial(table, Multidegree(entries), c);
    }
    return p;
  }
  bad("polynomial", "must be a string or a term array");
}

GradedPolyMap map_from_json(const Json& j) {
  if (!j.contains("source") || !j.contains("target") || !j.contains("components"))
    bad("map", "needs source, target and components");
  TablePtr src = j.at("source").is_array() ? table_from_json(j.at("source"))
                                           : space_table_from_json(j.at("source"));
  TablePtr tgt = j.at("target").is_array() ? table_from_json(j.at("target"))
                                           : space_table_from_json(j.at("target"));
  std::vector<GradedPolynomial> comps(static_cast<size_t>(tgt->size()), GradedPolynomial(src));
  for (const auto& [name, value] : j.at("components").items()) {
    int idx = tgt->index_of(name);
    if (idx < 0) bad("map", "component for unknown target variable " + name);
    comps[static_cast<size_t>(idx)] = poly_from_json(src, value);
  }
  return GradedPolyMap(src, tgt, std::move(comps));
}

Json map_to_json(const GradedPolyMap& f) {
  Json out;
  out["kind"] = "map";
  out["source"] = table_to_json(f.source());
  out["target"] = table_to_json(f.target());
  Json comps;
  for (int v = 0; v < f.target()->size(); ++v)
    comps[f.target()->var(v).name] = f.component(v).str();
  out["components"] = std::move(comps);
  return out;
}

Tensor3 tensor_from_json(const Json& j) {
  if (!j.is_array()) bad("tensor", "must be a 3-level array");
  int na = static_cast<int>(j.size());
  int nb = na > 0 ? static_cast<int>(j.at(0).size()) : 0;
  int nc = (na > 0 && nb > 0) ? static_cast<int>(j.at(0).at(0).size()) : 0;
  Tensor3 t(na, nb, nc);
  for (int a = 0; a < na; ++a) {
    if (static_cast<int>(j.at(a).size()) != nb) bad("tensor", "ragged second axis");
    for (int b = 0; b < nb; ++b) {
      const Json& row = j.at(a).at(b);
      if (static_cast<int>(row.size()) != nc) bad("tensor", "ragged third axis");
      for (int c = 0; c < nc; ++c) {
        const Json& e = row.at(c);
        t.at(a, b, c) = e.is_string() ? parse_rational(e.get<std::string>())
                                      : Rational(e.get<long>());
      }
    }
  }
  return t;
}

Json tensor_to_json(const Tensor3& t) {
  Json out = Json::array();
  for (int a = 0; a < t.na(); ++a) {
    Json plane = Json::array();
    for (int b = 0; b < t.nb(); ++b) {
      Json row = Json::array();
      for (int c = 0; c < t.nc(); ++c) row.push_back(rational_str(t.at(a, b, c)));
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

QMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("matrix", "must be an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols) bad("matrix", "ragged rows");
    for (int c = 0; c < cols; ++c) {
      const Json& e = j.at(i).at(c);
      m.at(i, c) = e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>());
    }
  }
  return m;
}

Json matrix_to_json(const QMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j2 = 0; j2 < m.cols(); ++j2) row.push_back(rational_str(m.at(i, j2)));
    out.push_back(std::move(row));
  }
  return out;
}

PresentedGradedAlgebra algebra_from_json(const Json& j) {
  std::map<Weight, AlgComponent> comps;
  Weight bound;
  if (j.contains("dims")) {
    // scalar grading: dims = [n_0 .. n_k]
    const Json& dims = j.at("dims");
    if (!dims.is_array() || dims.empty()) bad("algebra", "dims must be a nonempty array");
    long k = j.contains("order") ? j.at("order").get<long>()
                                 : static_cast<long>(dims.size()) - 1;
    if (k + 1 != static_cast<long>(dims.size())) bad("algebra", "dims must list n_0..n_order");
    bound = Weight(k);
    for (long w = 0; w <= k; ++w) {
      AlgComponent c;
      c.dim = dims.at(static_cast<size_t>(w)).get<int>();
      if (c.dim < 0) bad("algebra", "negative dimension");
      comps[Weight(w)] = std::move(c);
    }
    if (j.contains("parity")) {
      const Json& par = j.at("parity");
      if (static_cast<long>(par.size()) != k + 1) bad("algebra", "parity needs one list per weight");
      for (long w = 0; w <= k; ++w) {
        auto& c = comps[Weight(w)];
        for (const auto& p : par.at(static_cast<size_t>(w))) {
          std::string s = p.get<std::string>();
          if (s != "even" && s != "odd") bad("algebra", "parity entries are even|odd");
          c.parity.push_back(s == "odd" ? Parity::Odd : Parity::Even);
        }
        if (static_cast<int>(c.parity.size()) != c.dim)
          bad("algebra", "parity list length differs from the dimension");
      }
    }
  } else if (j.contains("components")) {
    // tuple grading: components = [{weight, dim}], truncation = [k, l]
    if (!j.contains("truncation")) bad("algebra", "tuple-graded algebras need a truncation");
    bound = weight_from_json(j.at("truncation"), nullptr);
    for (const auto& e : j.at("components")) {
      Weight w = weight_from_json(e.at("weight"), nullptr);
      AlgComponent c;
      c.dim = e.at("dim").get<int>();
      comps[w] = std::move(c);
    }
  } else {
    bad("algebra", "needs dims or components");
  }
  std::map<std::pair<Weight, Weight>, Tensor3> mu;
  if (j.contains("mu")) {
    for (const auto& e : j.at("mu")) {
      Weight w1, w2;
      if (e.contains("i")) {
        w1 = Weight(e.at("i").get<long>());
        w2 = Weight(e.at("j").get<long>());
      } else {
        w1 = weight_from_json(e.at("w1"), nullptr);
        w2 = weight_from_json(e.at("w2"), nullptr);
      }
      mu[{w1, w2}] = tensor_from_json(e.at("tensor"));
    }
  }
  PresentedGradedAlgebra A(bound, std::move(comps), std::move(mu));
  auto rep = A.validate();
  if (!rep.pass) bad("algebra", rep.violations.front().what);
  return A;
}

Json algebra_to_json(const PresentedGradedAlgebra& A) {
  Json out;
  out["kind"] = "algebra";
  if (A.truncation().arity() == 1) {
    long k = A.truncation()[0];
    out["order"] = k;
    Json dims = Json::array();
    for (long w = 0; w <= k; ++w) dims.push_back(A.dim(Weight(w)));
    out["dims"] = std::move(dims);
    if (A.is_super()) {
      Json par = Json::array();
      for (long w = 0; w <= k; ++w) {
        Json row = Json::array();
        const AlgComponent* c = A.component(Weight(w));
        for (int i = 0; c && i < c->dim; ++i)
          row.push_back(c->parity_of(i) == Parity::Odd ? "odd" : "even");
        par.push_back(std::move(row));
      }
      out["parity"] = std::move(par);
    }
    Json mu = Json::array();
    for (long i = 1; i <= k; ++i)
      for (long jw = i; i + jw <= k; ++jw) {
        const Tensor3& t = A.mu(Weight(i), Weight(jw));
        if (t.nc() == 0) continue;
        Json e;
        e["i"] = i;
        e["j"] = jw;
        e["tensor"] = tensor_to_json(t);
        mu.push_back(std::move(e));
      }
    out["mu"] = std::move(mu);
  } else {
    out["truncation"] = weight_to_json(A.truncation());
    Json cs = Json::array();
    for (const auto& [w, c] : A.components()) {
      if (w.is_zero()) continue;
      Json e;
      e["weight"] = weight_to_json(w);
      e["dim"] = c.dim;
      cs.push_back(std::move(e));
    }
    out["components"] = std::move(cs);
    Json mu = Json::array();
    for (const auto& [w1, c1] : A.components())
      for (const auto& [w2, c2] : A.components()) {
        if (w1.is_zero() || w2.is_zero()) continue;
        Weight sum = w1 + w2;
        if (!sum.within(A.truncation())) continue;
        const Tensor3& t = A.mu(w1, w2);
        if (t.nc() == 0) continue;
        Json e;
        e["w1"] = weight_to_json(w1);
        e["w2"] = weight_to_json(w2);
        e["tensor"] = tensor_to_json(t);
        mu.push_back(std::move(e));
      }
    out["mu"] = std::move(mu);
  }
  return out;
}

SymAlgData symalg_from_json(const Json& j) {
  SymAlgData out;
  if (!j.contains("order") || !j.contains("dims")) bad("symalg", "needs order and dims");
  out.order = j.at("order").get<long>();
  for (const auto& d : j.at("dims")) out.dims.push_back(d.get<long>());
  if (static_cast<long>(out.dims.size()) != out.order)
    bad("symalg", "dims must list E^1..E^order");
  if (j.contains("m")) {
    for (const auto& e : j.at("m")) {
      long i = e.at("i").get<long>();
      long jj = e.at("j").get<long>();
      out.m[{i, jj}] = tensor_from_json(e.at("tensor"));
    }
  }
  return out;
}

DVBData dvb_from_json(const Json& j) {
  DVBData out;
  if (!j.contains("dims") || j.at("dims").size() != 3) bad("dvb", "dims must be [e10, e01, e11]");
  out.dim_e10 = j.at("dims").at(0).get<long>();
  out.dim_e01 = j.at("dims").at(1).get<long>();
  out.dim_e11 = j.at("dims").at(2).get<long>();
  out.map = matrix_from_json(j.at("map"));
  if (out.map.rows() != static_cast<int>(out.dim_e11) ||
      out.map.cols() != static_cast<int>(out.dim_e10 * out.dim_e01))
    bad("dvb", "map must be dim_e11 x (dim_e10 * dim_e01)");
  return out;
}

NDeg2Data ndeg2_from_json(const Json& j) {
  NDeg2Data out;
  if (!j.contains("odd_dim") || !j.contains("even_dim")) bad("ndeg2", "needs odd_dim and even_dim");
  out.odd_dim = j.at("odd_dim").get<long>();
  out.even_dim = j.at("even_dim").get<long>();
  out.m = Tensor3(static_cast<int>(out.odd_dim), static_cast<int>(out.odd_dim),
                  static_cast<int>(out.even_dim));
  if (j.contains("m")) {
    // upper triangle rows, pairs (i, j) with i < j in lexicographic order
    const Json& rows = j.at("m");
    size_t expect = static_cast<size_t>(out.odd_dim * (out.odd_dim - 1) / 2);
    if (rows.size() != expect) bad("ndeg2", "m must list one row per pair i<j");
    size_t r = 0;
    for (int a = 0; a < out.odd_dim; ++a)
      for (int b = a + 1; b < out.odd_dim; ++b, ++r) {
        const Json& row = rows.at(r);
        if (static_cast<long>(row.size()) != out.even_dim)
          bad("ndeg2", "each m row has even_dim entries");
        for (int c = 0; c < out.even_dim; ++c) {
          Rational v = row.at(static_cast<size_t>(c)).is_string()
                           ? parse_rational(row.at(static_cast<size_t>(c)).get<std::string>())
                           : Rational(row.at(static_cast<size_t>(c)).get<long>());
          out.m.at(a, b, c) = v;
          out.m.at(b, a, c) = -v;
        }
      }
  }
  return out;
}

GradedBundleAtlas atlas_from_json(const Json& j) {
  if (!j.contains("charts") || !j.contains("fiber")) bad("atlas", "needs charts and fiber");
  std::vector<Chart> charts;
  for (const auto& c : j.at("charts")) {
    if (!c.contains("id")) bad("atlas", "chart needs an id");
    TablePtr base = c.contains("base") ? table_from_json(c.at("base"), true)
                                       : VariableTable::make({}, true);
    charts.push_back({c.at("id").get<std::string>(), base});
  }
  TablePtr fiber = j.at("fiber").is_array() ? table_from_json(j.at("fiber"))
                                            : space_table_from_json(j.at("fiber"));
  std::vector<Transition> transitions;
  auto combined_of = [&](const std::string& id) -> TablePtr {
    for (const auto& ch : charts)
      if (ch.id == id) return concat_tables(ch.base, fiber);
    bad("atlas", "transition references unknown chart " + id);
  };
  // components may come as one object or split into base_map and fiber_map
  auto read_components = [&](const Json& t, const TablePtr& src, const TablePtr& tgt) {
    std::vector<GradedPolynomial> comps(static_cast<size_t>(tgt->size()), GradedPolynomial(src));
    auto absorb = [&](const Json& obj) {
      for (const auto& [name, value] : obj.items()) {
        int idx = tgt->index_of(name);
        if (idx < 0) bad("atlas", "transition component for unknown coordinate " + name);
        comps[static_cast<size_t>(idx)] = poly_from_json(src, value);
      }
    };
    if (t.contains("components")) absorb(t.at("components"));
    if (t.contains("base_map")) absorb(t.at("base_map"));
    if (t.contains("fiber_map")) absorb(t.at("fiber_map"));
    return comps;
  };
  if (j.contains("transitions")) {
    for (const auto& t : j.at("transitions")) {
      std::string from = t.at("from").get<std::string>();
      std::string to = t.at("to").get<std::string>();
      TablePtr src = combined_of(from);
      TablePtr tgt = combined_of(to);
      transitions.push_back({from, to, GradedPolyMap(src, tgt, read_components(t, src, tgt))});
      if (t.contains("inverse"))
        transitions.push_back(
            {to, from, GradedPolyMap(tgt, src, read_components(t.at("inverse"), tgt, src))});
    }
  }
  return GradedBundleAtlas(std::move(charts), fiber, std::move(transitions));
}

namespace {

FiberBlocks blocks_from_json(const Json& j) {
  FiberBlocks out;
  if (!j.contains("domain_base") || !j.contains("codomain_base"))
    bad("morphism", "needs domain_base and codomain_base");
  TablePtr dom = table_from_json(j.at("domain_base"), true);
  TablePtr cod = table_from_json(j.at("codomain_base"), true);
  std::vector<GradedPolynomial> comps(static_cast<size_t>(cod->size()), GradedPolynomial(dom));
  if (j.contains("base_map")) {
    for (const auto& [name, value] : j.at("base_map").items()) {
      int idx = cod->index_of(name);
      if (idx < 0) bad("morphism", "base_map component for unknown coordinate " + name);
      comps[static_cast<size_t>(idx)] = poly_from_json(dom, value);
    }
  }
  out.base_map = GradedPolyMap(dom, cod, std::move(comps));
  if (j.contains("blocks")) {
    for (const auto& b : j.at("blocks")) {
      Weight w = weight_from_json(b.at("weight"), nullptr);
      const Json& rows = b.at("matrix");
      int r = static_cast<int>(rows.size());
      int c = r > 0 ? static_cast<int>(rows.at(0).size()) : 0;
      PolyMatrix m(r, c, dom);
      for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows.at(i).size()) != c) bad("morphism", "ragged block");
        for (int k = 0; k < c; ++k) m.at(i, k) = poly_from_json(dom, rows.at(i).at(k));
      }
      out.blocks[w] = std::move(m);
    }
  }
  return out;
}

Json blocks_to_json(const FiberBlocks& fb, const std::string& kind) {
  Json out;
  out["kind"] = kind;
  out["domain_base"] = table_to_json(fb.base_map.source());
  out["codomain_base"] = table_to_json(fb.base_map.target());
  Json bm;
  for (int v = 0; v < fb.base_map.target()->size(); ++v)
    bm[fb.base_map.target()->var(v).name] = fb.base_map.component(v).str();
  out["base_map"] = std::move(bm);
  Json blocks = Json::array();
  for (const auto& [w, m] : fb.blocks) {
    Json b;
    b["weight"] = weight_to_json(w);
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (int j2 = 0; j2 < m.cols(); ++j2) row.push_back(m.at(i, j2).str());
      rows.push_back(std::move(row));
    }
    b["matrix"] = std::move(rows);
    blocks.push_back(std::move(b));
  }
  out["blocks"] = std::move(blocks);
  return out;
}

}  // namespace

ZakrzewskiMorphism zm_from_json(const Json& j) { return {blocks_from_json(j)}; }
Json zm_to_json(const ZakrzewskiMorphism& zm) { return blocks_to_json(zm.rep, "zakrzewski"); }
StandardMorphism std_from_json(const Json& j) { return {blocks_from_json(j)}; }
Json std_to_json(const StandardMorphism& sm) { return blocks_to_json(sm.rep, "standard"); }

Multidegree dual_basis_element(const TablePtr& table, const std::string& text) {
  // accepted form: Y[name, name, ...] or just [name, ...]; Y[] is the counit
  // basis element
  size_t open = text.find('[');
  size_t close = text.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError("element: expected Y[gen, gen, ...]");
  std::string inner = text.substr(open + 1, close - open - 1);
  std::map<int, int> exps;
  std::string cur;
  auto flush = [&]() {
    // trim
    size_t b = cur.find_first_not_of(" \t");
    size_t e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) return;
    std::string name = cur.substr(b, e - b + 1);
    int idx = table->index_of(name);
    if (idx < 0) throw ParseError("element: unknown generator " + name);
    ++exps[idx];
    cur.clear();
  };
  for (char c : inner) {
    if (c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  std::vector<std::pair<int, int>> entries(exps.begin(), exps.end());
  return Multidegree(entries);
}

SpecFile parse_spec(const std::string& path_or_inline) {
  std::string text;
  std::string where;
  if (!path_or_inline.empty() && (path_or_inline[0] == '{' || path_or_inline[0] == '[')) {
    text = path_or_inline;
    where = "<inline>";
  } else {
    std::ifstream in(path_or_inline);
    if (!in) throw ParseError("cannot open " + path_or_inline);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    where = path_or_inline;
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
  SpecFile out;
  out.raw = j;
  if (j.is_object() && j.contains("version")) {
    if (!j.at("version").is_number_integer() || j.at("version").get<int>() != 1)
      throw ParseError(where + ": unknown format version");
    out.version = 1;
  }
  if (j.is_object() && j.contains("kind")) {
    out.kind = j.at("kind").get<std::string>();
  } else if (j.is_object()) {
    // inference by fields
    if (j.contains("charts"))
      out.kind = "atlas";
    else if (j.contains("odd_dim"))
      out.kind = "ndeg2";
    else if (j.contains("dims") && j.contains("map"))
      out.kind = "dvb";
    else if (j.contains("components") && !j.contains("truncation"))
      out.kind = "map";
    else if (j.contains("dims") && j.contains("order") && j.contains("m"))
      out.kind = "symalg";
    else if (j.contains("dims") || j.contains("mu") || j.contains("truncation"))
      out.kind = "algebra";
    else if (j.contains("rank") || j.contains("table"))
      out.kind = "space";
    else if (j.contains("blocks"))
      out.kind = "zakrzewski";
    else
      throw ParseError(where + ": cannot infer the document kind");
  } else {
    throw ParseError(where + ": top-level document must be an object");
  }
  return out;
}

}  // namespace gradua
