#include "gradua/bundle.hpp"

#include <algorithm>
#include <sstream>

namespace gradua {

PolyMatrix::PolyMatrix(int rows, int cols, TablePtr table)
    : rows_(rows), cols_(cols), table_(std::move(table)) {
  data_.assign(static_cast<size_t>(rows_) * cols_, GradedPolynomial(table_));
}

PolyMatrix PolyMatrix::identity(int n, const TablePtr& table) {
  PolyMatrix m(n, n, table);
  for (int i = 0; i < n; ++i) m.at(i, i) = GradedPolynomial::constant(table, 1);
  return m;
}

PolyMatrix PolyMatrix::mul(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw Error("poly matrix dimension mismatch");
  if (!table_->same_as(*o.table_)) throw Error("poly matrix table mismatch");
  PolyMatrix r(rows_, o.cols_, table_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
      }
    }
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, table_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

PolyMatrix PolyMatrix::pulled_back(const GradedPolyMap& map) const {
  if (!map.target()->same_as(*table_)) throw Error("pullback target mismatch");
  PolyMatrix r(rows_, cols_, map.source());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = map.pullback(at(i, j));
  return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (rows_ == 0 || cols_ == 0) return true;
  if (!table_->same_as(*o.table_)) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (!(data_[i] == o.data_[i])) return false;
  return true;
}

GradedBundleAtlas::GradedBundleAtlas(std::vector<Chart> charts, TablePtr fiber,
                                     std::vector<Transition> transitions)
    : charts_(std::move(charts)), fiber_(std::move(fiber)), transitions_(std::move(transitions)) {
  if (charts_.empty()) throw Error("atlas needs at least one chart");
  for (const auto& v : fiber_->vars())
    if (v.weight.grading_key().is_zero()) throw Error("fiber variables must have positive weight");
  for (const auto& ch : charts_) {
    for (const auto& v : ch.base->vars())
      if (!v.weight.grading_key().is_zero())
        throw Error("base variables must have weight zero");
    combined_.push_back(concat_tables(ch.base, fiber_));
  }
  for (size_t i = 0; i < charts_.size(); ++i)
    for (size_t j = i + 1; j < charts_.size(); ++j)
      if (charts_[i].id == charts_[j].id) throw Error("duplicate chart id " + charts_[i].id);
  for (const auto& tr : transitions_) {
    int from = chart_index(tr.from);
    int to = chart_index(tr.to);
    if (from < 0 || to < 0) throw Error("transition references unknown chart");
    if (!tr.map.source()->same_as(*combined(from)) || !tr.map.target()->same_as(*combined(to)))
      throw Error("transition tables do not match its charts");
  }
}

int GradedBundleAtlas::chart_index(const std::string& id) const {
  for (size_t i = 0; i < charts_.size(); ++i)
    if (charts_[i].id == id) return static_cast<int>(i);
  return -1;
}

const Transition* GradedBundleAtlas::find_transition(const std::string& from,
                                                     const std::string& to) const {
  for (const auto& tr : transitions_)
    if (tr.from == from && tr.to == to) return &tr;
  return nullptr;
}

BundleCheckReport GradedBundleAtlas::check_transition_weights() const {
  BundleCheckReport rep;
  for (const auto& tr : transitions_) {
    auto mrep = tr.map.check_graded();
    if (!mrep.pass) {
      rep.pass = false;
      for (const auto& v : mrep.violations)
        rep.violations.push_back({tr.to + "<-" + tr.from, v.component, v.detail});
    }
  }
  return rep;
}

BundleCheckReport GradedBundleAtlas::check_inverses() const {
  BundleCheckReport rep;
  for (const auto& tr : transitions_) {
    if (tr.from == tr.to) {
      if (!(tr.map == GradedPolyMap::identity(tr.map.source()))) {
        rep.pass = false;
        rep.violations.push_back({tr.to + "<-" + tr.from, "", "diagonal transition is not the identity"});
      }
      continue;
    }
    const Transition* back = find_transition(tr.to, tr.from);
    if (!back) continue;
    GradedPolyMap round = back->map.compose(tr.map);
    if (!(round == GradedPolyMap::identity(tr.map.source()))) {
      rep.pass = false;
      rep.violations.push_back(
          {tr.from + "<-" + tr.to + "<-" + tr.from, "", "declared inverse fails to invert"});
    }
  }
  return rep;
}

BundleCheckReport GradedBundleAtlas::check_cocycle() const {
  BundleCheckReport rep;
  for (const auto& ab : transitions_) {      // b -> a
    for (const auto& bc : transitions_) {    // c -> b
      if (bc.to != ab.from) continue;
      if (ab.from == ab.to || bc.from == bc.to) continue;  // diagonal legs add nothing
      GradedPolyMap composite = ab.map.compose(bc.map);
      if (bc.from == ab.to) {
        // round trip: the composite must be the identity chart change
        if (!(composite == GradedPolyMap::identity(composite.source()))) {
          rep.pass = false;
          rep.violations.push_back({ab.to + "<-" + ab.from + "<-" + bc.from, "",
                                    "round trip is not the identity"});
        }
        continue;
      }
      const Transition* ac = find_transition(bc.from, ab.to);
      if (!ac) {
        rep.pass = false;
        rep.violations.push_back({ab.to + "<-" + ab.from + "<-" + bc.from, "",
                                  "missing overlap data for the composite"});
        continue;
      }
      if (!(composite == ac->map)) {
        rep.pass = false;
        std::string bad_component;
        std::string detail;
        for (int v = 0; v < composite.target()->size(); ++v) {
          if (!(composite.component(v) == ac->map.component(v))) {
            bad_component = composite.target()->var(v).name;
            GradedPolynomial diff = composite.component(v) - ac->map.component(v);
            detail = "difference " + diff.str();
            break;
          }
        }
        rep.violations.push_back({ab.to + "<-" + ab.from + "<-" + bc.from, bad_component, detail});
      }
    }
  }
  return rep;
}

BundleCheckReport GradedBundleAtlas::check_all() const {
  BundleCheckReport rep = check_transition_weights();
  BundleCheckReport inv = check_inverses();
  BundleCheckReport coc = check_cocycle();
  rep.pass = rep.pass && inv.pass && coc.pass;
  rep.violations.insert(rep.violations.end(), inv.violations.begin(), inv.violations.end());
  rep.violations.insert(rep.violations.end(), coc.violations.begin(), coc.violations.end());
  return rep;
}

namespace {

// base-variable count of a chart's combined table (fiber vars come last)
int base_size(const GradedBundleAtlas& atlas, int chart) {
  return atlas.charts()[static_cast<size_t>(chart)].base->size();
}

// fiber variables of one weight as indices into the shared fiber table
std::vector<int> fiber_vars_of_weight(const TablePtr& fiber, const Weight& w) {
  std::vector<int> out;
  for (int v = 0; v < fiber->size(); ++v)
    if (fiber->var(v).weight.grading_key() == w.grading_key()) out.push_back(v);
  return out;
}

// Keeps only base variables of a polynomial over a combined table, after
// verifying it involves no fiber variable; reinterpreted over the base table.
GradedPolynomial restrict_to_base(const GradedPolynomial& p, const TablePtr& base) {
  GradedPolynomial out(base);
  for (const auto& [md, c] : p.terms()) {
    for (const auto& [v, e] : md.entries())
      if (v >= base->size()) throw Error("internal: fiber variable in a base coefficient");
    out.set_coefficient(md, c);
  }
  return out;
}

// The linear block of a transition in weight w: the coefficient of each bare
// weight-w fiber variable inside each weight-w fiber component. Entries are
// base polynomials over the source chart's base table.
PolyMatrix linear_block(const GradedBundleAtlas& atlas, const Transition& tr, const Weight& w) {
  int from = atlas.chart_index(tr.from);
  const TablePtr& src_base = atlas.charts()[static_cast<size_t>(atlas.chart_index(tr.from))].base;
  const TablePtr& combined_src = atlas.combined(from);
  auto fvars = fiber_vars_of_weight(atlas.fiber(), w);
  int nb_src = base_size(atlas, from);
  int to = atlas.chart_index(tr.to);
  int nb_tgt = base_size(atlas, to);
  PolyMatrix block(static_cast<int>(fvars.size()), static_cast<int>(fvars.size()), src_base);
  for (size_t row = 0; row < fvars.size(); ++row) {
    const GradedPolynomial& comp = tr.map.component(nb_tgt + fvars[row]);
    for (const auto& [md, c] : comp.terms()) {
      // split the monomial into base part and fiber part
      int lone_fiber_var = -1;
      bool linear = true;
      std::vector<std::pair<int, int>> base_part;
      for (const auto& [v, e] : md.entries()) {
        if (v < nb_src) {
          base_part.push_back({v, e});
        } else if (e == 1 && lone_fiber_var < 0) {
          lone_fiber_var = v - nb_src;
        } else {
          linear = false;
        }
      }
      if (!linear || lone_fiber_var < 0) continue;  // products of lower weights die here
      auto col_it = std::find(fvars.begin(), fvars.end(), lone_fiber_var);
      if (col_it == fvars.end()) continue;  // lower-weight variable: quotiented away
      size_t col = static_cast<size_t>(col_it - fvars.begin());
      GradedPolynomial entry =
          GradedPolynomial::monomial(combined_src, Multidegree(base_part), c);
      block.at(static_cast<int>(row), static_cast<int>(col)) =
          block.at(static_cast<int>(row), static_cast<int>(col)) +
          restrict_to_base(entry, src_base);
    }
  }
  return block;
}

// base part of a transition as a map between base tables
GradedPolyMap base_map_of(const GradedBundleAtlas& atlas, const Transition& tr) {
  int from = atlas.chart_index(tr.from);
  int to = atlas.chart_index(tr.to);
  const TablePtr& src_base = atlas.charts()[static_cast<size_t>(from)].base;
  const TablePtr& tgt_base = atlas.charts()[static_cast<size_t>(to)].base;
  std::vector<GradedPolynomial> comps;
  for (int v = 0; v < tgt_base->size(); ++v)
    comps.push_back(restrict_to_base(tr.map.component(v), src_base));
  return GradedPolyMap(src_base, tgt_base, comps);
}

}  // namespace

SplitForm split_form(const GradedBundleAtlas& atlas) {
  auto weights_report = atlas.check_transition_weights();
  auto cocycle_report = atlas.check_cocycle();
  if (!weights_report.pass || !cocycle_report.pass)
    throw Error("split form requires a weight-checked cocycle");

  SplitForm out;
  long degree = 0;
  for (int v = 0; v < atlas.fiber()->size(); ++v)
    degree = std::max(degree, atlas.fiber()->var(v).weight.grading_key()[0]);
  for (long w = 1; w <= degree; ++w)
    out.ranks.push_back(static_cast<long>(fiber_vars_of_weight(atlas.fiber(), Weight(w)).size()));

  for (const auto& tr : atlas.transitions()) {
    SplitForm::LinearTransition lt{tr.from, tr.to, {}};
    for (long w = 1; w <= degree; ++w) lt.blocks[Weight(w)] = linear_block(atlas, tr, Weight(w));
    out.transitions.push_back(std::move(lt));
  }

  // the linearized transitions satisfy the same cocycle law
  out.cocycle_verified = true;
  auto find_lt = [&](const std::string& from, const std::string& to) -> const SplitForm::LinearTransition* {
    for (const auto& lt : out.transitions)
      if (lt.from == from && lt.to == to) return &lt;
    return nullptr;
  };
  for (const auto& ab : atlas.transitions()) {
    for (const auto& bc : atlas.transitions()) {
      if (bc.to != ab.from) continue;
      const Transition* ac = atlas.find_transition(bc.from, ab.to);
      if (!ac) continue;
      const auto* lab = find_lt(ab.from, ab.to);
      const auto* lbc = find_lt(bc.from, bc.to);
      const auto* lac = find_lt(ac->from, ac->to);
      GradedPolyMap base_bc = base_map_of(atlas, bc);
      for (long w = 1; w <= degree; ++w) {
        PolyMatrix lhs = lab->blocks.at(Weight(w)).pulled_back(base_bc).mul(lbc->blocks.at(Weight(w)));
        if (!(lhs == lac->blocks.at(Weight(w)))) out.cocycle_verified = false;
      }
    }
  }
  return out;
}

AlgebraBundleCocycle associated_algebra_bundle(const GradedBundleAtlas& atlas, long max_weight) {
  auto weights_report = atlas.check_transition_weights();
  auto cocycle_report = atlas.check_cocycle();
  if (!weights_report.pass || !cocycle_report.pass)
    throw Error("algebra bundle requires a weight-checked cocycle");

  AlgebraBundleCocycle out;
  out.fiber_basis = enumerate_basis(atlas.fiber(), Weight(max_weight));

  // the record (from, to) rewrites function coordinates of the `from`
  // trivialization in the `to` trivialization, which is substitution by the
  // reverse coordinate change; it therefore needs the declared (to -> from)
  // transition
  for (const auto& tr : atlas.transitions()) {
    const Transition* reverse = atlas.find_transition(tr.to, tr.from);
    if (!reverse) throw Error("algebra bundle needs the reverse transition of " + tr.to + "<-" + tr.from);
    int to_idx = atlas.chart_index(tr.to);
    const TablePtr& base = atlas.charts()[static_cast<size_t>(to_idx)].base;
    int nb = base->size();
    const TablePtr& comb = atlas.combined(to_idx);
    SplitForm::LinearTransition lt{tr.from, tr.to, {}};
    for (const auto& [w, monomials] : out.fiber_basis) {
      if (w.is_zero()) {
        lt.blocks[w] = PolyMatrix::identity(1, base);
        continue;
      }
      int n = static_cast<int>(monomials.size());
      PolyMatrix block(n, n, base);
      // substitute the reverse transition's fiber components into each
      // monomial; the result is a polynomial in `to` base and fiber vars
      std::map<std::string, int> index;
      for (int i = 0; i < n; ++i) index[monomials[static_cast<size_t>(i)].str(*atlas.fiber())] = i;
      for (int col = 0; col < n; ++col) {
        // lift the fiber monomial into the reverse map's target (the `from`
        // chart) and pull it back; the result lives over the `to` chart
        GradedPolynomial mono_tgt(reverse->map.target());
        std::vector<std::pair<int, int>> lifted_tgt;
        int nb_from = base_size(atlas, atlas.chart_index(reverse->to));
        for (const auto& [v, e] : monomials[static_cast<size_t>(col)].entries())
          lifted_tgt.push_back({nb_from + v, e});
        mono_tgt.set_coefficient(Multidegree(lifted_tgt), 1);
        GradedPolynomial substituted = reverse->map.pullback(mono_tgt);
        // collect coefficients of fiber monomials; entries over `to` base
        for (const auto& [md, c] : substituted.terms()) {
          std::vector<std::pair<int, int>> base_part, fiber_part;
          for (const auto& [v, e] : md.entries())
            (v < nb ? base_part : fiber_part).push_back({v < nb ? v : v - nb, e});
          Multidegree fiber_md(fiber_part);
          auto it = index.find(fiber_md.str(*atlas.fiber()));
          if (it == index.end()) throw Error("internal: substitution left its weight component");
          GradedPolynomial entry = GradedPolynomial::monomial(comb, Multidegree(base_part), c);
          block.at(it->second, col) =
              block.at(it->second, col) + restrict_to_base(entry, base);
        }
      }
      lt.blocks[w] = std::move(block);
    }
    out.transitions.push_back(std::move(lt));
  }

  // verify the induced cocycle law N_{a<-b}(x_a) N_{b<-c}(base of a->b) ...
  out.cocycle_verified = true;
  auto find_lt = [&](const std::string& from, const std::string& to) -> const SplitForm::LinearTransition* {
    for (const auto& lt : out.transitions)
      if (lt.from == from && lt.to == to) return &lt;
    return nullptr;
  };
  for (const auto& ab : atlas.transitions()) {
    for (const auto& bc : atlas.transitions()) {
      if (bc.to != ab.from) continue;
      const Transition* ac = atlas.find_transition(bc.from, ab.to);
      if (!ac) continue;
      const auto* lab = find_lt(ab.from, ab.to);
      const auto* lbc = find_lt(bc.from, bc.to);
      const auto* lac = find_lt(ac->from, ac->to);
      if (!lab || !lbc || !lac) continue;
      // entries of lbc live over base(b); rewrite them over base(a) through
      // the base part of the (a -> b) transition, which is the reverse of ab
      const Transition* rev_ab = atlas.find_transition(ab.to, ab.from);
      GradedPolyMap base_rev = base_map_of(atlas, *rev_ab);
      for (const auto& [w, mb] : lab->blocks) {
        PolyMatrix lhs = lab->blocks.at(w).mul(lbc->blocks.at(w).pulled_back(base_rev));
        if (!(lhs == lac->blocks.at(w))) out.cocycle_verified = false;
      }
    }
  }
  return out;
}

DualBundle g_dual_bundle(const GradedBundleAtlas& atlas, long max_weight) {
  DualBundle out;
  out.fiber_table = atlas.fiber();
  out.cocycle = associated_algebra_bundle(atlas, max_weight);
  for (const auto& [w, ms] : out.cocycle.fiber_basis)
    out.fiber_dims[w] = static_cast<long>(ms.size());
  if (!out.cocycle.cocycle_verified) throw Error("dual bundle cocycle failed re-verification");
  return out;
}

bool FiberBlocks::operator==(const FiberBlocks& o) const {
  return base_map == o.base_map && blocks == o.blocks;
}

StandardMorphism dualize_zm(const ZakrzewskiMorphism& zm) {
  StandardMorphism sm;
  sm.rep.base_map = zm.rep.base_map;
  for (const auto& [w, b] : zm.rep.blocks) sm.rep.blocks[w] = b.transpose();
  return sm;
}

ZakrzewskiMorphism dualize_std(const StandardMorphism& sm) {
  ZakrzewskiMorphism zm;
  zm.rep.base_map = sm.rep.base_map;
  for (const auto& [w, b] : sm.rep.blocks) zm.rep.blocks[w] = b.transpose();
  return zm;
}

ZakrzewskiMorphism dualize_bundle_morphism(const BundleMorphism& f, long max_weight) {
  auto rep = f.map.check_graded();
  if (!rep.pass) throw Error("bundle morphism is not weight-preserving");
  ZakrzewskiMorphism out;
  int nb_src = f.source_base->size();
  int nb_tgt = f.target_base->size();
  // base map: target base coordinates as polynomials in source base
  std::vector<GradedPolynomial> base_comps;
  for (int v = 0; v < nb_tgt; ++v)
    base_comps.push_back(restrict_to_base(f.map.component(v), f.source_base));
  out.rep.base_map = GradedPolyMap(f.source_base, f.target_base, base_comps);
  // blocks: substitution action on weight components of the target fiber
  auto tgt_basis = enumerate_basis(f.target_fiber, Weight(max_weight));
  auto src_basis = enumerate_basis(f.source_fiber, Weight(max_weight));
  for (const auto& [w, tgt_ms] : tgt_basis) {
    const auto& src_ms = src_basis.at(w);
    PolyMatrix block(static_cast<int>(src_ms.size()), static_cast<int>(tgt_ms.size()),
                     f.source_base);
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(src_ms.size()); ++i)
      index[src_ms[static_cast<size_t>(i)].str(*f.source_fiber)] = i;
    for (int col = 0; col < static_cast<int>(tgt_ms.size()); ++col) {
      GradedPolynomial mono(f.map.target());
      std::vector<std::pair<int, int>> lifted;
      for (const auto& [v, e] : tgt_ms[static_cast<size_t>(col)].entries())
        lifted.push_back({nb_tgt + v, e});
      mono.set_coefficient(Multidegree(lifted), 1);
      GradedPolynomial substituted = f.map.pullback(mono);
      for (const auto& [md, c] : substituted.terms()) {
        std::vector<std::pair<int, int>> base_part, fiber_part;
        for (const auto& [v, e] : md.entries())
          (v < nb_src ? base_part : fiber_part).push_back({v < nb_src ? v : v - nb_src, e});
        auto it = index.find(Multidegree(fiber_part).str(*f.source_fiber));
        if (it == index.end()) throw Error("internal: weight component escaped");
        GradedPolynomial entry =
            GradedPolynomial::monomial(f.map.source(), Multidegree(base_part), c);
        block.at(it->second, col) = block.at(it->second, col) + restrict_to_base(entry, f.source_base);
      }
    }
    out.rep.blocks[w] = std::move(block);
  }
  return out;
}

ZakrzewskiMorphism compose_zm(const ZakrzewskiMorphism& dual_f, const ZakrzewskiMorphism& dual_g) {
  ZakrzewskiMorphism out;
  // underlying point maps of the bases compose the usual way
  out.rep.base_map = dual_g.rep.base_map.compose(dual_f.rep.base_map);
  for (const auto& [w, bf] : dual_f.rep.blocks) {
    const PolyMatrix& bg = dual_g.rep.blocks.at(w);
    out.rep.blocks[w] = bf.mul(bg.pulled_back(dual_f.rep.base_map));
  }
  return out;
}

BundleMorphism compose_bundle_morphisms(const BundleMorphism& g, const BundleMorphism& f) {
  BundleMorphism out;
  out.source_base = f.source_base;
  out.source_fiber = f.source_fiber;
  out.target_base = g.target_base;
  out.target_fiber = g.target_fiber;
  out.map = g.map.compose(f.map);
  return out;
}

}  // namespace gradua
