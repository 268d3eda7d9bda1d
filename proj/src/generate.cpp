#include "gradua/generate.hpp"

#include <algorithm>

namespace gradua {

Rational random_small_rational(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, 2);
  return frac(num(rng), den(rng));
}

GradedPolynomial random_polynomial(Rng& rng, const TablePtr& tbl, long max_weight, int terms) {
  GradedPolynomial p(tbl);
  for (int t = 0; t < terms; ++t) {
    long w = static_cast<long>(rng() % static_cast<unsigned long>(max_weight + 1));
    auto ms = enumerate_monomials(tbl, Weight(w));
    if (ms.empty()) continue;
    p = p + GradedPolynomial::monomial(tbl, ms[rng() % ms.size()], random_small_rational(rng));
  }
  return p;
}

GradedPolyMap random_graded_map(Rng& rng, const TablePtr& src, const TablePtr& tgt) {
  std::vector<GradedPolynomial> comps;
  for (int v = 0; v < tgt->size(); ++v) {
    const Weight& w = tgt->var(v).weight;
    GradedPolynomial comp(src);
    for (const auto& md : enumerate_monomials(src, w))
      comp = comp + GradedPolynomial::monomial(src, md, random_small_rational(rng, -2, 2));
    comps.push_back(comp);
  }
  return GradedPolyMap(src, tgt, comps);
}

QMatrix random_invertible(Rng& rng, int n) {
  QMatrix m(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = Rational(static_cast<long>(rng() % 5) - 2);
  } while (m.rank() < n);
  return m;
}

std::map<Weight, QMatrix> random_basis_change(Rng& rng, const PresentedGradedAlgebra& A) {
  std::map<Weight, QMatrix> out;
  for (const auto& [w, comp] : A.components()) {
    if (w.is_zero() || comp.dim == 0) continue;
    if (comp.parity.empty()) {
      out[w] = random_invertible(rng, comp.dim);
      continue;
    }
    // parity-blocked change: even and odd sectors may not mix
    QMatrix m(comp.dim, comp.dim);
    std::vector<int> even, odd;
    for (int i = 0; i < comp.dim; ++i)
      (comp.parity_of(i) == Parity::Even ? even : odd).push_back(i);
    QMatrix be = random_invertible(rng, static_cast<int>(even.size()));
    QMatrix bo = random_invertible(rng, static_cast<int>(odd.size()));
    for (size_t i = 0; i < even.size(); ++i)
      for (size_t j = 0; j < even.size(); ++j)
        m.at(even[i], even[j]) = be.at(static_cast<int>(i), static_cast<int>(j));
    for (size_t i = 0; i < odd.size(); ++i)
      for (size_t j = 0; j < odd.size(); ++j)
        m.at(odd[i], odd[j]) = bo.at(static_cast<int>(i), static_cast<int>(j));
    out[w] = m;
  }
  return out;
}

PresentedGradedAlgebra random_conjugated_model(Rng& rng, const RankVector& dd, long k) {
  PresentedGradedAlgebra model = model_algebra(dd, k);
  return conjugate(model, random_basis_change(rng, model));
}

PresentedGradedAlgebra random_mutated_model(Rng& rng, const RankVector& dd, long k) {
  PresentedGradedAlgebra model = model_algebra(dd, k);
  TablePtr tbl = VariableTable::canonical(dd);
  std::vector<std::pair<long, QVector>> candidates;
  for (long w = 2; w <= k; ++w) {
    auto monomials = enumerate_monomials(tbl, Weight(w));
    bool has_product = false;
    for (const auto& md : monomials)
      if (md.total_degree() >= 2) has_product = true;
    if (has_product) candidates.push_back({w, QVector(monomials.size(), Rational(0))});
  }
  if (candidates.empty()) throw Error("rank vector admits no product relation");
  auto& [w, rel] = candidates[rng() % candidates.size()];
  auto monomials = enumerate_monomials(tbl, Weight(w));
  bool nonzero = false;
  for (size_t i = 0; i < monomials.size(); ++i) {
    if (monomials[i].total_degree() < 2) continue;
    Rational c(static_cast<long>(rng() % 5) - 2);
    rel[i] = c;
    if (c != 0) nonzero = true;
  }
  if (!nonzero) {
    for (size_t i = 0; i < monomials.size(); ++i)
      if (monomials[i].total_degree() >= 2) {
        rel[i] = 1;
        break;
      }
  }
  PresentedGradedAlgebra quotiented = quotient_by(model, Weight(w), rel);
  // hide the construction behind a basis change
  return conjugate(quotiented, random_basis_change(rng, quotiented));
}

std::pair<GradedPolyMap, GradedPolyMap> random_fiber_automorphism(Rng& rng, const TablePtr& base,
                                                                  const TablePtr& fiber) {
  TablePtr comb = concat_tables(base, fiber);
  int nb = base->size();
  // group fiber variables by weight
  std::map<long, std::vector<int>> by_weight;
  for (int v = 0; v < fiber->size(); ++v)
    by_weight[fiber->var(v).weight.grading_key()[0]].push_back(v);

  // base map: affine invertible x' = a x + c per variable
  std::vector<GradedPolynomial> fwd(static_cast<size_t>(comb->size()), GradedPolynomial(comb));
  std::vector<GradedPolynomial> inv(static_cast<size_t>(comb->size()), GradedPolynomial(comb));
  for (int v = 0; v < nb; ++v) {
    long a = (rng() % 2) ? 1 : -1;
    long c = static_cast<long>(rng() % 3) - 1;
    GradedPolynomial x = GradedPolynomial::variable(comb, v);
    fwd[static_cast<size_t>(v)] = x * Rational(a) + GradedPolynomial::constant(comb, c);
    // x = (x' - c) / a
    inv[static_cast<size_t>(v)] = (x - GradedPolynomial::constant(comb, c)) * frac(1, a);
  }

  // fiber components by increasing weight: y'(w) = L_w y(w) + S_w(x, y_{<w})
  std::map<long, QMatrix> lin, lin_inv;
  std::map<long, std::vector<GradedPolynomial>> shear;
  for (const auto& [w, vars] : by_weight) {
    int n = static_cast<int>(vars.size());
    QMatrix L = random_invertible(rng, n);
    lin[w] = L;
    lin_inv[w] = *L.inverse();
    // corrections: weight-w monomials in strictly lower-weight fiber vars,
    // with base-polynomial coefficients
    std::vector<GradedPolynomial> s;
    for (int i = 0; i < n; ++i) {
      GradedPolynomial corr(comb);
      for (const auto& md : enumerate_monomials(comb, Weight(w))) {
        bool lower_only = true;
        bool has_fiber = false;
        for (const auto& [v, e] : md.entries()) {
          if (v < nb) continue;
          has_fiber = true;
          if (fiber->var(v - nb).weight.grading_key()[0] >= w) lower_only = false;
        }
        if (!has_fiber || !lower_only) continue;
        if (rng() % 3 == 0) {
          // base-dependent coefficient
          GradedPolynomial coeff = GradedPolynomial::constant(comb, random_small_rational(rng, -2, 2));
          if (nb > 0 && rng() % 2 == 0)
            coeff = coeff * GradedPolynomial::variable(comb, static_cast<int>(rng() % nb));
          corr = corr + coeff * GradedPolynomial::monomial(comb, md, 1);
        }
      }
      s.push_back(corr);
    }
    shear[w] = std::move(s);
  }
  for (const auto& [w, vars] : by_weight) {
    const QMatrix& L = lin.at(w);
    for (size_t i = 0; i < vars.size(); ++i) {
      GradedPolynomial comp = shear.at(w)[i];
      for (size_t j = 0; j < vars.size(); ++j)
        comp = comp + GradedPolynomial::variable(comb, nb + vars[j]) *
                          L.at(static_cast<int>(i), static_cast<int>(j));
      fwd[static_cast<size_t>(nb + vars[i])] = comp;
    }
  }
  GradedPolyMap forward(comb, comb, fwd);

  // inverse by weight recursion: y(w) = L_w^{-1} (y'(w) - S_w(x(x'), y_{<w}(y')))
  // realized through substitution of the partial inverse built so far
  for (const auto& [w, vars] : by_weight) {
    const QMatrix& Linv = lin_inv.at(w);
    // images of (x, y_{<w}) under the inverse constructed so far; current and
    // higher weights are irrelevant for S_w
    std::vector<GradedPolynomial> partial = inv;
    for (const auto& [w2, vars2] : by_weight)
      if (w2 >= w)
        for (int v : vars2) partial[static_cast<size_t>(nb + v)] = GradedPolynomial(comb);
    for (size_t i = 0; i < vars.size(); ++i) {
      GradedPolynomial comp(comb);
      for (size_t j = 0; j < vars.size(); ++j) {
        GradedPolynomial yj = GradedPolynomial::variable(comb, nb + vars[j]);
        GradedPolynomial sj = shear.at(w)[j].substitute(partial);
        comp = comp + (yj - sj) * Linv.at(static_cast<int>(i), static_cast<int>(j));
      }
      inv[static_cast<size_t>(nb + vars[i])] = comp;
    }
  }
  GradedPolyMap backward(comb, comb, inv);
  return {forward, backward};
}

GradedBundleAtlas random_atlas(Rng& rng, int n_charts, const TablePtr& fiber) {
  if (n_charts < 1 || n_charts > 3) throw Error("random atlases use 1 to 3 charts");
  std::vector<Chart> charts;
  TablePtr base = VariableTable::make({{"x", Weight::of_arity(1)}}, true);
  const char* names[3] = {"A", "B", "C"};
  for (int i = 0; i < n_charts; ++i) charts.push_back({names[i], base});
  std::vector<Transition> transitions;
  if (n_charts >= 2) {
    auto [ba, ab] = random_fiber_automorphism(rng, base, fiber);  // B -> A and back
    transitions.push_back({"B", "A", ba});
    transitions.push_back({"A", "B", ab});
    if (n_charts == 3) {
      auto [cb, bc] = random_fiber_automorphism(rng, base, fiber);  // C -> B and back
      transitions.push_back({"C", "B", cb});
      transitions.push_back({"B", "C", bc});
      transitions.push_back({"C", "A", ba.compose(cb)});
      transitions.push_back({"A", "C", bc.compose(ab)});
    }
  } else {
    TablePtr comb = concat_tables(base, fiber);
    transitions.push_back({"A", "A", GradedPolyMap::identity(comb)});
  }
  return GradedBundleAtlas(std::move(charts), fiber, std::move(transitions));
}

std::pair<std::string, std::string> mutate_one_transition(Rng& rng, GradedBundleAtlas& atlas) {
  auto& transitions = const_cast<std::vector<Transition>&>(atlas.transitions());
  std::vector<size_t> eligible;
  for (size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].from != transitions[i].to) eligible.push_back(i);
  if (eligible.empty()) throw Error("no transition to mutate");
  Transition& tr = transitions[eligible[rng() % eligible.size()]];
  // add a weight-correct monomial to a random fiber component
  const TablePtr& tgt = tr.map.target();
  const TablePtr& src = tr.map.source();
  std::vector<int> fiber_components;
  for (int v = 0; v < tgt->size(); ++v)
    if (!tgt->var(v).weight.grading_key().is_zero()) fiber_components.push_back(v);
  int comp_idx = fiber_components[rng() % fiber_components.size()];
  const Weight w = tgt->var(comp_idx).weight;
  auto slots = enumerate_monomials(src, w);
  auto comps = tr.map.components();
  comps[static_cast<size_t>(comp_idx)] =
      comps[static_cast<size_t>(comp_idx)] +
      GradedPolynomial::monomial(src, slots[rng() % slots.size()], 1);
  tr.map = GradedPolyMap(src, tgt, comps);
  return {tr.from, tr.to};
}

ZakrzewskiMorphism random_zakrzewski(Rng& rng) {
  TablePtr dom = VariableTable::make({{"t", Weight::of_arity(1)}}, true);
  TablePtr cod = VariableTable::make({{"s", Weight::of_arity(1)}}, true);
  ZakrzewskiMorphism zm;
  GradedPolynomial comp = random_polynomial(rng, dom, 0, 2) +
                          GradedPolynomial::variable(dom, 0) * random_small_rational(rng, -2, 2);
  zm.rep.base_map = GradedPolyMap(dom, cod, {comp});
  long weights = 1 + static_cast<long>(rng() % 3);
  for (long w = 1; w <= weights; ++w) {
    int r = 1 + static_cast<int>(rng() % 3);
    int c = 1 + static_cast<int>(rng() % 3);
    PolyMatrix m(r, c, dom);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        GradedPolynomial e = GradedPolynomial::constant(dom, random_small_rational(rng, -2, 2));
        if (rng() % 2) e = e + GradedPolynomial::variable(dom, 0) * random_small_rational(rng, -2, 2);
        m.at(i, j) = e;
      }
    zm.rep.blocks[Weight(w)] = std::move(m);
  }
  return zm;
}

}  // namespace gradua
