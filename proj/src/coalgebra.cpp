#include "gradua/coalgebra.hpp"

#include <algorithm>
#include <sstream>

namespace gradua {

GradedCoalgebra::GradedCoalgebra(TablePtr table, Weight max_weight)
    : table_(std::move(table)), max_weight_(std::move(max_weight)) {
  if (!max_weight_.nonnegative()) throw Error("negative coalgebra weight bound");
  bases_ = enumerate_basis(table_, max_weight_);
  for (const auto& [w, ms] : bases_) {
    auto& ix = index_[w];
    for (int i = 0; i < static_cast<int>(ms.size()); ++i)
      ix[ms[static_cast<size_t>(i)].str(*table_)] = i;
  }
  // Delta tensors as transposes of monomial multiplication
  for (const auto& [w1, ms1] : bases_) {
    for (const auto& [w2, ms2] : bases_) {
      Weight sum = w1 + w2;
      if (!sum.within(max_weight_)) continue;
      const auto& target = bases_.at(sum);
      Tensor3 t(static_cast<int>(target.size()), static_cast<int>(ms1.size()),
                static_cast<int>(ms2.size()));
      for (int a = 0; a < static_cast<int>(ms1.size()); ++a) {
        for (int b = 0; b < static_cast<int>(ms2.size()); ++b) {
          GradedPolynomial prod = GradedPolynomial::monomial(table_, ms1[static_cast<size_t>(a)], 1) *
                                  GradedPolynomial::monomial(table_, ms2[static_cast<size_t>(b)], 1);
          for (const auto& [md, coeff] : prod.terms()) {
            int c = index_of(sum, md);
            t.at(c, a, b) = coeff;
          }
        }
      }
      delta_[std::make_pair(w1, w2)] = std::move(t);
    }
  }
}

int GradedCoalgebra::index_of(const Weight& w, const Multidegree& md) const {
  auto wit = index_.find(w.grading_key());
  if (wit == index_.end()) throw Error("weight outside the computed coalgebra range");
  auto it = wit->second.find(md.str(*table_));
  if (it == wit->second.end()) throw Error("monomial missing from basis");
  return it->second;
}

const std::vector<Multidegree>& GradedCoalgebra::basis(const Weight& w) const {
  static const std::vector<Multidegree> empty;
  auto it = bases_.find(w.grading_key());
  return it == bases_.end() ? empty : it->second;
}

long GradedCoalgebra::dim(const Weight& w) const { return static_cast<long>(basis(w).size()); }

std::vector<CotensorTerm> GradedCoalgebra::comultiply(const Multidegree& md) const {
  Weight w = weight_of(md, *table_).grading_key();
  if (!w.within(max_weight_)) throw Error("element weight beyond the computed range");
  int c = index_of(w, md);
  std::vector<CotensorTerm> out;
  for (const auto& [split, t] : delta_) {
    const auto& [w1, w2] = split;
    if (!(w1 + w2 == w)) continue;
    const auto& b1 = bases_.at(w1);
    const auto& b2 = bases_.at(w2);
    for (int a = 0; a < static_cast<int>(b1.size()); ++a)
      for (int b = 0; b < static_cast<int>(b2.size()); ++b) {
        const Rational& coeff = t.at(c, a, b);
        if (coeff != 0)
          out.push_back({b1[static_cast<size_t>(a)], b2[static_cast<size_t>(b)], coeff});
      }
  }
  return out;
}

Rational GradedCoalgebra::pairing(const Multidegree& md, const GradedPolynomial& p) const {
  if (!p.table()->same_as(*table_)) throw Error("pairing across different tables");
  return p.coefficient(md);
}

Tensor3& GradedCoalgebra::delta_tensor(const Weight& split_left, const Weight& split_right) {
  auto it = delta_.find(std::make_pair(split_left.grading_key(), split_right.grading_key()));
  if (it == delta_.end()) throw Error("no such split");
  return it->second;
}

const Tensor3& GradedCoalgebra::delta_tensor(const Weight& split_left,
                                             const Weight& split_right) const {
  auto it = delta_.find(std::make_pair(split_left.grading_key(), split_right.grading_key()));
  if (it == delta_.end()) throw Error("no such split");
  return it->second;
}

GradedCoalgebra graded_dual(const TablePtr& table, const Weight& max_weight) {
  return GradedCoalgebra(table, max_weight);
}

GradedCoalgebra graded_dual(const TablePtr& table, long max_weight) {
  return GradedCoalgebra(table, Weight(max_weight));
}

namespace {

using TripleKey = std::tuple<std::string, std::string, std::string>;

Parity parity_of_md(const TablePtr& tbl, const Multidegree& md) {
  return weight_of(md, *tbl).parity().value_or(Parity::Even);
}

}  // namespace

CoalgebraAxiomReport check_coalgebra_axioms(const GradedCoalgebra& C) {
  CoalgebraAxiomReport rep;
  const TablePtr& tbl = C.table();
  auto note = [&](const std::string& what) {
    if (rep.detail.empty()) rep.detail = what;
    rep.pass = false;
  };
  // iterate all basis elements within the bound
  for (const auto& [w, ms] : enumerate_basis(tbl, C.max_weight())) {
    for (const auto& md : ms) {
      auto delta = C.comultiply(md);

      // counit laws: the only unit-left term is Y_1 (x) Y_md with
      // coefficient 1, same on the right
      Rational left_unit = 0, right_unit = 0;
      bool stray = false;
      for (const auto& term : delta) {
        if (term.left.is_unit()) {
          if (term.right == md)
            left_unit = term.coeff;
          else
            stray = true;
        }
        if (term.right.is_unit()) {
          if (term.left == md)
            right_unit = term.coeff;
          else
            stray = true;
        }
      }
      if (left_unit != 1 || right_unit != 1 || stray) {
        rep.counit_ok = false;
        note("counit law fails on " + md.str(*tbl));
      }

      // graded cocommutativity: coeff(a,b) = +-coeff(b,a)
      for (const auto& term : delta) {
        Rational mirrored = 0;
        for (const auto& other : delta)
          if (other.left == term.right && other.right == term.left) mirrored = other.coeff;
        int sign = (parity_of_md(tbl, term.left) == Parity::Odd &&
                    parity_of_md(tbl, term.right) == Parity::Odd)
                       ? -1
                       : 1;
        if (term.coeff != (sign > 0 ? mirrored : -mirrored)) {
          rep.cocommutative = false;
          note("cocommutativity fails on " + md.str(*tbl));
        }
      }

      // coassociativity: (Delta (x) id) Delta = (id (x) Delta) Delta
      std::map<TripleKey, Rational> lhs, rhs;
      for (const auto& term : delta) {
        for (const auto& inner : C.comultiply(term.left)) {
          TripleKey key{inner.left.str(*tbl), inner.right.str(*tbl), term.right.str(*tbl)};
          lhs[key] += term.coeff * inner.coeff;
        }
        for (const auto& inner : C.comultiply(term.right)) {
          TripleKey key{term.left.str(*tbl), inner.left.str(*tbl), inner.right.str(*tbl)};
          rhs[key] += term.coeff * inner.coeff;
        }
      }
      for (auto it = lhs.begin(); it != lhs.end();)
        it = (it->second == 0) ? lhs.erase(it) : std::next(it);
      for (auto it = rhs.begin(); it != rhs.end();)
        it = (it->second == 0) ? rhs.erase(it) : std::next(it);
      if (lhs != rhs) {
        rep.coassociative = false;
        note("coassociativity fails on " + md.str(*tbl));
      }
    }
  }
  return rep;
}

std::vector<CotensorTerm> shuffle_comultiplication(const TablePtr& table, const Multidegree& md) {
  weight_of(md, *table);  // validates the indices against the table
  // index word a_1 <= ... <= a_k; all indices must be pairwise distinct here
  std::vector<int> word;
  for (const auto& [v, e] : md.entries()) {
    if (e > 1) throw Error("shuffle expression requires pairwise distinct indices");
    word.push_back(v);
  }
  int k = static_cast<int>(word.size());
  std::vector<CotensorTerm> out;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    std::vector<std::pair<int, int>> left, right;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i))
        left.push_back({word[static_cast<size_t>(i)], 1});
      else
        right.push_back({word[static_cast<size_t>(i)], 1});
    }
    out.push_back({Multidegree(left), Multidegree(right), 1});
  }
  // combine equal (left, right) pairs: cannot occur for distinct indices,
  // kept for safety
  std::vector<CotensorTerm> combined;
  for (const auto& term : out) {
    bool merged = false;
    for (auto& c : combined)
      if (c.left == term.left && c.right == term.right) {
        c.coeff += term.coeff;
        merged = true;
      }
    if (!merged) combined.push_back(term);
  }
  return combined;
}

DualStructure dualize_structure(const PresentedGradedAlgebra& A) {
  DualStructure C;
  C.truncation = A.truncation();
  C.comps = A.components();
  for (const auto& [w1, c1] : C.comps)
    for (const auto& [w2, c2] : C.comps) {
      Weight sum = w1 + w2;
      if (!sum.within(C.truncation)) continue;
      const Tensor3& t = A.mu(w1, w2);
      int nc = t.nc();
      Tensor3 d(nc, c1.dim, c2.dim);
      for (int a = 0; a < c1.dim; ++a)
        for (int b = 0; b < c2.dim; ++b)
          for (int c = 0; c < nc; ++c) d.at(c, a, b) = t.at(a, b, c);
      C.delta[std::make_pair(w1, w2)] = std::move(d);
    }
  return C;
}

PresentedGradedAlgebra structure_from_dual(const DualStructure& C) {
  std::map<std::pair<Weight, Weight>, Tensor3> mu;
  for (const auto& [key, d] : C.delta) {
    Tensor3 t(d.nb(), d.nc(), d.na());
    for (int c = 0; c < d.na(); ++c)
      for (int a = 0; a < d.nb(); ++a)
        for (int b = 0; b < d.nc(); ++b) t.at(a, b, c) = d.at(c, a, b);
    mu[key] = std::move(t);
  }
  std::map<Weight, AlgComponent> comps = C.comps;
  return PresentedGradedAlgebra(C.truncation, std::move(comps), std::move(mu));
}

}  // namespace gradua
