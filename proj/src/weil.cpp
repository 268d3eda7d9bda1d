#include "gradua/weil.hpp"

#include <algorithm>
#include <sstream>

namespace gradua {

GradedPolynomial TruncatedAlgebra::mul(const GradedPolynomial& p, const GradedPolynomial& q) const {
  return (p * q).truncated(bound_);
}

GradedPolynomial truncate_mul(const GradedPolynomial& p, const GradedPolynomial& q, long k) {
  return (p * q).truncated(Weight(k));
}

namespace {

int sign_of(Parity a, Parity b) {
  return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1;
}

std::string weight_tag(const Weight& w) {
  std::string s;
  for (int c = 0; c < w.arity(); ++c) {
    if (c) s += "_";
    s += std::to_string(w[c]);
  }
  return s;
}

}  // namespace

PresentedGradedAlgebra::PresentedGradedAlgebra(Weight truncation,
                                               std::map<Weight, AlgComponent> comps,
                                               std::map<std::pair<Weight, Weight>, Tensor3> mu)
    : truncation_(std::move(truncation)), comps_(std::move(comps)), mu_(std::move(mu)) {
  const Weight zero = Weight::of_arity(truncation_.arity());
  if (!comps_.count(zero)) comps_[zero] = AlgComponent{1, {}};
  // complete the tensor family: units, missing (super)symmetric partners,
  // zero tensors for declared component pairs
  for (const auto& [w1, c1] : comps_) {
    for (const auto& [w2, c2] : comps_) {
      Weight sum = w1 + w2;
      if (!sum.within(truncation_)) continue;
      auto key = std::make_pair(w1, w2);
      if (mu_.count(key)) continue;
      int nc = dim(sum);
      if (w1 == zero || w2 == zero) {
        // unit multiplication is the canonical identification
        Tensor3 t(c1.dim, c2.dim, nc);
        for (int a = 0; a < c1.dim; ++a)
          for (int b = 0; b < c2.dim; ++b) {
            int out = (w1 == zero) ? b : a;
            t.at(a, b, out) = 1;  // dims of the zero component are validated later
          }
        mu_[key] = std::move(t);
        continue;
      }
      auto rit = mu_.find(std::make_pair(w2, w1));
      if (rit != mu_.end()) {
        Tensor3 t(c1.dim, c2.dim, nc);
        for (int a = 0; a < c1.dim; ++a)
          for (int b = 0; b < c2.dim; ++b) {
            int sg = sign_of(c1.parity_of(a), c2.parity_of(b));
            for (int c = 0; c < nc; ++c)
              t.at(a, b, c) = sg > 0 ? rit->second.at(b, a, c) : -rit->second.at(b, a, c);
          }
        mu_[key] = std::move(t);
        continue;
      }
      mu_[key] = Tensor3(c1.dim, c2.dim, nc);
    }
  }
}

int PresentedGradedAlgebra::dim(const Weight& w) const {
  auto it = comps_.find(w.grading_key());
  return it == comps_.end() ? 0 : it->second.dim;
}

const AlgComponent* PresentedGradedAlgebra::component(const Weight& w) const {
  auto it = comps_.find(w.grading_key());
  return it == comps_.end() ? nullptr : &it->second;
}

bool PresentedGradedAlgebra::is_super() const {
  for (const auto& [w, c] : comps_)
    if (!c.parity.empty()) return true;
  return false;
}

long PresentedGradedAlgebra::total_dim() const {
  long s = 0;
  for (const auto& [w, c] : comps_) s += c.dim;
  return s;
}

const Tensor3& PresentedGradedAlgebra::mu(const Weight& w1, const Weight& w2) const {
  auto it = mu_.find(std::make_pair(w1.grading_key(), w2.grading_key()));
  if (it == mu_.end()) return empty_;
  return it->second;
}

QVector PresentedGradedAlgebra::mul_basis(const Weight& w1, int a, const Weight& w2, int b) const {
  Weight sum = w1.grading_key() + w2.grading_key();
  int nc = sum.within(truncation_) ? dim(sum) : 0;
  QVector out(static_cast<size_t>(nc), Rational(0));
  if (nc == 0) return out;
  const Tensor3& t = mu(w1, w2);
  if (t.nc() == 0) return out;
  for (int c = 0; c < nc; ++c) out[static_cast<size_t>(c)] = t.at(a, b, c);
  return out;
}

PresentedGradedAlgebra::Element PresentedGradedAlgebra::mul(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [w1, v1] : x) {
    for (const auto& [w2, v2] : y) {
      Weight sum = w1 + w2;
      if (!sum.within(truncation_)) continue;
      int nc = dim(sum);
      if (nc == 0) continue;
      const Tensor3& t = mu(w1, w2);
      if (t.nc() == 0) continue;
      QVector& acc = out.try_emplace(sum, QVector(static_cast<size_t>(nc), Rational(0))).first->second;
      for (int a = 0; a < t.na(); ++a) {
        if (v1[static_cast<size_t>(a)] == 0) continue;
        for (int b = 0; b < t.nb(); ++b) {
          if (v2[static_cast<size_t>(b)] == 0) continue;
          Rational f = v1[static_cast<size_t>(a)] * v2[static_cast<size_t>(b)];
          for (int c = 0; c < nc; ++c) acc[static_cast<size_t>(c)] += f * t.at(a, b, c);
        }
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = is_zero_vector(it->second) ? out.erase(it) : std::next(it);
  return out;
}

PresentedGradedAlgebra::Element PresentedGradedAlgebra::basis_element(const Weight& w, int i) const {
  int n = dim(w);
  if (i < 0 || i >= n) throw Error("basis index out of range");
  Element e;
  QVector v(static_cast<size_t>(n), Rational(0));
  v[static_cast<size_t>(i)] = 1;
  e[w.grading_key()] = std::move(v);
  return e;
}

bool PresentedGradedAlgebra::is_zero(const Element& x) {
  for (const auto& [w, v] : x)
    if (!is_zero_vector(v)) return false;
  return true;
}

AlgebraCheckReport PresentedGradedAlgebra::validate() const {
  AlgebraCheckReport rep;
  auto fail = [&](const std::string& what) {
    rep.pass = false;
    rep.violations.push_back({what});
  };
  const Weight zero = Weight::of_arity(truncation_.arity());
  auto zit = comps_.find(zero);
  if (zit == comps_.end() || zit->second.dim != 1)
    fail("grading is not connected: weight-0 component must be 1-dimensional");
  else if (!zit->second.parity.empty() && zit->second.parity[0] != Parity::Even)
    fail("unit must be even");
  for (const auto& [w, c] : comps_) {
    if (!w.nonnegative()) fail("negative weight component " + w.str());
    if (!w.within(truncation_)) fail("component " + w.str() + " beyond the truncation");
    if (c.dim < 0) fail("negative dimension at " + w.str());
    if (!c.parity.empty() && static_cast<int>(c.parity.size()) != c.dim)
      fail("parity vector length mismatch at " + w.str());
  }
  if (!rep.pass) return rep;

  // tensor shapes and parity additivity
  for (const auto& [key, t] : mu_) {
    const auto& [w1, w2] = key;
    Weight sum = w1 + w2;
    const AlgComponent* c1 = component(w1);
    const AlgComponent* c2 = component(w2);
    if (!c1 || !c2 || !sum.within(truncation_)) {
      fail("tensor for undeclared pair (" + w1.str() + "," + w2.str() + ")");
      continue;
    }
    if (t.na() != c1->dim || t.nb() != c2->dim || t.nc() != dim(sum)) {
      fail("tensor shape mismatch at (" + w1.str() + "," + w2.str() + ")");
      continue;
    }
    const AlgComponent* cs = component(sum);
    for (int a = 0; a < t.na(); ++a)
      for (int b = 0; b < t.nb(); ++b)
        for (int c = 0; c < t.nc(); ++c) {
          if (t.at(a, b, c) == 0) continue;
          int want = (static_cast<int>(c1->parity_of(a)) + static_cast<int>(c2->parity_of(b))) % 2;
          if (static_cast<int>(cs->parity_of(c)) != want)
            fail("parity violated in tensor (" + w1.str() + "," + w2.str() + ")");
        }
  }
  if (!rep.pass) return rep;

  // unit law
  for (const auto& [w, c] : comps_) {
    for (int b = 0; b < c.dim; ++b) {
      QVector left = mul_basis(zero, 0, w, b);
      QVector right = mul_basis(w, b, zero, 0);
      QVector expect(static_cast<size_t>(c.dim), Rational(0));
      expect[static_cast<size_t>(b)] = 1;
      if (left != expect || right != expect) {
        fail("unit law fails at weight " + w.str());
        break;
      }
    }
  }

  // supercommutativity
  for (const auto& [key, t] : mu_) {
    const auto& [w1, w2] = key;
    const AlgComponent* c1 = component(w1);
    const AlgComponent* c2 = component(w2);
    const Tensor3& rt = mu(w2, w1);
    for (int a = 0; a < t.na(); ++a)
      for (int b = 0; b < t.nb(); ++b) {
        int sg = sign_of(c1->parity_of(a), c2->parity_of(b));
        for (int c = 0; c < t.nc(); ++c) {
          Rational mirrored = rt.at(b, a, c);
          if (sg < 0) mirrored = -mirrored;
          if (t.at(a, b, c) != mirrored) {
            fail("commutativity fails at (" + w1.str() + "," + w2.str() + ")");
            a = t.na();
            b = t.nb();
            break;
          }
        }
      }
  }
  if (!rep.pass) return rep;

  // associativity on all basis triples
  for (const auto& [wa, ca] : comps_)
    for (const auto& [wb, cb] : comps_)
      for (const auto& [wc, cc] : comps_) {
        Weight sum = wa + wb + wc;
        if (!sum.within(truncation_)) continue;
        for (int a = 0; a < ca.dim; ++a)
          for (int b = 0; b < cb.dim; ++b)
            for (int c = 0; c < cc.dim; ++c) {
              Element left = mul(mul(basis_element(wa, a), basis_element(wb, b)), basis_element(wc, c));
              Element right = mul(basis_element(wa, a), mul(basis_element(wb, b), basis_element(wc, c)));
              if (!(left == right)) {
                std::ostringstream os;
                os << "associativity fails on triple (" << wa.str() << "#" << a << ", " << wb.str()
                   << "#" << b << ", " << wc.str() << "#" << c << ")";
                fail(os.str());
                return rep;
              }
            }
      }
  return rep;
}

PresentedGradedAlgebra model_algebra(const TablePtr& table, const Weight& bound) {
  auto bases = enumerate_basis(table, bound);
  std::map<Weight, AlgComponent> comps;
  std::map<Weight, std::map<std::string, int>> index;  // key: printed monomial
  for (const auto& [w, ms] : bases) {
    AlgComponent c;
    c.dim = static_cast<int>(ms.size());
    if (table->is_super()) {
      for (const auto& m : ms)
        c.parity.push_back(weight_of(m, *table).parity().value_or(Parity::Even));
    }
    comps[w] = std::move(c);
    auto& ix = index[w];
    for (int i = 0; i < static_cast<int>(ms.size()); ++i) ix[ms[static_cast<size_t>(i)].str(*table)] = i;
  }
  std::map<std::pair<Weight, Weight>, Tensor3> mu;
  for (const auto& [w1, ms1] : bases) {
    for (const auto& [w2, ms2] : bases) {
      Weight sum = w1 + w2;
      if (!sum.within(bound)) continue;
      const auto& target = bases.at(sum);
      Tensor3 t(static_cast<int>(ms1.size()), static_cast<int>(ms2.size()),
                static_cast<int>(target.size()));
      for (int a = 0; a < t.na(); ++a)
        for (int b = 0; b < t.nb(); ++b) {
          GradedPolynomial prod =
              GradedPolynomial::monomial(table, ms1[static_cast<size_t>(a)], 1) *
              GradedPolynomial::monomial(table, ms2[static_cast<size_t>(b)], 1);
          for (const auto& [md, coeff] : prod.terms()) {
            auto it = index.at(sum).find(md.str(*table));
            if (it == index.at(sum).end()) throw Error("internal: product monomial missing from basis");
            t.at(a, b, it->second) = coeff;
          }
        }
      mu[std::make_pair(w1, w2)] = std::move(t);
    }
  }
  return PresentedGradedAlgebra(bound, std::move(comps), std::move(mu));
}

PresentedGradedAlgebra model_algebra(const RankVector& dd, long k) {
  return model_algebra(VariableTable::canonical(dd), Weight(k));
}

GradedSubspace nilradical(const PresentedGradedAlgebra& A) {
  const Weight zero = Weight::of_arity(A.truncation().arity());
  if (A.dim(zero) != 1) throw Error("nilradical requires a connected algebra");
  GradedSubspace out;
  for (const auto& [w, c] : A.components()) {
    if (w.is_zero()) continue;
    RowSpan span(c.dim);
    for (int i = 0; i < c.dim; ++i) {
      QVector v(static_cast<size_t>(c.dim), Rational(0));
      v[static_cast<size_t>(i)] = 1;
      span.add(std::move(v));
    }
    out.spans.emplace(w, std::move(span));
  }
  // ideal property: products of positive-weight elements stay in positive
  // weights; the grading makes this structural, asserted here
  for (const auto& [w1, c1] : A.components()) {
    if (w1.is_zero()) continue;
    for (const auto& [w2, c2] : A.components()) {
      Weight sum = w1 + w2;
      if (!sum.within(A.truncation())) continue;
      if (sum.is_zero()) throw Error("internal: positive weights summed to zero");
    }
  }
  return out;
}

namespace {

// spans of N^m per weight; N = positive-weight part
std::map<Weight, RowSpan> power_of_nilradical(const PresentedGradedAlgebra& A, long m) {
  std::map<Weight, RowSpan> cur;
  for (const auto& [w, c] : A.components()) {
    if (w.is_zero() || c.dim == 0) continue;
    RowSpan span(c.dim);
    for (int i = 0; i < c.dim; ++i) {
      QVector v(static_cast<size_t>(c.dim), Rational(0));
      v[static_cast<size_t>(i)] = 1;
      span.add(std::move(v));
    }
    cur.emplace(w, std::move(span));
  }
  for (long step = 1; step < m; ++step) {
    std::map<Weight, RowSpan> next;
    for (const auto& [w1, c1] : A.components()) {
      if (w1.is_zero()) continue;
      for (const auto& [w2, span2] : cur) {
        Weight sum = w1 + w2;
        if (!sum.within(A.truncation())) continue;
        int nc = A.dim(sum);
        if (nc == 0) continue;
        auto it = next.try_emplace(sum, RowSpan(nc)).first;
        const Tensor3& t = A.mu(w1, w2);
        if (t.nc() == 0) continue;
        for (int a = 0; a < c1.dim; ++a) {
          for (const auto& row : span2.rows()) {
            QVector prod(static_cast<size_t>(nc), Rational(0));
            for (int b = 0; b < t.nb(); ++b) {
              if (row[static_cast<size_t>(b)] == 0) continue;
              for (int c = 0; c < nc; ++c)
                prod[static_cast<size_t>(c)] += row[static_cast<size_t>(b)] * t.at(a, b, c);
            }
            it->second.add(std::move(prod));
          }
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

long span_total(const std::map<Weight, RowSpan>& spans) {
  long s = 0;
  for (const auto& [w, sp] : spans) s += sp.dim();
  return s;
}

}  // namespace

long algebra_order(const PresentedGradedAlgebra& A) {
  const Weight zero = Weight::of_arity(A.truncation().arity());
  if (A.dim(zero) != 1) throw Error("order requires a connected algebra");
  long cap = A.truncation().total();
  long order = 0;
  for (long m = 1; m <= cap + 1; ++m) {
    if (span_total(power_of_nilradical(A, m)) == 0) break;
    order = m;
  }
  return order;
}

long GeneratorSpace::count(const Weight& w) const {
  auto it = lifts.find(w.grading_key());
  return it == lifts.end() ? 0 : static_cast<long>(it->second.size());
}

long GeneratorSpace::total() const {
  long s = 0;
  for (const auto& [w, ls] : lifts) s += static_cast<long>(ls.size());
  return s;
}

RankVector GeneratorSpace::rank_vector() const {
  std::vector<long> counts;
  for (const auto& [w, ls] : lifts) {
    if (w.arity() != 1) throw Error("rank vector of non-scalar generators");
    long ww = w[0];
    if (static_cast<long>(counts.size()) < ww) counts.resize(static_cast<size_t>(ww), 0);
    counts[static_cast<size_t>(ww - 1)] += static_cast<long>(ls.size());
  }
  if (counts.empty()) counts.push_back(0);
  return RankVector(counts);
}

SuperRankVector GeneratorSpace::super_rank_vector() const {
  SuperRankVector out;
  for (const auto& [w, ls] : lifts) {
    if (w.arity() != 1) throw Error("rank vector of non-scalar generators");
    size_t ww = static_cast<size_t>(w[0]);
    if (out.even.size() < ww) out.even.resize(ww, 0);
    if (out.odd.size() < ww) out.odd.resize(ww, 0);
    const auto& ps = parities.at(w);
    for (size_t i = 0; i < ls.size(); ++i)
      (ps[i] == Parity::Odd ? out.odd : out.even)[ww - 1] += 1;
  }
  return out;
}

TablePtr GeneratorSpace::table() const {
  bool scalar = true;
  bool super = false;
  for (const auto& [w, ls] : lifts) {
    if (w.arity() != 1) scalar = false;
    const auto& ps = parities.at(w);
    for (Parity p : ps)
      if (p == Parity::Odd) super = true;
  }
  if (scalar && !super) return VariableTable::canonical(rank_vector());
  if (scalar) return VariableTable::canonical_super(super_rank_vector());
  // tuple weights: systematic names g<w1>_<w2>..._<i>
  std::vector<Variable> vars;
  for (const auto& [w, ls] : lifts) {
    const auto& ps = parities.at(w);
    for (size_t i = 0; i < ls.size(); ++i) {
      Weight vw = w;
      if (super) vw.set_parity(ps[i]);
      vars.push_back({"g" + weight_tag(w) + "_" + std::to_string(i + 1), vw});
    }
  }
  return VariableTable::make(std::move(vars));
}

GeneratorSpace extract_generators(const PresentedGradedAlgebra& A) {
  const Weight zero = Weight::of_arity(A.truncation().arity());
  if (A.dim(zero) != 1) throw Error("generator extraction requires a connected algebra");
  GeneratorSpace out;
  for (const auto& [w, comp] : A.components()) {
    if (w.is_zero() || comp.dim == 0) continue;
    // products subspace sum_{0 < w1 < w} mu(A_{w1}, A_{w - w1})
    RowSpan products(comp.dim);
    for (const auto& [w1, c1] : A.components()) {
      if (w1.is_zero()) continue;
      bool proper = false;
      Weight w2 = Weight::of_arity(w.arity());
      bool valid = true;
      for (int c = 0; c < w.arity(); ++c) {
        long diff = w[c] - w1[c];
        if (diff < 0) valid = false;
        w2[c] = diff;
      }
      proper = valid && !w2.is_zero();
      if (!proper) continue;
      const AlgComponent* c2 = A.component(w2);
      if (!c2 || c2->dim == 0) continue;
      for (int a = 0; a < c1.dim; ++a)
        for (int b = 0; b < c2->dim; ++b) products.add(A.mul_basis(w1, a, w2, b));
    }
    std::vector<QVector> lifts;
    std::vector<Parity> pars;
    // even lifts first within a weight, matching the canonical table layout
    for (Parity want : {Parity::Even, Parity::Odd}) {
      for (int j : products.complement()) {
        if (comp.parity_of(j) != want) continue;
        QVector lift(static_cast<size_t>(comp.dim), Rational(0));
        lift[static_cast<size_t>(j)] = 1;
        lifts.push_back(std::move(lift));
        pars.push_back(want);
      }
    }
    if (!lifts.empty()) {
      out.lifts[w] = std::move(lifts);
      out.parities[w] = std::move(pars);
    }
  }
  return out;
}

QVector evaluate_generator_monomial(const PresentedGradedAlgebra& A, const GeneratorSpace& gens,
                                    const TablePtr& gen_table, const Multidegree& md) {
  Weight target = weight_of(md, *gen_table).grading_key();
  int nc = A.dim(target);
  // running homogeneous element (weight, coords)
  Weight cur_w = Weight::of_arity(A.truncation().arity());
  QVector cur(1, Rational(1));
  // map generator table order back to (weight, slot)
  for (const auto& [v, e] : md.entries()) {
    const Weight vw = gen_table->var(v).weight.grading_key();
    // slot of v within its weight group: count same-weight variables before
    int slot = 0;
    for (int u = 0; u < v; ++u)
      if (gen_table->var(u).weight.grading_key() == vw) ++slot;
    const QVector& lift = gens.lifts.at(vw)[static_cast<size_t>(slot)];
    for (int rep = 0; rep < e; ++rep) {
      Weight next_w = cur_w + vw;
      int next_dim = next_w.within(A.truncation()) ? A.dim(next_w) : 0;
      QVector next(static_cast<size_t>(next_dim), Rational(0));
      if (next_dim > 0) {
        const Tensor3& t = A.mu(cur_w, vw);
        if (t.nc() != 0) {
          for (int a = 0; a < t.na(); ++a) {
            if (cur[static_cast<size_t>(a)] == 0) continue;
            for (int b = 0; b < t.nb(); ++b) {
              if (lift[static_cast<size_t>(b)] == 0) continue;
              Rational f = cur[static_cast<size_t>(a)] * lift[static_cast<size_t>(b)];
              for (int c = 0; c < next_dim; ++c) next[static_cast<size_t>(c)] += f * t.at(a, b, c);
            }
          }
        }
      }
      cur_w = next_w;
      cur = std::move(next);
      if (cur.empty()) break;
    }
    if (cur.empty() && !(cur_w == target)) break;
  }
  if (!(cur_w == target) || static_cast<int>(cur.size()) != nc)
    return QVector(static_cast<size_t>(nc), Rational(0));
  return cur;
}

FreenessReport check_free(const PresentedGradedAlgebra& A, const Weight& bound) {
  auto valid = A.validate();
  if (!valid.pass) throw Error("not a valid presented algebra: " + valid.violations.front().what);
  if (bound.arity() != A.truncation().arity()) throw Error("bound arity mismatch");
  if (bound.arity() == 1) {
    long r = algebra_order(A);
    if (r > bound[0]) throw Error("algebra order exceeds the requested bound");
  }
  for (const auto& [w, c] : A.components())
    if (!w.within(bound) && c.dim > 0) throw Error("component beyond the requested bound");

  FreenessReport rep;
  rep.generators = extract_generators(A);
  rep.generator_table = rep.generators.table();
  rep.free = true;
  auto model_bases = enumerate_basis(rep.generator_table, bound);
  for (const auto& [w, monomials] : model_bases) {
    if (w.is_zero()) continue;
    long dim_a = A.dim(w);
    long dim_model = static_cast<long>(monomials.size());
    rep.dimension_table[w] = {dim_a, dim_model};
    if (monomials.empty()) {
      if (dim_a != 0) throw Error("internal: generators fail to span weight " + w.str());
      continue;
    }
    std::vector<QVector> cols;
    cols.reserve(monomials.size());
    for (const auto& md : monomials)
      cols.push_back(evaluate_generator_monomial(A, rep.generators, rep.generator_table, md));
    QMatrix eval = QMatrix::from_columns(cols);
    if (eval.rank() != dim_a)
      throw Error("internal: generators fail to span weight " + w.str());
    if (rep.free) {
      auto ker = eval.kernel();
      if (!ker.empty()) {
        rep.free = false;
        rep.deficient_weight = w;
        GradedPolynomial witness(rep.generator_table);
        for (size_t i = 0; i < monomials.size(); ++i)
          if (ker[0][i] != 0)
            witness = witness + GradedPolynomial::monomial(rep.generator_table, monomials[i], ker[0][i]);
        // sanity: the witness really vanishes in A and is a nonzero polynomial
        if (witness.is_zero()) throw Error("internal: zero witness");
        QVector value(static_cast<size_t>(A.dim(w)), Rational(0));
        for (const auto& [md, coeff] : witness.terms()) {
          QVector mv = evaluate_generator_monomial(A, rep.generators, rep.generator_table, md);
          for (size_t c = 0; c < value.size(); ++c) value[c] += coeff * mv[c];
        }
        if (!is_zero_vector(value)) throw Error("internal: witness does not vanish");
        rep.witness = std::move(witness);
      }
    }
  }
  // components of A outside the enumerated box would be missed only if the
  // bound excluded them; that was rejected above
  return rep;
}

FreenessReport check_free(const PresentedGradedAlgebra& A, long k) {
  return check_free(A, Weight(k));
}

ModelIso iso_to_model(const PresentedGradedAlgebra& A, const Weight& bound) {
  FreenessReport rep = check_free(A, bound);
  if (!rep.free) {
    throw Error("algebra is not free; witness relation: " + rep.witness->str() + " at weight " +
                rep.deficient_weight->str());
  }
  ModelIso iso;
  iso.model_table = rep.generator_table;
  auto model_bases = enumerate_basis(iso.model_table, bound);
  for (const auto& [w, monomials] : model_bases) {
    if (monomials.empty()) continue;
    std::vector<QVector> cols;
    for (const auto& md : monomials)
      cols.push_back(evaluate_generator_monomial(A, rep.generators, iso.model_table, md));
    QMatrix from = QMatrix::from_columns(cols);
    auto inv = from.inverse();
    if (!inv) throw Error("internal: free evaluation matrix is singular");
    iso.from_model[w] = from;
    iso.to_model[w] = *inv;
  }
  // the iso intertwines multiplication on every basis pair
  PresentedGradedAlgebra model = model_algebra(iso.model_table, bound);
  for (const auto& [w1, ms1] : model_bases) {
    for (const auto& [w2, ms2] : model_bases) {
      Weight sum = w1 + w2;
      if (!sum.within(bound) || ms1.empty() || ms2.empty()) continue;
      for (int a = 0; a < static_cast<int>(ms1.size()); ++a)
        for (int b = 0; b < static_cast<int>(ms2.size()); ++b) {
          QVector prod_model = model.mul_basis(w1, a, w2, b);  // coords over model monomials
          QVector lhs = iso.from_model.at(sum).apply(prod_model);
          // mu_A(from(a), from(b))
          QVector fa = iso.from_model.at(w1).column(a);
          QVector fb = iso.from_model.at(w2).column(b);
          const Tensor3& t = A.mu(w1, w2);
          QVector rhs(static_cast<size_t>(A.dim(sum)), Rational(0));
          if (t.nc() != 0)
            for (int i = 0; i < t.na(); ++i)
              for (int j = 0; j < t.nb(); ++j) {
                if (fa[static_cast<size_t>(i)] == 0 || fb[static_cast<size_t>(j)] == 0) continue;
                Rational f = fa[static_cast<size_t>(i)] * fb[static_cast<size_t>(j)];
                for (int c = 0; c < t.nc(); ++c) rhs[static_cast<size_t>(c)] += f * t.at(i, j, c);
              }
          if (lhs != rhs) throw Error("internal: iso does not intertwine multiplication");
        }
    }
  }
  return iso;
}

PresentedGradedAlgebra conjugate(const PresentedGradedAlgebra& A,
                                 const std::map<Weight, QMatrix>& B) {
  std::map<Weight, QMatrix> fwd, inv;
  for (const auto& [w, c] : A.components()) {
    auto it = B.find(w);
    QMatrix m = (it != B.end()) ? it->second : QMatrix::identity(c.dim);
    if (m.rows() != c.dim || m.cols() != c.dim) throw Error("basis-change shape mismatch");
    auto mi = m.inverse();
    if (!mi) throw Error("basis change is singular");
    fwd[w] = m;
    inv[w] = *mi;
  }
  std::map<std::pair<Weight, Weight>, Tensor3> mu;
  for (const auto& [w1, c1] : A.components())
    for (const auto& [w2, c2] : A.components()) {
      Weight sum = w1 + w2;
      if (!sum.within(A.truncation())) continue;
      int nc = A.dim(sum);
      Tensor3 t(c1.dim, c2.dim, nc);
      const QMatrix& b1 = fwd.at(w1);
      const QMatrix& b2 = fwd.at(w2);
      const QMatrix& binv = inv.at(sum);
      const Tensor3& told = A.mu(w1, w2);
      for (int a = 0; a < c1.dim; ++a)
        for (int b = 0; b < c2.dim; ++b) {
          QVector v(static_cast<size_t>(nc), Rational(0));
          if (told.nc() != 0)
            for (int ja = 0; ja < c1.dim; ++ja) {
              if (b1.at(ja, a) == 0) continue;
              for (int jb = 0; jb < c2.dim; ++jb) {
                if (b2.at(jb, b) == 0) continue;
                Rational f = b1.at(ja, a) * b2.at(jb, b);
                for (int c = 0; c < nc; ++c) v[static_cast<size_t>(c)] += f * told.at(ja, jb, c);
              }
            }
          QVector coords = binv.apply(v);
          for (int c = 0; c < nc; ++c) t.at(a, b, c) = coords[static_cast<size_t>(c)];
        }
      mu[std::make_pair(w1, w2)] = std::move(t);
    }
  std::map<Weight, AlgComponent> comps = A.components();
  return PresentedGradedAlgebra(A.truncation(), std::move(comps), std::move(mu));
}

PresentedGradedAlgebra quotient_by(const PresentedGradedAlgebra& A, const Weight& w0,
                                   const QVector& relation) {
  if (static_cast<int>(relation.size()) != A.dim(w0) || is_zero_vector(relation))
    throw Error("relation must be a nonzero vector of the stated weight");
  // principal graded ideal spans: I_{w0+w} = mu(relation, A_w)
  std::map<Weight, RowSpan> ideal;
  for (const auto& [w2, c2] : A.components()) {
    Weight sum = w0 + w2;
    if (!sum.within(A.truncation())) continue;
    int nc = A.dim(sum);
    if (nc == 0) continue;
    auto it = ideal.try_emplace(sum, RowSpan(nc)).first;
    const Tensor3& t = A.mu(w0, w2);
    if (t.nc() == 0) continue;
    for (int b = 0; b < c2.dim; ++b) {
      QVector prod(static_cast<size_t>(nc), Rational(0));
      for (int a = 0; a < t.na(); ++a) {
        if (relation[static_cast<size_t>(a)] == 0) continue;
        for (int c = 0; c < nc; ++c)
          prod[static_cast<size_t>(c)] += relation[static_cast<size_t>(a)] * t.at(a, b, c);
      }
      it->second.add(std::move(prod));
    }
  }
  // quotient bases: complement coordinates per weight
  struct Quot {
    std::vector<int> reps;  // representative coordinate per new basis vector
    const RowSpan* span = nullptr;
  };
  std::map<Weight, Quot> quots;
  std::map<Weight, AlgComponent> comps;
  for (const auto& [w, c] : A.components()) {
    auto iit = ideal.find(w);
    Quot q;
    if (iit != ideal.end()) {
      q.reps = iit->second.complement();
      q.span = &iit->second;
    } else {
      for (int i = 0; i < c.dim; ++i) q.reps.push_back(i);
    }
    AlgComponent nc;
    nc.dim = static_cast<int>(q.reps.size());
    if (!c.parity.empty())
      for (int r : q.reps) nc.parity.push_back(c.parity_of(r));
    comps[w] = std::move(nc);
    quots[w] = std::move(q);
  }
  auto project = [&](const Weight& w, QVector v) {
    const Quot& q = quots.at(w);
    if (q.span) {
      // reduce modulo the ideal: pivot coordinates become zero
      QVector reduced = v;
      for (size_t r = 0; r < q.span->rows().size(); ++r) {
        Rational f = reduced[static_cast<size_t>(q.span->pivots()[r])];
        if (f == 0) continue;
        for (size_t j = 0; j < reduced.size(); ++j)
          reduced[j] -= f * q.span->rows()[r][j];
      }
      v = std::move(reduced);
    }
    QVector out;
    out.reserve(q.reps.size());
    for (int r : q.reps) out.push_back(v[static_cast<size_t>(r)]);
    return out;
  };
  std::map<std::pair<Weight, Weight>, Tensor3> mu;
  for (const auto& [w1, c1] : comps)
    for (const auto& [w2, c2] : comps) {
      Weight sum = w1 + w2;
      if (!sum.within(A.truncation())) continue;
      Tensor3 t(c1.dim, c2.dim, comps.at(sum).dim);
      for (int a = 0; a < c1.dim; ++a)
        for (int b = 0; b < c2.dim; ++b) {
          QVector prod = A.mul_basis(w1, quots.at(w1).reps[static_cast<size_t>(a)], w2,
                                     quots.at(w2).reps[static_cast<size_t>(b)]);
          QVector coords = project(sum, std::move(prod));
          for (int c = 0; c < t.nc(); ++c) t.at(a, b, c) = coords[static_cast<size_t>(c)];
        }
      mu[std::make_pair(w1, w2)] = std::move(t);
    }
  return PresentedGradedAlgebra(A.truncation(), std::move(comps), std::move(mu));
}

}  // namespace gradua
