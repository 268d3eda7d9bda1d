#include "gradua/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace gradua {

namespace {

void require_same_table(const TablePtr& a, const TablePtr& b) {
  if (!a || !b) throw Error("polynomial without a table");
  if (!a->same_as(*b)) throw Error("variable table mismatch");
}

// Multiplies two normal-form monomials. Returns false when the product dies
// on an odd square; otherwise fills the merged multidegree and the Koszul
// sign picked up by moving the odd factors of `a` past those of `b`.
bool mul_monomials(const VariableTable& tbl, const Multidegree& a, const Multidegree& b,
                   Multidegree& out, int& sign) {
  sign = 1;
  std::vector<std::pair<int, int>> merged;
  merged.reserve(a.entries().size() + b.entries().size());
  if (tbl.is_super()) {
    // Koszul sign: one transposition for each pair (odd u in a, odd v in b)
    // with index(u) > index(v).
    std::vector<int> odd_a, odd_b;
    for (const auto& [v, e] : a.entries())
      if (tbl.parity_of(v) == Parity::Odd) odd_a.push_back(v);
    for (const auto& [v, e] : b.entries())
      if (tbl.parity_of(v) == Parity::Odd) odd_b.push_back(v);
    long inversions = 0;
    for (int u : odd_a)
      for (int v : odd_b) {
        if (u == v) return false;  // odd square
        if (u > v) ++inversions;
      }
    if (inversions % 2) sign = -1;
  }
  size_t i = 0, j = 0;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  while (i < ea.size() || j < eb.size()) {
    if (j >= eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
      merged.push_back(ea[i++]);
    } else if (i >= ea.size() || eb[j].first < ea[i].first) {
      merged.push_back(eb[j++]);
    } else {
      int var = ea[i].first;
      if (tbl.is_super() && tbl.parity_of(var) == Parity::Odd) return false;
      merged.push_back({var, ea[i].second + eb[j].second});
      ++i;
      ++j;
    }
  }
  out = Multidegree(std::move(merged));
  return true;
}

}  // namespace

GradedPolynomial GradedPolynomial::constant(TablePtr table, const Rational& c) {
  GradedPolynomial p(std::move(table));
  if (c != 0) p.terms_[Multidegree::unit()] = c;
  return p;
}

GradedPolynomial GradedPolynomial::variable(const TablePtr& table, int var) {
  if (var < 0 || var >= table->size()) throw Error("variable index out of range");
  return monomial(table, Multidegree::single(var, 1), 1);
}

GradedPolynomial GradedPolynomial::monomial(TablePtr table, const Multidegree& md, const Rational& c) {
  GradedPolynomial p(std::move(table));
  weight_of(md, *p.table_);  // validates indices and odd squarefreeness
  if (c != 0) p.terms_[md] = c;
  return p;
}

Rational GradedPolynomial::coefficient(const Multidegree& md) const {
  auto it = terms_.find(md);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedPolynomial::set_coefficient(const Multidegree& md, const Rational& c) {
  weight_of(md, *table_);
  if (c == 0)
    terms_.erase(md);
  else
    terms_[md] = c;
}

GradedPolynomial GradedPolynomial::operator+(const GradedPolynomial& o) const {
  require_same_table(table_, o.table_);
  GradedPolynomial r = *this;
  for (const auto& [md, c] : o.terms_) {
    auto it = r.terms_.find(md);
    if (it == r.terms_.end()) {
      r.terms_[md] = c;
    } else {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

GradedPolynomial GradedPolynomial::operator-(const GradedPolynomial& o) const {
  return *this + (-o);
}

GradedPolynomial GradedPolynomial::operator-() const {
  GradedPolynomial r = *this;
  for (auto& [md, c] : r.terms_) c = -c;
  return r;
}

GradedPolynomial GradedPolynomial::operator*(const GradedPolynomial& o) const {
  require_same_table(table_, o.table_);
  GradedPolynomial r(table_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Multidegree prod;
      int sign;
      if (!mul_monomials(*table_, ma, mb, prod, sign)) continue;
      Rational c = ca * cb;
      if (sign < 0) c = -c;
      auto it = r.terms_.find(prod);
      if (it == r.terms_.end()) {
        if (c != 0) r.terms_[prod] = c;
      } else {
        it->second += c;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

GradedPolynomial GradedPolynomial::operator*(const Rational& c) const {
  GradedPolynomial r(table_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [md, coeff] : r.terms_) coeff *= c;
  return r;
}

GradedPolynomial operator*(const Rational& c, const GradedPolynomial& p) { return p * c; }

bool GradedPolynomial::operator==(const GradedPolynomial& o) const {
  require_same_table(table_, o.table_);
  return terms_ == o.terms_;
}

GradedPolynomial GradedPolynomial::graded_component(const Weight& w) const {
  GradedPolynomial r(table_);
  Weight key = w.grading_key();
  for (const auto& [md, c] : terms_)
    if (weight_of(md, *table_).grading_key() == key) r.terms_[md] = c;
  return r;
}

std::map<Weight, GradedPolynomial> GradedPolynomial::weight_components() const {
  std::map<Weight, GradedPolynomial> out;
  for (const auto& [md, c] : terms_) {
    Weight w = weight_of(md, *table_).grading_key();
    auto [it, inserted] = out.try_emplace(w, table_);
    it->second.terms_[md] = c;
  }
  return out;
}

std::optional<Weight> GradedPolynomial::homogeneous_weight() const {
  if (terms_.empty()) return table_ ? table_->zero_weight() : Weight();
  std::optional<Weight> w;
  for (const auto& [md, c] : terms_) {
    Weight mw = weight_of(md, *table_).grading_key();
    if (!w)
      w = mw;
    else if (!(*w == mw))
      return std::nullopt;
  }
  return w;
}

std::optional<Weight> GradedPolynomial::euler_degree() const {
  if (terms_.empty()) return table_->zero_weight();
  Weight candidate = weight_of(terms_.begin()->first, *table_).grading_key();
  for (int c = 0; c < table_->weight_arity(); ++c) {
    // apply sum_v w_c(v) y_v d/dy_v; the operator is diagonal on monomials
    GradedPolynomial applied(table_);
    for (int v = 0; v < table_->size(); ++v) {
      long wv = table_->var(v).weight.grading_key()[c];
      if (wv == 0) continue;
      for (const auto& [md, coeff] : terms_) {
        long e = md.exponent(v);
        if (e == 0) continue;
        applied = applied + GradedPolynomial::monomial(table_, md, coeff * (wv * e));
      }
    }
    if (!(applied == *this * Rational(candidate[c]))) return std::nullopt;
  }
  return candidate;
}

std::optional<Weight> GradedPolynomial::homogeneity_by_substitution() const {
  if (terms_.empty()) return table_->zero_weight();
  int arity = table_->weight_arity();
  // adjoin formal scaling parameters t_0..t_{arity-1} as weight-zero variables
  std::vector<Variable> scratch;
  for (int c = 0; c < arity; ++c) {
    Weight zero = Weight::of_arity(arity);
    if (table_->is_super()) zero.set_parity(Parity::Even);
    scratch.push_back({"@t" + std::to_string(c), zero});
  }
  TablePtr ext = concat_tables(table_, VariableTable::make(std::move(scratch), true));
  int t_base = table_->size();
  // images: y -> prod_c t_c^{w_c(y)} * y
  std::vector<GradedPolynomial> images;
  for (int v = 0; v < table_->size(); ++v) {
    std::vector<std::pair<int, int>> e;
    Weight w = table_->var(v).weight;
    for (int c = 0; c < arity; ++c)
      if (w[c] > 0) e.push_back({t_base + c, static_cast<int>(w[c])});
    e.push_back({v, 1});
    images.push_back(GradedPolynomial::monomial(ext, Multidegree(std::move(e)), 1));
  }
  for (int c = 0; c < arity; ++c)
    images.push_back(GradedPolynomial::variable(ext, t_base + c));  // unused slots
  // lift *this to the extended table
  GradedPolynomial lifted(ext);
  for (const auto& [md, c] : terms_) lifted.set_coefficient(md, c);
  GradedPolynomial scaled = lifted.substitute(images);
  // scaled must equal prod_c t_c^{w_c} * lifted for a single weight w
  Weight w = weight_of(terms_.begin()->first, *table_).grading_key();
  std::vector<std::pair<int, int>> te;
  for (int c = 0; c < arity; ++c)
    if (w[c] > 0) te.push_back({t_base + c, static_cast<int>(w[c])});
  GradedPolynomial expected =
      GradedPolynomial::monomial(ext, Multidegree(std::move(te)), 1) * lifted;
  if (scaled == expected) return w;
  return std::nullopt;
}

GradedPolynomial GradedPolynomial::truncated(const Weight& bound) const {
  GradedPolynomial r(table_);
  for (const auto& [md, c] : terms_)
    if (weight_of(md, *table_).grading_key().within(bound.grading_key())) r.terms_[md] = c;
  return r;
}

long GradedPolynomial::max_total_weight() const {
  long m = 0;
  for (const auto& [md, c] : terms_) m = std::max(m, weight_of(md, *table_).grading_key().total());
  return m;
}

long GradedPolynomial::max_exponent(int var) const {
  long m = 0;
  for (const auto& [md, c] : terms_) m = std::max(m, static_cast<long>(md.exponent(var)));
  return m;
}

Rational GradedPolynomial::evaluate(const Point& p) const {
  require_same_table(table_, p.table);
  if (table_->is_super())
    throw Error("point evaluation requires a purely even table");
  if (static_cast<int>(p.coords.size()) != table_->size()) throw Error("point length mismatch");
  Rational acc = 0;
  for (const auto& [md, c] : terms_) {
    Rational term = c;
    for (const auto& [v, e] : md.entries())
      term *= rational_pow(p.coords[static_cast<size_t>(v)], e);
    acc += term;
  }
  return acc;
}

GradedPolynomial GradedPolynomial::substitute(const std::vector<GradedPolynomial>& images) const {
  if (static_cast<int>(images.size()) < table_->size())
    throw Error("substitution images missing for some variables");
  TablePtr target = images.empty() ? table_ : images[0].table();
  for (const auto& img : images) require_same_table(img.table(), target);
  GradedPolynomial acc(target);
  for (const auto& [md, c] : terms_) {
    GradedPolynomial term = GradedPolynomial::constant(target, c);
    // factors in ascending variable order: matches the stored normal form,
    // so Koszul signs come out of the products themselves
    for (const auto& [v, e] : md.entries()) {
      for (int rep = 0; rep < e; ++rep) term = term * images[static_cast<size_t>(v)];
      if (term.is_zero()) break;
    }
    acc = acc + term;
  }
  return acc;
}

std::string GradedPolynomial::str() const {
  if (terms_.empty()) return "0";
  // sort by (total weight, lex) for readable, deterministic output
  std::vector<const std::pair<const Multidegree, Rational>*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::stable_sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) {
    Weight wa = weight_of(a->first, *table_).grading_key();
    Weight wb = weight_of(b->first, *table_).grading_key();
    if (!(wa == wb)) return wa < wb;
    return Multidegree::lex_cmp(a->first, b->first) > 0;
  });
  std::ostringstream os;
  bool first = true;
  for (auto* t : sorted) {
    const Rational& c = t->second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    Rational a = abs(c);
    if (t->first.is_unit()) {
      os << rational_str(a);
    } else {
      if (a != 1) os << rational_str(a) << "*";
      os << t->first.str(*table_);
    }
  }
  return os.str();
}

namespace {

struct PolyLexer {
  const std::string& s;
  size_t pos = 0;
  explicit PolyLexer(const std::string& text) : s(text) {}
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  char get() {
    skip_ws();
    return s[pos++];
  }
};

}  // namespace

GradedPolynomial parse_polynomial(const TablePtr& table, const std::string& text) {
  PolyLexer lx(text);
  GradedPolynomial acc(table);
  bool expect_term = true;
  int sign = 1;
  auto parse_number = [&]() -> Rational {
    std::string num;
    while (!lx.eof() && std::isdigit(static_cast<unsigned char>(lx.peek()))) num += lx.get();
    if (num.empty()) throw Error("expected a number at position " + std::to_string(lx.pos) + " in: " + text);
    if (lx.peek() == '/') {
      lx.get();
      std::string den;
      while (!lx.eof() && std::isdigit(static_cast<unsigned char>(lx.peek()))) den += lx.get();
      if (den.empty()) throw Error("expected a denominator in: " + text);
      return parse_rational(num + "/" + den);
    }
    return parse_rational(num);
  };
  auto parse_name = [&]() -> std::string {
    std::string name;
    while (!lx.eof() && (std::isalnum(static_cast<unsigned char>(lx.peek())) || lx.peek() == '_' || lx.peek() == '@'))
      name += lx.get();
    return name;
  };
  while (!lx.eof()) {
    char c = lx.peek();
    if (c == '+' || c == '-') {
      lx.get();
      sign = (c == '-') ? -sign : sign;
      expect_term = true;
      continue;
    }
    if (!expect_term) throw Error("expected + or - at position " + std::to_string(lx.pos) + " in: " + text);
    // one term: optional coefficient, then * separated variable powers
    Rational coeff = sign;
    sign = 1;
    std::vector<std::pair<int, int>> entries;
    bool saw_factor = false;
    while (true) {
      char p = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        coeff *= parse_number();
        saw_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(p)) || p == '_' || p == '@') {
        std::string name = parse_name();
        int idx = table->index_of(name);
        if (idx < 0) throw Error("unknown variable '" + name + "' in: " + text);
        int exp = 1;
        if (lx.peek() == '^') {
          lx.get();
          Rational e = parse_number();
          if (e.get_den() != 1 || e < 1) throw Error("bad exponent in: " + text);
          exp = static_cast<int>(e.get_num().get_si());
        }
        bool merged = false;
        for (auto& [v, e0] : entries)
          if (v == idx) {
            e0 += exp;
            merged = true;
          }
        if (!merged) entries.push_back({idx, exp});
        saw_factor = true;
      } else {
        break;
      }
      if (lx.peek() == '*') {
        lx.get();
        continue;
      }
      break;
    }
    if (!saw_factor) throw Error("empty term in: " + text);
    acc = acc + GradedPolynomial::monomial(table, Multidegree(entries), coeff);
    expect_term = false;
  }
  if (expect_term) throw Error("dangling sign in: " + text);
  return acc;
}

GradedPolyMap::GradedPolyMap(TablePtr source, TablePtr target, std::vector<GradedPolynomial> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != target_->size())
    throw Error("map needs one component per target variable");
  for (const auto& c : components_) require_same_table(c.table(), source_);
}

GradedPolyMap GradedPolyMap::identity(const TablePtr& table) {
  std::vector<GradedPolynomial> comps;
  for (int v = 0; v < table->size(); ++v) comps.push_back(GradedPolynomial::variable(table, v));
  return GradedPolyMap(table, table, std::move(comps));
}

GradedPolynomial GradedPolyMap::pullback(const GradedPolynomial& target_poly) const {
  require_same_table(target_poly.table(), target_);
  return target_poly.substitute(components_);
}

Point GradedPolyMap::apply(const Point& p) const {
  require_same_table(p.table, source_);
  QVector out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(p));
  return Point{target_, std::move(out)};
}

GradedPolyMap GradedPolyMap::compose(const GradedPolyMap& inner) const {
  require_same_table(inner.target_, source_);
  std::vector<GradedPolynomial> comps;
  comps.reserve(components_.size());
  for (const auto& c : components_) comps.push_back(c.substitute(inner.components_));
  return GradedPolyMap(inner.source_, target_, std::move(comps));
}

MapCheckReport GradedPolyMap::check_graded() const {
  MapCheckReport rep;
  for (int v = 0; v < target_->size(); ++v) {
    const Weight expect = target_->var(v).weight;
    const GradedPolynomial& comp = components_[static_cast<size_t>(v)];
    auto direct = comp.homogeneous_weight();
    bool weight_ok =
        comp.is_zero() || (direct.has_value() && *direct == expect.grading_key());
    auto symbolic = comp.homogeneity_by_substitution();
    bool weight_ok_symbolic =
        comp.is_zero() || (symbolic.has_value() && *symbolic == expect.grading_key());
    if (weight_ok != weight_ok_symbolic)
      throw Error("internal: homogeneity routes disagree on component " + target_->var(v).name);
    bool parity_ok = true;
    if (!comp.is_zero() && target_->is_super()) {
      // parity of every monomial must match the target variable
      for (const auto& [md, c] : comp.terms()) {
        auto par = weight_of(md, *comp.table()).parity();
        if (par != expect.parity()) parity_ok = false;
      }
    }
    bool ok_direct = weight_ok && parity_ok;
    if (!ok_direct) {
      rep.pass = false;
      std::ostringstream os;
      os << "component of target weight " << expect.str() << " is " << comp.str();
      if (direct.has_value())
        os << " (homogeneous of weight " << direct->str() << ")";
      else
        os << " (inhomogeneous)";
      rep.violations.push_back({target_->var(v).name, os.str()});
    }
  }
  return rep;
}

bool GradedPolyMap::operator==(const GradedPolyMap& o) const {
  if (!source_->same_as(*o.source_) || !target_->same_as(*o.target_)) return false;
  return components_ == o.components_;
}

}  // namespace gradua
