#include "gradua/grading.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <sstream>

namespace gradua {

Weight Weight::operator+(const Weight& o) const {
  if (arity() != o.arity()) throw Error("weight arity mismatch");
  Weight r = *this;
  for (int i = 0; i < arity(); ++i) r.comps_[static_cast<size_t>(i)] += o.comps_[static_cast<size_t>(i)];
  if (parity_ >= 0 || o.parity_ >= 0) {
    if (parity_ < 0 || o.parity_ < 0) throw Error("mixing parity-tagged and untagged weights");
    r.parity_ = (parity_ + o.parity_) % 2;
  }
  return r;
}

Weight Weight::scaled(long e) const {
  Weight r = *this;
  for (auto& c : r.comps_) c *= e;
  if (parity_ >= 0) r.parity_ = static_cast<int>((parity_ * e) % 2);
  return r;
}

bool Weight::within(const Weight& bound) const {
  if (arity() != bound.arity()) throw Error("weight arity mismatch");
  for (int i = 0; i < arity(); ++i)
    if ((*this)[i] > bound[i]) return false;
  return true;
}

std::string Weight::str() const {
  std::ostringstream os;
  if (arity() == 1 && parity_ < 0) {
    os << comps_[0];
    return os.str();
  }
  os << "(";
  for (int i = 0; i < arity(); ++i) {
    if (i) os << ",";
    os << comps_[static_cast<size_t>(i)];
  }
  if (parity_ >= 0) os << (parity_ ? "|odd" : "|even");
  os << ")";
  return os.str();
}

RankVector::RankVector(std::vector<long> counts) : counts_(std::move(counts)) {
  for (long c : counts_)
    if (c < 0) throw Error("negative rank count");
  while (counts_.size() > 1 && counts_.back() == 0) counts_.pop_back();
  if (counts_.empty()) counts_.push_back(0);
}

int RankVector::degree() const {
  for (int w = static_cast<int>(counts_.size()); w >= 1; --w)
    if (counts_[static_cast<size_t>(w - 1)] > 0) return w;
  return 0;
}

long RankVector::total() const {
  long s = 0;
  for (long c : counts_) s += c;
  return s;
}

std::string RankVector::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < counts_.size(); ++i) {
    if (i) os << ",";
    os << counts_[i];
  }
  os << ")";
  return os.str();
}

int SuperRankVector::degree() const {
  int d = 0;
  for (int w = 1; w <= static_cast<int>(std::max(even.size(), odd.size())); ++w) {
    long e = (w <= static_cast<int>(even.size())) ? even[static_cast<size_t>(w - 1)] : 0;
    long o = (w <= static_cast<int>(odd.size())) ? odd[static_cast<size_t>(w - 1)] : 0;
    if (e > 0 || o > 0) d = w;
  }
  return d;
}

long SuperRankVector::total() const {
  long s = 0;
  for (long c : even) s += c;
  for (long c : odd) s += c;
  return s;
}

TablePtr VariableTable::make(std::vector<Variable> vars, bool allow_weight_zero) {
  auto tbl = std::make_shared<VariableTable>();
  tbl->vars_ = std::move(vars);
  if (!tbl->vars_.empty()) tbl->weight_arity_ = tbl->vars_.front().weight.arity();
  bool any_parity = false, all_parity = true;
  for (int i = 0; i < tbl->size(); ++i) {
    const Variable& v = tbl->vars_[static_cast<size_t>(i)];
    if (v.name.empty()) throw Error("empty variable name");
    if (v.weight.arity() != tbl->weight_arity_) throw Error("inconsistent weight arity in table");
    if (!v.weight.nonnegative()) throw Error("negative weight for variable " + v.name);
    if (v.weight.grading_key().is_zero()) {
      if (!allow_weight_zero) throw Error("weight-zero variable " + v.name + " outside a bundle context");
      tbl->has_weight_zero_ = true;
    }
    if (!tbl->index_.emplace(v.name, i).second) throw Error("duplicate variable name " + v.name);
    if (v.weight.parity().has_value()) any_parity = true; else all_parity = false;
  }
  if (any_parity && !all_parity) throw Error("either every variable carries a parity or none does");
  tbl->is_super_ = any_parity;
  return tbl;
}

namespace {

// Canonical letters per weight: y (1), z (2), u (3), v (4), then g<w>.
std::string letter_for_weight(long w) {
  switch (w) {
    case 1: return "y";
    case 2: return "z";
    case 3: return "u";
    case 4: return "v";
    default: return "g" + std::to_string(w);
  }
}

std::string odd_letter_for_weight(long w) {
  switch (w) {
    case 1: return "th";
    case 2: return "xi";
    case 3: return "et";
    case 4: return "ps";
    default: return "o" + std::to_string(w);
  }
}

}  // namespace

TablePtr VariableTable::canonical(const RankVector& dd) {
  std::vector<Variable> vars;
  const auto& counts = dd.counts();
  for (long w = 1; w <= static_cast<long>(counts.size()); ++w) {
    long d = counts[static_cast<size_t>(w - 1)];
    for (long i = 1; i <= d; ++i) {
      std::string name = letter_for_weight(w);
      if (d > 1) name += std::to_string(i);
      vars.push_back({name, Weight(w)});
    }
  }
  return make(std::move(vars));
}

TablePtr VariableTable::canonical_super(const SuperRankVector& dd) {
  std::vector<Variable> vars;
  long k = static_cast<long>(std::max(dd.even.size(), dd.odd.size()));
  for (long w = 1; w <= k; ++w) {
    long de = (w <= static_cast<long>(dd.even.size())) ? dd.even[static_cast<size_t>(w - 1)] : 0;
    long dn = (w <= static_cast<long>(dd.odd.size())) ? dd.odd[static_cast<size_t>(w - 1)] : 0;
    for (long i = 1; i <= de; ++i) {
      std::string name = letter_for_weight(w);
      if (de > 1) name += std::to_string(i);
      vars.push_back({name, Weight(w).set_parity(Parity::Even)});
    }
    for (long i = 1; i <= dn; ++i) {
      std::string name = odd_letter_for_weight(w);
      if (dn > 1) name += std::to_string(i);
      vars.push_back({name, Weight(w).set_parity(Parity::Odd)});
    }
  }
  return make(std::move(vars));
}

int VariableTable::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

bool VariableTable::same_as(const VariableTable& o) const {
  if (this == &o) return true;
  if (size() != o.size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (vars_[static_cast<size_t>(i)].name != o.vars_[static_cast<size_t>(i)].name) return false;
    if (!(vars_[static_cast<size_t>(i)].weight == o.vars_[static_cast<size_t>(i)].weight)) return false;
  }
  return true;
}

TablePtr concat_tables(const TablePtr& base, const TablePtr& extra) {
  std::vector<Variable> vars = base->vars();
  for (const auto& v : extra->vars()) vars.push_back(v);
  return VariableTable::make(std::move(vars), true);
}

Multidegree::Multidegree(std::vector<std::pair<int, int>> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].second <= 0) throw Error("nonpositive exponent in multidegree");
    if (i + 1 < entries_.size() && entries_[i].first == entries_[i + 1].first)
      throw Error("duplicate variable in multidegree");
  }
}

Multidegree Multidegree::single(int var, int exp) {
  return Multidegree({{var, exp}});
}

int Multidegree::exponent(int var) const {
  for (const auto& [v, e] : entries_)
    if (v == var) return e;
  return 0;
}

long Multidegree::total_degree() const {
  long s = 0;
  for (const auto& [v, e] : entries_) s += e;
  return s;
}

int Multidegree::lex_cmp(const Multidegree& a, const Multidegree& b) {
  size_t i = 0, j = 0;
  while (i < a.entries_.size() || j < b.entries_.size()) {
    int va = (i < a.entries_.size()) ? a.entries_[i].first : INT32_MAX;
    int vb = (j < b.entries_.size()) ? b.entries_[j].first : INT32_MAX;
    if (va < vb) return 1;   // a has a positive exponent on an earlier variable
    if (vb < va) return -1;
    int ea = a.entries_[i].second, eb = b.entries_[j].second;
    if (ea != eb) return ea > eb ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

std::string Multidegree::str(const VariableTable& tbl) const {
  if (entries_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : entries_) {
    if (!first) os << "*";
    first = false;
    os << tbl.var(v).name;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

Weight weight_of(const Multidegree& md, const VariableTable& tbl) {
  Weight w = tbl.zero_weight();
  if (tbl.is_super()) w.set_parity(Parity::Even);
  for (const auto& [v, e] : md.entries()) {
    if (v < 0 || v >= tbl.size()) throw Error("multidegree references unknown variable index");
    if (tbl.is_super() && tbl.parity_of(v) == Parity::Odd && e > 1)
      throw Error("odd variable with exponent > 1");
    w = w + tbl.var(v).weight.scaled(e);
  }
  return w;
}

namespace {

void enumerate_rec(const TablePtr& tbl, int var, Weight remaining,
                   std::vector<std::pair<int, int>>& acc,
                   std::vector<Multidegree>& out) {
  if (remaining.grading_key().is_zero()) {
    // remaining variables all get exponent 0
    out.push_back(Multidegree(acc));
    return;
  }
  if (var >= tbl->size()) return;
  const Weight vw = tbl->var(var).weight.grading_key();
  long max_e;
  if (vw.is_zero()) {
    max_e = 0;  // weight-zero variables never appear in positive-weight bases
  } else {
    max_e = LONG_MAX;
    for (int c = 0; c < vw.arity(); ++c) {
      if (vw[c] > 0) max_e = std::min(max_e, remaining[c] / vw[c]);
    }
    if (tbl->is_super() && tbl->parity_of(var) == Parity::Odd) max_e = std::min(max_e, 1L);
  }
  // largest exponent first: descending-lex output order
  for (long e = max_e; e >= 0; --e) {
    Weight rem = remaining;
    bool ok = true;
    for (int c = 0; c < rem.arity(); ++c) {
      rem[c] -= vw[c] * e;
      if (rem[c] < 0) ok = false;
    }
    if (!ok) continue;
    if (e > 0) acc.push_back({var, static_cast<int>(e)});
    enumerate_rec(tbl, var + 1, rem, acc, out);
    if (e > 0) acc.pop_back();
  }
}

}  // namespace

std::vector<Multidegree> enumerate_monomials(const TablePtr& tbl, const Weight& w,
                                             const std::optional<Weight>& truncation) {
  if (!w.nonnegative()) throw Error("negative target weight");
  if (w.arity() != tbl->weight_arity()) throw Error("weight arity does not match table");
  if (truncation && !w.grading_key().within(truncation->grading_key())) return {};
  std::vector<Multidegree> out;
  std::vector<std::pair<int, int>> acc;
  enumerate_rec(tbl, 0, w.grading_key(), acc, out);
  return out;
}

std::map<Weight, std::vector<Multidegree>> enumerate_basis(const TablePtr& tbl, const Weight& bound) {
  std::map<Weight, std::vector<Multidegree>> out;
  // iterate over the box of weights within the bound
  std::vector<long> cur(static_cast<size_t>(bound.arity()), 0);
  while (true) {
    Weight w = Weight::of_arity(bound.arity());
    for (int i = 0; i < bound.arity(); ++i) w[i] = cur[static_cast<size_t>(i)];
    out[w] = enumerate_monomials(tbl, w);
    int pos = bound.arity() - 1;
    while (pos >= 0) {
      if (cur[static_cast<size_t>(pos)] < bound[pos]) {
        ++cur[static_cast<size_t>(pos)];
        break;
      }
      cur[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

long component_dimension(const RankVector& dd, long w) {
  auto tbl = VariableTable::canonical(dd);
  return static_cast<long>(enumerate_monomials(tbl, Weight(w)).size());
}

std::vector<long> dimension_series(const RankVector& dd, long max_weight) {
  std::vector<long> series(static_cast<size_t>(max_weight + 1), 0);
  series[0] = 1;
  const auto& counts = dd.counts();
  for (long i = 1; i <= static_cast<long>(counts.size()); ++i) {
    for (long rep = 0; rep < counts[static_cast<size_t>(i - 1)]; ++rep) {
      // multiply by 1/(1-t^i): prefix sums with stride i
      for (long w = i; w <= max_weight; ++w)
        series[static_cast<size_t>(w)] += series[static_cast<size_t>(w - i)];
    }
  }
  return series;
}

long super_component_dimension(const SuperRankVector& dd, long w) {
  auto tbl = VariableTable::canonical_super(dd);
  return static_cast<long>(enumerate_monomials(tbl, Weight(w)).size());
}

std::vector<long> super_dimension_series(const SuperRankVector& dd, long max_weight) {
  std::vector<long> series(static_cast<size_t>(max_weight + 1), 0);
  series[0] = 1;
  for (long i = 1; i <= static_cast<long>(dd.even.size()); ++i)
    for (long rep = 0; rep < dd.even[static_cast<size_t>(i - 1)]; ++rep)
      for (long w = i; w <= max_weight; ++w)
        series[static_cast<size_t>(w)] += series[static_cast<size_t>(w - i)];
  for (long i = 1; i <= static_cast<long>(dd.odd.size()); ++i)
    for (long rep = 0; rep < dd.odd[static_cast<size_t>(i - 1)]; ++rep)
      // multiply by (1+t^i), descending so each factor is used once
      for (long w = max_weight; w >= i; --w)
        series[static_cast<size_t>(w)] += series[static_cast<size_t>(w - i)];
  return series;
}

}  // namespace gradua
