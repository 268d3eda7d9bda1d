#ifndef GRADUA_GRADING_HPP
#define GRADUA_GRADING_HPP

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradua/rational.hpp"

namespace gradua {

enum class Parity : int { Even = 0, Odd = 1 };

// A point of the weight lattice. Plain N-gradings have arity 1, bi-gradings
// arity 2. The parity slot is carried only in super contexts, where it is
// the Z_2 component of the N x Z_2 bi-grading.
class Weight {
 public:
  Weight() : comps_(1, 0) {}
  explicit Weight(long w) : comps_(1, w) {}
  Weight(std::initializer_list<long> comps) : comps_(comps) {}
  static Weight of_arity(int arity, long fill = 0) {
    Weight w;
    w.comps_.assign(static_cast<size_t>(arity), fill);
    return w;
  }

  int arity() const { return static_cast<int>(comps_.size()); }
  long operator[](int i) const { return comps_[static_cast<size_t>(i)]; }
  long& operator[](int i) { return comps_[static_cast<size_t>(i)]; }
  long total() const {
    long s = 0;
    for (long c : comps_) s += c;
    return s;
  }
  bool is_zero() const {
    for (long c : comps_)
      if (c != 0) return false;
    return true;
  }
  bool nonnegative() const {
    for (long c : comps_)
      if (c < 0) return false;
    return true;
  }

  std::optional<Parity> parity() const {
    if (parity_ < 0) return std::nullopt;
    return parity_ == 0 ? Parity::Even : Parity::Odd;
  }
  Weight& set_parity(Parity p) {
    parity_ = (p == Parity::Odd) ? 1 : 0;
    return *this;
  }
  Weight& clear_parity() {
    parity_ = -1;
    return *this;
  }
  // The grading key identifies the weight component, ignoring parity. Graded
  // components of super algebras are indexed by this; the parity split is
  // tracked per basis element.
  Weight grading_key() const {
    Weight w = *this;
    w.parity_ = -1;
    return w;
  }

  Weight operator+(const Weight& o) const;
  Weight scaled(long e) const;  // e-fold sum (parity times e mod 2)

  // exact componentwise comparison; parities must match arity-wise
  bool operator==(const Weight& o) const {
    return comps_ == o.comps_ && parity_ == o.parity_;
  }
  std::strong_ordering operator<=>(const Weight& o) const {
    if (auto c = comps_ <=> o.comps_; c != 0) return c;
    return parity_ <=> o.parity_;
  }
  // componentwise <=, used for truncation bounds; parity ignored
  bool within(const Weight& bound) const;

  std::string str() const;

 private:
  std::vector<long> comps_;
  int parity_ = -1;  // -1: no parity slot
};

// d = (d_1, ..., d_k): number of fiber generators per weight. Degree is the
// highest weight with a nonzero count.
class RankVector {
 public:
  RankVector() = default;
  explicit RankVector(std::vector<long> counts);

  int degree() const;  // 0 when all counts vanish
  long count(long w) const {
    return (w >= 1 && w <= static_cast<long>(counts_.size()))
               ? counts_[static_cast<size_t>(w - 1)]
               : 0;
  }
  long total() const;
  const std::vector<long>& counts() const { return counts_; }
  bool operator==(const RankVector&) const = default;
  std::string str() const;

 private:
  std::vector<long> counts_;
};

// Super rank vector d-bar = (d_{0,1}, ..., d_{0,k} | d_{1,1}, ..., d_{1,k}).
struct SuperRankVector {
  std::vector<long> even;
  std::vector<long> odd;
  int degree() const;
  long total() const;
  bool operator==(const SuperRankVector&) const = default;
};

struct Variable {
  std::string name;
  Weight weight;  // parity slot present iff the table is super
};

class VariableTable;
using TablePtr = std::shared_ptr<const VariableTable>;

// An ordered list of named, weighted (and possibly parity-tagged) variables.
// Weight-zero entries model base coordinates and are only legal in bundle
// contexts (allow_weight_zero).
class VariableTable {
 public:
  static TablePtr make(std::vector<Variable> vars, bool allow_weight_zero = false);
  // Canonical fiber coordinates of R^d: letters y, z, u, v, ... by weight,
  // indexed when a weight has more than one generator.
  static TablePtr canonical(const RankVector& dd);
  static TablePtr canonical_super(const SuperRankVector& dd);

  int size() const { return static_cast<int>(vars_.size()); }
  const Variable& var(int i) const { return vars_[static_cast<size_t>(i)]; }
  int index_of(const std::string& name) const;  // -1 when absent
  bool is_super() const { return is_super_; }
  int weight_arity() const { return weight_arity_; }
  bool has_weight_zero() const { return has_weight_zero_; }
  Parity parity_of(int i) const {
    auto p = vars_[static_cast<size_t>(i)].weight.parity();
    return p.value_or(Parity::Even);
  }

  bool same_as(const VariableTable& o) const;

  // Zero weight of matching arity (no parity slot).
  Weight zero_weight() const { return Weight::of_arity(weight_arity_); }

  const std::vector<Variable>& vars() const { return vars_; }

 private:
  std::vector<Variable> vars_;
  std::map<std::string, int> index_;
  bool is_super_ = false;
  bool has_weight_zero_ = false;
  int weight_arity_ = 1;
};

// Appends the variables of `extra` to `base` (names must stay unique).
TablePtr concat_tables(const TablePtr& base, const TablePtr& extra);

// Sparse exponent vector over a table; entries sorted by variable index with
// positive exponents. Odd variables are structurally squarefree: exponents
// above 1 never arise for them.
class Multidegree {
 public:
  Multidegree() = default;
  explicit Multidegree(std::vector<std::pair<int, int>> entries);
  static Multidegree unit() { return Multidegree(); }
  static Multidegree single(int var, int exp);

  bool is_unit() const { return entries_.empty(); }
  int exponent(int var) const;
  long total_degree() const;
  const std::vector<std::pair<int, int>>& entries() const { return entries_; }

  bool operator==(const Multidegree&) const = default;
  // Descending-exponent lexicographic order on the dense exponent vector:
  // y^2 sorts before y*z sorts before z^2. Deterministic term order for all
  // bases and printed output.
  static int lex_cmp(const Multidegree& a, const Multidegree& b);
  struct LexGreater {
    bool operator()(const Multidegree& a, const Multidegree& b) const {
      return lex_cmp(a, b) > 0;
    }
  };

  std::string str(const VariableTable& tbl) const;

 private:
  std::vector<std::pair<int, int>> entries_;
};

// Sum of exponent * weight over the entries; parity is the odd-exponent sum
// mod 2 when the table is super. Unknown indices are structural errors.
Weight weight_of(const Multidegree& md, const VariableTable& tbl);

// All multidegrees over tbl of the exact grading key w (parity on w is
// ignored; each result carries its own parity via weight_of). Odd variables
// squarefree. Output sorted descending-lex, deterministic. The optional
// truncation bound empties the result when w exceeds it.
std::vector<Multidegree> enumerate_monomials(
    const TablePtr& tbl, const Weight& w,
    const std::optional<Weight>& truncation = std::nullopt);

// Monomial bases for every weight within the componentwise bound, keyed by
// grading key.
std::map<Weight, std::vector<Multidegree>> enumerate_basis(
    const TablePtr& tbl, const Weight& bound);

// dim A^w(R^d) by direct enumeration over the canonical table.
long component_dimension(const RankVector& dd, long w);

// Same dimension from the Hilbert series prod_i (1-t^i)^{-d_i}; kept as an
// independent route for cross-checks.
std::vector<long> dimension_series(const RankVector& dd, long max_weight);

// Super variants: enumeration counts all squarefree-odd monomials of scalar
// weight w; the series is prod_i (1+t^i)^{d_odd_i} / (1-t^i)^{d_even_i}.
long super_component_dimension(const SuperRankVector& dd, long w);
std::vector<long> super_dimension_series(const SuperRankVector& dd, long max_weight);

}  // namespace gradua

#endif
