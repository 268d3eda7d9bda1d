#ifndef GRADUA_POLYNOMIAL_HPP
#define GRADUA_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradua/grading.hpp"

namespace gradua {

// Rational coordinates of a point, one per table variable. Only meaningful
// over purely even tables.
struct Point {
  TablePtr table;
  QVector coords;
};

// Sparse polynomial over a weighted variable table with exact rational
// coefficients. Monomials are kept in a canonical normal form: odd variables
// appear squarefree in ascending order with the Koszul sign folded into the
// coefficient, and zero coefficients are never stored.
class GradedPolynomial {
 public:
  using TermMap = std::map<Multidegree, Rational, Multidegree::LexGreater>;

  GradedPolynomial() = default;
  explicit GradedPolynomial(TablePtr table) : table_(std::move(table)) {}
  static GradedPolynomial constant(TablePtr table, const Rational& c);
  static GradedPolynomial variable(const TablePtr& table, int var);
  static GradedPolynomial monomial(TablePtr table, const Multidegree& md, const Rational& c);

  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Multidegree& md) const;
  void set_coefficient(const Multidegree& md, const Rational& c);

  GradedPolynomial operator+(const GradedPolynomial& o) const;
  GradedPolynomial operator-(const GradedPolynomial& o) const;
  GradedPolynomial operator-() const;
  // Supercommutative product: Koszul signs are applied while reordering odd
  // factors, and squares of odd variables vanish structurally.
  GradedPolynomial operator*(const GradedPolynomial& o) const;
  GradedPolynomial operator*(const Rational& c) const;
  bool operator==(const GradedPolynomial& o) const;

  // Terms whose grading key equals w (parity of w ignored).
  GradedPolynomial graded_component(const Weight& w) const;
  std::map<Weight, GradedPolynomial> weight_components() const;

  // Weight shared by every stored monomial, by direct inspection. The zero
  // polynomial reports weight 0.
  std::optional<Weight> homogeneous_weight() const;

  // Eigenvector test for the weight vector field sum_y w(y) y d/dy: returns w
  // with (weight operator)p = w p, component by component. Kept separate from
  // homogeneous_weight as an independent route to the same answer.
  std::optional<Weight> euler_degree() const;

  // Third route: substitute y -> t^{w(y)} y for formal parameters t (one per
  // weight component) and test p(h_t x) = t^w p(x) as a polynomial identity.
  std::optional<Weight> homogeneity_by_substitution() const;

  // Drops monomials whose grading key exceeds the componentwise bound.
  GradedPolynomial truncated(const Weight& bound) const;

  long max_total_weight() const;
  long max_exponent(int var) const;

  Rational evaluate(const Point& p) const;

  // Substitutes images[i] for variable i. All images live over one common
  // table. Odd-variable images must have odd parity for signs to stay
  // consistent; this is the caller's (checked) responsibility.
  GradedPolynomial substitute(const std::vector<GradedPolynomial>& images) const;

  std::string str() const;

 private:
  TablePtr table_;
  TermMap terms_;
};

GradedPolynomial operator*(const Rational& c, const GradedPolynomial& p);

// Parses text such as "3/2*y^2*z - u + 1" against a table.
GradedPolynomial parse_polynomial(const TablePtr& table, const std::string& text);

struct MapViolation {
  std::string component;     // target variable name
  std::string detail;
  bool operator==(const MapViolation&) const = default;
};

struct MapCheckReport {
  bool pass = true;
  std::vector<MapViolation> violations;
};

// A polynomial map stored as its pullback: one source-table polynomial per
// target variable. This is the contravariant algebra-level view; the point
// map is recovered by evaluation.
class GradedPolyMap {
 public:
  GradedPolyMap() = default;
  GradedPolyMap(TablePtr source, TablePtr target, std::vector<GradedPolynomial> components);
  static GradedPolyMap identity(const TablePtr& table);

  const TablePtr& source() const { return source_; }
  const TablePtr& target() const { return target_; }
  const GradedPolynomial& component(int target_var) const {
    return components_[static_cast<size_t>(target_var)];
  }
  const std::vector<GradedPolynomial>& components() const { return components_; }

  // Precomposition f^*(p) = p o f, realized as substitution.
  GradedPolynomial pullback(const GradedPolynomial& target_poly) const;

  // Point image of the underlying map source -> target.
  Point apply(const Point& p) const;

  // (*this) o inner : source(inner) -> target(*this).
  GradedPolyMap compose(const GradedPolyMap& inner) const;

  // Each component homogeneous of its target weight (and parity); checked by
  // monomial inspection and by the symbolic h_t intertwining identity, and
  // the two routes compared.
  MapCheckReport check_graded() const;

  bool operator==(const GradedPolyMap& o) const;

 private:
  TablePtr source_, target_;
  std::vector<GradedPolynomial> components_;
};

}  // namespace gradua

#endif
