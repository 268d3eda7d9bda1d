#ifndef GRADUA_SPACE_HPP
#define GRADUA_SPACE_HPP

#include "gradua/polynomial.hpp"

namespace gradua {

// The graded space (R^d, h^d): canonical weighted coordinates plus the
// monoid action scaling a weight-w coordinate by t^w.
class GradedSpace {
 public:
  explicit GradedSpace(RankVector dd)
      : dd_(std::move(dd)), table_(VariableTable::canonical(dd_)) {}
  explicit GradedSpace(TablePtr table);

  const RankVector& rank() const { return dd_; }
  const TablePtr& table() const { return table_; }
  int degree() const { return dd_.degree(); }

  Point origin() const { return Point{table_, QVector(static_cast<size_t>(table_->size()), Rational(0))}; }
  Point point(QVector coords) const;

 private:
  RankVector dd_;
  TablePtr table_;
};

// h_t on points: multiplies each coordinate by t^{w} where w is the selected
// weight component of the coordinate (component 0 for plain N-gradings; a
// bi-graded space carries one action per component).
Point act(const Rational& t, const Point& p, int weight_component = 0);

struct PointwiseCheckReport {
  bool pass = true;
  // first failing sample when not passing
  Rational t;
  Point at;
  std::string detail;
  long samples_checked = 0;
  bool exhaustive = false;  // grid large enough to decide the identity
};

// Point-level intertwining f(h_t x) = h_t f(x) on a sample grid. The grid is
// sized from the actual degrees of f so that agreement on it decides the
// polynomial identity; if the full grid would exceed max_points, a seeded
// random sample of that size is used instead and `exhaustive` reports false.
PointwiseCheckReport check_intertwines_pointwise(const GradedPolyMap& f,
                                                 long max_points = 200000,
                                                 unsigned long seed = 0);

}  // namespace gradua

#endif
