#ifndef GRADUA_BUNDLE_HPP
#define GRADUA_BUNDLE_HPP

#include "gradua/polynomial.hpp"

namespace gradua {

// Matrix with polynomial entries over a fixed table (base coordinates of one
// chart, in bundle contexts).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, TablePtr table);
  static PolyMatrix identity(int n, const TablePtr& table);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const TablePtr& table() const { return table_; }
  GradedPolynomial& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const GradedPolynomial& at(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  PolyMatrix mul(const PolyMatrix& o) const;
  PolyMatrix transpose() const;
  // entrywise pullback along a map into this matrix's table; the result
  // lives over the map's source table
  PolyMatrix pulled_back(const GradedPolyMap& map) const;
  bool operator==(const PolyMatrix& o) const;

 private:
  int rows_ = 0, cols_ = 0;
  TablePtr table_;
  std::vector<GradedPolynomial> data_;
};

struct Chart {
  std::string id;
  TablePtr base;  // weight-zero variables
};

// Coordinate change from one chart's combined (base + fiber) coordinates to
// another's: target coordinates as polynomials in source coordinates.
struct Transition {
  std::string from;
  std::string to;
  GradedPolyMap map;  // source combined(from) -> target combined(to)
};

struct CocycleViolation {
  std::string via;     // "a<-b<-c" style triple description
  std::string component;
  std::string detail;
};

struct BundleCheckReport {
  bool pass = true;
  std::vector<CocycleViolation> violations;
};

// Multi-chart graded bundle data. Fiber coordinates are shared across
// charts; transitions are weight-preserving polynomial maps whose base
// components involve base variables only.
class GradedBundleAtlas {
 public:
  GradedBundleAtlas(std::vector<Chart> charts, TablePtr fiber, std::vector<Transition> transitions);

  const std::vector<Chart>& charts() const { return charts_; }
  const TablePtr& fiber() const { return fiber_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  Transition& transition(int i) { return transitions_[static_cast<size_t>(i)]; }

  int chart_index(const std::string& id) const;
  const TablePtr& combined(int chart) const { return combined_[static_cast<size_t>(chart)]; }
  const Transition* find_transition(const std::string& from, const std::string& to) const;

  // every fiber component homogeneous of its target weight; base components
  // are weight-zero and therefore fiber-free
  BundleCheckReport check_transition_weights() const;
  // declared mutual inverses compose to the identity
  BundleCheckReport check_inverses() const;
  // g_{a<-b} o g_{b<-c} = g_{a<-c} on every declared triple
  BundleCheckReport check_cocycle() const;
  BundleCheckReport check_all() const;

 private:
  std::vector<Chart> charts_;
  TablePtr fiber_;
  std::vector<Transition> transitions_;
  std::vector<TablePtr> combined_;
};

// Per-weight linearization: the vector-bundle cocycle acting on new weight-w
// generators modulo products of lower weights.
struct SplitForm {
  std::vector<long> ranks;  // rank of F_w per weight 1..degree
  // same (from, to) layout as the atlas transitions; one matrix per weight
  struct LinearTransition {
    std::string from, to;
    std::map<Weight, PolyMatrix> blocks;
  };
  std::vector<LinearTransition> transitions;
  bool cocycle_verified = false;
};

SplitForm split_form(const GradedBundleAtlas& atlas);

// The induced cocycle on fiber algebras A^{<=W}(R^d). The record (from, to)
// turns function coordinates in the `from` trivialization into those of the
// `to` trivialization; its entries are polynomials in the `to` chart's base
// coordinates, and the block of weight w is the substitution action of the
// reverse coordinate change on weight-w monomials.
struct AlgebraBundleCocycle {
  std::map<Weight, std::vector<Multidegree>> fiber_basis;
  std::vector<SplitForm::LinearTransition> transitions;
  bool cocycle_verified = false;
};

AlgebraBundleCocycle associated_algebra_bundle(const GradedBundleAtlas& atlas, long max_weight);

// Fiberwise graded-algebra-bundle dual of the atlas: the polynomial algebra
// fibers together with the verified algebra cocycle.
struct DualBundle {
  TablePtr fiber_table;      // generators of the fiber algebra
  std::map<Weight, long> fiber_dims;
  AlgebraBundleCocycle cocycle;
};

DualBundle g_dual_bundle(const GradedBundleAtlas& atlas, long max_weight);

// Locally finite-rank morphism data shared by both morphism kinds: a base
// map plus one matrix of base-dependent entries per weight.
struct FiberBlocks {
  GradedPolyMap base_map;  // pullback data of the underlying base map
  std::map<Weight, PolyMatrix> blocks;
  bool operator==(const FiberBlocks& o) const;
};

struct ZakrzewskiMorphism {
  FiberBlocks rep;
  bool operator==(const ZakrzewskiMorphism&) const = default;
};

struct StandardMorphism {
  FiberBlocks rep;
  bool operator==(const StandardMorphism&) const = default;
};

StandardMorphism dualize_zm(const ZakrzewskiMorphism& zm);
ZakrzewskiMorphism dualize_std(const StandardMorphism& sm);

// A graded bundle morphism between single-chart bundles, as one polynomial
// map on combined coordinates.
struct BundleMorphism {
  TablePtr source_base, target_base;
  TablePtr source_fiber, target_fiber;
  GradedPolyMap map;  // combined source -> combined target
};

// Dual of a bundle morphism: the Zakrzewski morphism of the dual algebra
// bundles, blocks given by substitution on weight components.
ZakrzewskiMorphism dualize_bundle_morphism(const BundleMorphism& f, long max_weight);

// Categorical composite of Zakrzewski morphisms in the dual direction:
// returns dual(g o f) when fed dual(f), dual(g).
ZakrzewskiMorphism compose_zm(const ZakrzewskiMorphism& dual_f, const ZakrzewskiMorphism& dual_g);

BundleMorphism compose_bundle_morphisms(const BundleMorphism& g, const BundleMorphism& f);

}  // namespace gradua

#endif
