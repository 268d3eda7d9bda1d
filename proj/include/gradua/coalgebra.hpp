#ifndef GRADUA_COALGEBRA_HPP
#define GRADUA_COALGEBRA_HPP

#include "gradua/weil.hpp"

namespace gradua {

// One term Y_left (x) Y_right of a comultiplication, indexed by the
// multidegrees whose dual basis vectors Y carry.
struct CotensorTerm {
  Multidegree left;
  Multidegree right;
  Rational coeff;
  bool operator==(const CotensorTerm&) const = default;
};

// The graded dual of a polynomial algebra up to a weight bound, carried by
// the dual bases Y_md of the monomial bases. The comultiplication tensors are
// the transposes of the multiplication tensors: the coefficient of
// Y_a (x) Y_b inside Delta(Y_c) equals the coefficient of the monomial c in
// the product a * b. The counit is the projection onto weight zero.
class GradedCoalgebra {
 public:
  GradedCoalgebra(TablePtr table, Weight max_weight);

  const TablePtr& table() const { return table_; }
  const Weight& max_weight() const { return max_weight_; }
  const std::vector<Multidegree>& basis(const Weight& w) const;
  long dim(const Weight& w) const;

  // Delta(Y_md) as a sum of tensor terms over all weight splits (including
  // the unit splits Y_1 (x) Y_md and Y_md (x) Y_1).
  std::vector<CotensorTerm> comultiply(const Multidegree& md) const;

  Rational counit(const Multidegree& md) const { return md.is_unit() ? 1 : 0; }

  // <Y_md, p>: the coefficient of md in p.
  Rational pairing(const Multidegree& md, const GradedPolynomial& p) const;

  // raw tensor access, [c][a][b] layout; exposed so tests can perturb entries
  Tensor3& delta_tensor(const Weight& split_left, const Weight& split_right);
  const Tensor3& delta_tensor(const Weight& split_left, const Weight& split_right) const;

 private:
  TablePtr table_;
  Weight max_weight_;
  std::map<Weight, std::vector<Multidegree>> bases_;
  std::map<Weight, std::map<std::string, int>> index_;
  // keyed by (left weight, right weight); tensor indexed [c][a][b]
  std::map<std::pair<Weight, Weight>, Tensor3> delta_;
  int index_of(const Weight& w, const Multidegree& md) const;
};

GradedCoalgebra graded_dual(const TablePtr& table, const Weight& max_weight);
GradedCoalgebra graded_dual(const TablePtr& table, long max_weight);

struct CoalgebraAxiomReport {
  bool pass = true;
  bool coassociative = true;
  bool cocommutative = true;
  bool counit_ok = true;
  std::string detail;
};

// Coassociativity, graded cocommutativity and both counit laws on every
// basis element whose weight is within the computed bound.
CoalgebraAxiomReport check_coalgebra_axioms(const GradedCoalgebra& C);

// The shuffle expression for a squarefree basis element with pairwise
// distinct indices: sum over all (i, k-i) shuffles of the index word.
std::vector<CotensorTerm> shuffle_comultiplication(const TablePtr& table, const Multidegree& md);

// Abstract graded dual of a presented algebra: the same structure tensors
// reindexed target-major, plus the inverse construction. Transposing twice
// returns the original tensors exactly.
struct DualStructure {
  Weight truncation;
  std::map<Weight, AlgComponent> comps;
  // [(w1, w2)] -> tensor indexed [c][a][b] for Delta_{w1+w2 -> w1 (x) w2}
  std::map<std::pair<Weight, Weight>, Tensor3> delta;
};

DualStructure dualize_structure(const PresentedGradedAlgebra& A);
PresentedGradedAlgebra structure_from_dual(const DualStructure& C);

}  // namespace gradua

#endif
