#ifndef GRADUA_DUALITY_HPP
#define GRADUA_DUALITY_HPP

#include "gradua/space.hpp"
#include "gradua/weil.hpp"

namespace gradua {

// Hom_G(V, R[eps]) realized at once through its polynomial model: an element
// sum_j f_j eps^j is identified with the polynomial sum_j f_j, the weight-j
// part landing on eps^j. The carrier is just the graded polynomial algebra
// over V's coordinate table.
struct GDualAlgebra {
  TablePtr table;
  long dimension(long w) const {
    return static_cast<long>(enumerate_monomials(table, Weight(w)).size());
  }
};

// A graded algebra homomorphism into the model line algebra, pinned by the
// scalars lambda it assigns to the generators: y ->  lambda_y eps^{w(y)}.
struct DualPoint {
  TablePtr table;  // generators of the source algebra
  QVector lambda;
};

GDualAlgebra g_dual_space(const GradedSpace& V);

// The graded space of algebra homomorphisms A -> R[eps] for a polynomial
// algebra presented by its generator table; coordinates are the lambdas.
GradedSpace alg_dual(const TablePtr& generators);

// Contravariant dual of a graded map, stored as the substitution data it
// already is; apply() is precomposition on polynomial elements.
class DualAlgebraMorphism {
 public:
  explicit DualAlgebraMorphism(GradedPolyMap pullback_data);
  // W*_G -> V*_G on elements: p in A(W) -> p o f in A(V)
  GradedPolynomial apply(const GradedPolynomial& p) const;
  // image of a generator of the target-side algebra
  const GradedPolynomial& generator_image(int target_var) const;
  const GradedPolyMap& data() const { return data_; }

 private:
  GradedPolyMap data_;
};

DualAlgebraMorphism g_dual_morphism(const GradedPolyMap& f);

// Evaluation at a point as a dual point of V*_G: the identity on coordinates.
DualPoint ev_point(const GradedSpace& V, const Point& P);
Point ev_point_inverse(const GradedSpace& V, const DualPoint& dp);

// k-truncated duals.
TruncatedAlgebra k_dual_space(const GradedSpace& V, long k);
PresentedGradedAlgebra k_dual_space_presented(const GradedSpace& V, long k);
GradedSpace k_alg_dual(const PresentedGradedAlgebra& A, long k);

struct FunctorialityReport {
  bool pass = true;
  std::string detail;
};

// (g o f)^* = f^* o g^* compared coefficientwise on every generator of the
// outermost target and on the supplied probe polynomials.
FunctorialityReport check_functoriality(const GradedPolyMap& f, const GradedPolyMap& g,
                                        const std::vector<GradedPolynomial>& probes = {});

struct RoundTripReport {
  bool pass = true;
  RankVector rank;
  bool coordinate_identity = true;
  bool h_equivariant = true;
  std::string detail;
};

// ev: V -> (V*_G)*_alg is the coordinate identity and h-equivariant; with an
// order k the k-dual dimensions are compared against the truncated dual.
RoundTripReport duality_roundtrip(const GradedSpace& V, std::optional<long> order = std::nullopt);

}  // namespace gradua

#endif
