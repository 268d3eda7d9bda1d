#ifndef GRADUA_WEIL_HPP
#define GRADUA_WEIL_HPP

#include <map>
#include <optional>

#include "gradua/linalg.hpp"
#include "gradua/polynomial.hpp"

namespace gradua {

// The model algebra A^[k](R^d): polynomials over a weighted table with every
// monomial of weight beyond the bound identified with zero.
class TruncatedAlgebra {
 public:
  TruncatedAlgebra(TablePtr table, Weight bound) : table_(std::move(table)), bound_(std::move(bound)) {}
  TruncatedAlgebra(TablePtr table, long k) : table_(std::move(table)), bound_(Weight(k)) {}

  const TablePtr& table() const { return table_; }
  const Weight& bound() const { return bound_; }
  long order() const { return bound_.total(); }

  GradedPolynomial reduce(const GradedPolynomial& p) const { return p.truncated(bound_); }
  GradedPolynomial mul(const GradedPolynomial& p, const GradedPolynomial& q) const;

 private:
  TablePtr table_;
  Weight bound_;
};

GradedPolynomial truncate_mul(const GradedPolynomial& p, const GradedPolynomial& q, long k);

// One graded component of a presented algebra: its dimension and, in super
// contexts, the parity of each basis vector.
struct AlgComponent {
  int dim = 0;
  std::vector<Parity> parity;  // empty: all even
  Parity parity_of(int i) const {
    return parity.empty() ? Parity::Even : parity[static_cast<size_t>(i)];
  }
};

struct AlgebraViolation {
  std::string what;
};

struct AlgebraCheckReport {
  bool pass = true;
  std::vector<AlgebraViolation> violations;
};

// A finite-dimensional connected graded algebra presented by per-weight
// dimensions and rational structure-constant tensors mu_{w1,w2}. Weight keys
// are tuples, which covers the N-graded, bi-graded and (with parity tags)
// super cases uniformly. The unit is the single weight-0 basis vector.
class PresentedGradedAlgebra {
 public:
  using Element = std::map<Weight, QVector>;  // grading key -> coordinates

  PresentedGradedAlgebra() = default;
  PresentedGradedAlgebra(Weight truncation, std::map<Weight, AlgComponent> comps,
                         std::map<std::pair<Weight, Weight>, Tensor3> mu);

  const Weight& truncation() const { return truncation_; }
  const std::map<Weight, AlgComponent>& components() const { return comps_; }
  int dim(const Weight& w) const;
  const AlgComponent* component(const Weight& w) const;
  bool is_super() const;
  long total_dim() const;

  // mu_{w1,w2} as stored (zero tensor when the product weight is truncated)
  const Tensor3& mu(const Weight& w1, const Weight& w2) const;

  QVector mul_basis(const Weight& w1, int a, const Weight& w2, int b) const;
  Element mul(const Element& x, const Element& y) const;
  Element basis_element(const Weight& w, int i) const;
  static Element zero_element() { return {}; }
  static bool is_zero(const Element& x);

  // unit law, (super)commutativity, associativity on all basis triples,
  // connectedness, shape consistency
  AlgebraCheckReport validate() const;

 private:
  Weight truncation_;
  std::map<Weight, AlgComponent> comps_;
  std::map<std::pair<Weight, Weight>, Tensor3> mu_;
  Tensor3 empty_;
};

// A^[bound](R^table): basis of monomials per weight, mu from monomial
// products (Koszul signs included over super tables).
PresentedGradedAlgebra model_algebra(const TablePtr& table, const Weight& bound);
PresentedGradedAlgebra model_algebra(const RankVector& dd, long k);

// Per-weight graded subspace of an algebra, stored as coordinate row spans.
struct GradedSubspace {
  std::map<Weight, RowSpan> spans;
  int dim(const Weight& w) const {
    auto it = spans.find(w);
    return it == spans.end() ? 0 : it->second.dim();
  }
  long total_dim() const {
    long s = 0;
    for (const auto& [w, sp] : spans) s += sp.dim();
    return s;
  }
};

// N_A = the positive-weight part, verified to be closed under mu.
GradedSubspace nilradical(const PresentedGradedAlgebra& A);

// Least r with N^{r+1} = 0, by iterated products of graded components.
long algebra_order(const PresentedGradedAlgebra& A);

// Homogeneous lifts of a basis of N/N^2, chosen by pivoted elimination with
// the deterministic complement rule (ascending basis index per weight).
struct GeneratorSpace {
  // per weight: lift vectors into A_w (coordinates in the component basis)
  std::map<Weight, std::vector<QVector>> lifts;
  std::map<Weight, std::vector<Parity>> parities;

  long count(const Weight& w) const;
  long total() const;
  RankVector rank_vector() const;           // scalar-weight, even contexts
  SuperRankVector super_rank_vector() const;
  // canonical table of the extracted generators (names by weight/parity)
  TablePtr table() const;
};

GeneratorSpace extract_generators(const PresentedGradedAlgebra& A);

struct FreenessReport {
  bool free = false;
  GeneratorSpace generators;
  TablePtr generator_table;
  // when not free: a nonzero homogeneous polynomial over generator_table of
  // weight <= bound vanishing in A, from the kernel of the lowest deficient
  // weight
  std::optional<GradedPolynomial> witness;
  std::optional<Weight> deficient_weight;
  // dim A_w vs model dimension per weight, for reports
  std::map<Weight, std::pair<long, long>> dimension_table;
};

// Free of order <= bound: the generator monomials are a basis in every
// weight within the bound. Equivalently the canonical surjection from the
// model algebra over the extracted generators is an isomorphism.
FreenessReport check_free(const PresentedGradedAlgebra& A, const Weight& bound);
FreenessReport check_free(const PresentedGradedAlgebra& A, long k);

// Structure-respecting isomorphism A ~ A^[bound](R^d) for free A: per weight
// the matrix sending model monomials to their values in A, plus the inverse.
struct ModelIso {
  TablePtr model_table;
  std::map<Weight, QMatrix> from_model;  // model coordinates -> A coordinates
  std::map<Weight, QMatrix> to_model;
};

ModelIso iso_to_model(const PresentedGradedAlgebra& A, const Weight& bound);

// Value of a monomial in the lifted generators, multiplied out through mu in
// ascending variable order. Returns the coordinates in A_{weight(md)}.
QVector evaluate_generator_monomial(const PresentedGradedAlgebra& A, const GeneratorSpace& gens,
                                    const TablePtr& gen_table, const Multidegree& md);

// Basis change by per-weight invertible matrices: e'_i = sum_j B[w](j,i) e_j.
PresentedGradedAlgebra conjugate(const PresentedGradedAlgebra& A,
                                 const std::map<Weight, QMatrix>& B);

// Quotient by the principal graded ideal generated by a homogeneous element.
PresentedGradedAlgebra quotient_by(const PresentedGradedAlgebra& A, const Weight& w0,
                                   const QVector& relation);

}  // namespace gradua

#endif
