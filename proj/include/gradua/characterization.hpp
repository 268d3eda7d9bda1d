#ifndef GRADUA_CHARACTERIZATION_HPP
#define GRADUA_CHARACTERIZATION_HPP

#include "gradua/weil.hpp"

namespace gradua {

// Candidate graded-bundle data of order k: components E^1..E^k plus the
// symmetric multiplication tensors m_{i,j}. The unit component is implied.
struct SymAlgData {
  long order = 0;
  std::vector<long> dims;  // dim E^1 .. dim E^k
  std::map<std::pair<long, long>, Tensor3> m;  // i, j >= 1, i + j <= order

  long dim(long w) const {
    return (w >= 1 && w <= static_cast<long>(dims.size())) ? dims[static_cast<size_t>(w - 1)] : 0;
  }
};

// R + E_0 as a presented algebra; the canonical unit tensors are adjoined.
PresentedGradedAlgebra assemble_algebra(const SymAlgData& data);
SymAlgData data_from_algebra(const PresentedGradedAlgebra& A);

struct AssocCommReport {
  bool pass = true;
  bool symmetric = true;
  bool associative = true;
  std::string counterexample;  // basis triple description when failing
};

AssocCommReport check_assoc_comm(const SymAlgData& data);

// E-hat = E_0 / (E_0 . E_0): per-weight quotient bases with chosen lifts.
struct GeneratorQuotient {
  std::vector<long> dims;                       // per weight 1..order
  std::map<Weight, std::vector<QVector>> lifts; // coordinates in E^w
};

GeneratorQuotient compute_E_hat(const SymAlgData& data);

// m^j: Sym^j E-hat -> E_0/(E_0)^{j+1}, assembled per weight block. Domain
// monomials are degree-j monomials in the extracted generators; rows are the
// quotient coordinates. Blocks of weight beyond the order are trivially zero
// and carry no condition.
struct InducedMap {
  long j = 0;
  // per weight w <= order: columns = degree-j monomials of weight w over the
  // generator table, rows = coordinates of E^w modulo (E_0)^{j+1}
  std::map<Weight, QMatrix> blocks;
  std::map<Weight, std::vector<Multidegree>> domain;
  TablePtr generator_table;
  bool well_defined = true;
};

InducedMap induced_map(const SymAlgData& data, long j);

struct DegreeKReport {
  bool is_graded_bundle_data = false;
  AssocCommReport assoc;
  // first failing induced map when rejected
  long failing_j = 0;
  std::optional<Weight> failing_weight;
  std::optional<GradedPolynomial> witness;  // kernel polynomial over the generator table
  // independent verdict from the freeness route; must agree
  bool free_verdict = false;
  bool verdicts_agree = true;
};

DegreeKReport check_degree_k(const SymAlgData& data, long k);

struct Degree2Report {
  bool accepted = false;
  QMatrix primal;          // Sym^2 E^1 -> E^2
  QMatrix dual_surjection; // transpose: C^2 -> Sym^2 C^1
  bool primal_injective = false;
  bool dual_surjective = false;
};

// m11 as a tensor E^1 x E^1 -> E^2, required symmetric.
Degree2Report check_degree_2(const Tensor3& m11, long dim_e1, long dim_e2);

struct DVBData {
  long dim_e10 = 0, dim_e01 = 0, dim_e11 = 0;
  // matrix of E^{1,0} (x) E^{0,1} -> E^{1,1}: dim_e11 rows, dim_e10*dim_e01
  // columns, the second factor fastest
  QMatrix map;
};

struct DVBReport {
  bool accepted = false;
  QMatrix dual_surjection;           // C^{1,1} -> C^{1,0} (x) C^{0,1}
  std::vector<QVector> core;         // kernel basis of the dual surjection
  bool rank_nullity_ok = true;
};

DVBReport check_dvb(const DVBData& d);

struct RankM12Report {
  long brute_force_rank = 0;
  long rank_vector_formula = 0;   // C(d1 + 2, 3) + d1 d2 with d1, d2 generator counts
  long literal_formula = 0;       // C(d1,3) + 2 C(d1,2) + d1 + d1 d2 with d_i = dim E^i
  bool formula_matches = false;
};

// Rank of the image of m_{1,2}: E^1 (x) E^2 -> E^3 for free order-3 data.
RankM12Report rank_m12(const SymAlgData& data);

struct ReconstructionReport {
  bool accepted = false;
  RankVector rank;
  TablePtr fiber_table;  // single-chart atlas: the graded space R^d
  bool structure_constants_recovered = false;
};

// Builds the graded space dual to accepted data: extracts generators, emits
// R^d, and re-derives the structure constants through the model isomorphism.
ReconstructionReport reconstruct(const SymAlgData& data, long k);

// Bi-graded components E^{i,j} with bi-weight-additive multiplication.
struct BiGradedData {
  long k = 0, l = 0;
  std::map<Weight, long> dims;                          // arity-2 weights, (0,0) implied
  std::map<std::pair<Weight, Weight>, Tensor3> m;
};

PresentedGradedAlgebra assemble_bigraded(const BiGradedData& data);

struct DoubleGradedReport {
  bool accepted = false;
  std::optional<GradedPolynomial> witness;
  std::map<Weight, std::pair<long, long>> dimension_table;
};

// Bi-homogeneous freeness at bi-order (k, l) by per-bi-weight dimension
// comparison against bi-graded monomial enumeration.
DoubleGradedReport check_double_graded(const BiGradedData& data);

// The DVB tensor map packaged as bi-graded data of bi-degree (1, 1).
BiGradedData dvb_to_bigraded(const DVBData& d);

}  // namespace gradua

#endif
