#ifndef GRADUA_SUPER_HPP
#define GRADUA_SUPER_HPP

#include "gradua/weil.hpp"

namespace gradua {

// Supercommutative product. The polynomial arithmetic is already
// sign-correct over parity-tagged tables; this entry point exists so the
// super surface has one named door, and it refuses untagged tables.
GradedPolynomial super_mul(const GradedPolynomial& p, const GradedPolynomial& q);

struct BigradingReport {
  bool pass = true;
  std::string detail;
};

// Structural check that a table carries the N x Z_2 bi-grading: every
// variable has both a weight and a parity. Weight and parity additivity
// under multiplication are checked on the generators' pairwise products.
BigradingReport check_bigrading_compat(const TablePtr& table);

// Degree-2 N-manifold data: d1 odd weight-1 generators, an even weight-2
// component, and an antisymmetric bilinear map wedge^2 E^1 -> E^2.
struct NDeg2Data {
  long odd_dim = 0;   // dim of E^1 (odd)
  long even_dim = 0;  // dim of E^2 (even)
  Tensor3 m;          // antisymmetric: m(a, b, c) = -m(b, a, c)
};

struct NDeg2Report {
  bool accepted = false;
  QMatrix primal;           // wedge^2 E^1 -> E^2
  QMatrix dual_surjection;  // transpose
  bool primal_injective = false;
  bool dual_surjective = false;
  // independent route: super freeness of R + E^1 + E^2 at order 2
  bool super_free_verdict = false;
  bool verdicts_agree = true;
};

NDeg2Report check_n_deg2(const NDeg2Data& d);

// Super Weil algebra of the data: odd weight-1 part, even weight-2 part,
// with multiplication theta_i theta_j = m(i, j).
PresentedGradedAlgebra assemble_n_deg2(const NDeg2Data& d);

// Freeness of a parity-tagged presented algebra against super monomial
// counts; identical contract to the even case, run through the same
// dimension comparison with signs live.
FreenessReport super_check_free(const PresentedGradedAlgebra& A, long k);

struct NConventionReport {
  bool applies = false;  // parity equals weight mod 2 on every variable
  bool pass = true;      // h_{-1} multiplies every monomial by its parity sign
  std::string detail;
};

// In the convention where parity is weight mod 2, acting with t = -1 scales
// a monomial by (-1)^{weight} = (-1)^{parity}; verified on all monomials up
// to the stated weight.
NConventionReport check_n_convention(const TablePtr& table, long max_weight);

}  // namespace gradua

#endif
