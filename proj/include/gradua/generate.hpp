#ifndef GRADUA_GENERATE_HPP
#define GRADUA_GENERATE_HPP

#include <random>

#include "gradua/bundle.hpp"
#include "gradua/characterization.hpp"
#include "gradua/super.hpp"

namespace gradua {

// Deterministic generators for randomized property runs. Everything is
// driven by the caller's engine so a fixed seed reproduces runs exactly.
using Rng = std::mt19937_64;

Rational random_small_rational(Rng& rng, int lo = -3, int hi = 3);

GradedPolynomial random_polynomial(Rng& rng, const TablePtr& tbl, long max_weight, int terms = 4);

// components homogeneous of their target weights: always passes the graded
// check
GradedPolyMap random_graded_map(Rng& rng, const TablePtr& src, const TablePtr& tgt);

// random invertible rational matrix with small entries
QMatrix random_invertible(Rng& rng, int n);

// per-weight basis change of a presented algebra (parity-blocked when super)
std::map<Weight, QMatrix> random_basis_change(Rng& rng, const PresentedGradedAlgebra& A);

// conjugated model algebra: free with rank vector dd
PresentedGradedAlgebra random_conjugated_model(Rng& rng, const RankVector& dd, long k);

// model with one extra relation inside a products span: never free, same
// generator counts. Requires some weight in [2, k] with a product monomial.
PresentedGradedAlgebra random_mutated_model(Rng& rng, const RankVector& dd, long k);

// a graded automorphism of the trivial bundle over one base chart together
// with its exact inverse: constant invertible linear part per weight plus
// base-dependent corrections by lower-weight products
std::pair<GradedPolyMap, GradedPolyMap> random_fiber_automorphism(Rng& rng, const TablePtr& base,
                                                                  const TablePtr& fiber);

// atlas on 2 or 3 charts built from random automorphisms; cocycle exact by
// construction
GradedBundleAtlas random_atlas(Rng& rng, int n_charts, const TablePtr& fiber);

// perturbs one coefficient of one non-diagonal transition inside a
// weight-correct slot; returns the (from, to) pair touched
std::pair<std::string, std::string> mutate_one_transition(Rng& rng, GradedBundleAtlas& atlas);

ZakrzewskiMorphism random_zakrzewski(Rng& rng);

}  // namespace gradua

#endif
