#include "gradua/duality.hpp"

#include <sstream>

namespace gradua {

GDualAlgebra g_dual_space(const GradedSpace& V) { return GDualAlgebra{V.table()}; }

GradedSpace alg_dual(const TablePtr& generators) {
  // lambdas are graded coordinates with the induced action h_t(lambda) =
  // t^w lambda; in the canonical identification they keep the generator
  // names, making the evaluation map the literal coordinate identity
  return GradedSpace(generators);
}

DualAlgebraMorphism::DualAlgebraMorphism(GradedPolyMap pullback_data) : data_(std::move(pullback_data)) {}

GradedPolynomial DualAlgebraMorphism::apply(const GradedPolynomial& p) const {
  return data_.pullback(p);
}

const GradedPolynomial& DualAlgebraMorphism::generator_image(int target_var) const {
  return data_.component(target_var);
}

DualAlgebraMorphism g_dual_morphism(const GradedPolyMap& f) {
  auto rep = f.check_graded();
  if (!rep.pass)
    throw Error("dualizing a non-graded map: " + rep.violations.front().detail);
  return DualAlgebraMorphism(f);
}

DualPoint ev_point(const GradedSpace& V, const Point& P) {
  if (!P.table->same_as(*V.table())) throw Error("point does not live on the space");
  return DualPoint{V.table(), P.coords};
}

Point ev_point_inverse(const GradedSpace& V, const DualPoint& dp) {
  if (!dp.table->same_as(*V.table())) throw Error("dual point table mismatch");
  return Point{V.table(), dp.lambda};
}

TruncatedAlgebra k_dual_space(const GradedSpace& V, long k) {
  return TruncatedAlgebra(V.table(), k);
}

PresentedGradedAlgebra k_dual_space_presented(const GradedSpace& V, long k) {
  return model_algebra(V.table(), Weight(k));
}

GradedSpace k_alg_dual(const PresentedGradedAlgebra& A, long k) {
  FreenessReport rep = check_free(A, k);
  if (!rep.free)
    throw Error("k-dual of a non-free algebra; witness: " + rep.witness->str());
  return GradedSpace(rep.generators.rank_vector());
}

FunctorialityReport check_functoriality(const GradedPolyMap& f, const GradedPolyMap& g,
                                        const std::vector<GradedPolynomial>& probes) {
  FunctorialityReport rep;
  // route 1: compose the point maps, then dualize
  GradedPolyMap gf = g.compose(f);
  DualAlgebraMorphism dual_of_composite = g_dual_morphism(gf);
  // route 2: compose the duals
  DualAlgebraMorphism fstar = g_dual_morphism(f);
  DualAlgebraMorphism gstar = g_dual_morphism(g);
  auto compare_on = [&](const GradedPolynomial& p) {
    GradedPolynomial lhs = dual_of_composite.apply(p);
    GradedPolynomial rhs = fstar.apply(gstar.apply(p));
    if (lhs == rhs) return true;
    rep.pass = false;
    std::ostringstream os;
    os << "(g o f)^* and f^* o g^* differ on " << p.str() << ": " << lhs.str() << " vs "
       << rhs.str();
    rep.detail = os.str();
    return false;
  };
  for (int v = 0; v < g.target()->size(); ++v)
    if (!compare_on(GradedPolynomial::variable(g.target(), v))) return rep;
  for (const auto& p : probes)
    if (!compare_on(p)) return rep;
  return rep;
}

RoundTripReport duality_roundtrip(const GradedSpace& V, std::optional<long> order) {
  RoundTripReport rep;
  rep.rank = V.rank();
  GDualAlgebra dual = g_dual_space(V);
  GradedSpace back = alg_dual(dual.table);
  if (!(back.rank() == V.rank())) {
    rep.pass = rep.coordinate_identity = false;
    rep.detail = "double dual has rank " + back.rank().str();
    return rep;
  }
  // ev is the coordinate identity on a probe grid, and h-equivariant:
  // ev(h_t P) = h_t ev(P) for t in {0, 1, -1, 2, 1/2}
  std::vector<Rational> ts = {Rational(0), Rational(1), Rational(-1), Rational(2), frac(1, 2)};
  std::vector<QVector> probe_points;
  int n = V.table()->size();
  probe_points.push_back(QVector(static_cast<size_t>(n), Rational(0)));
  for (int v = 0; v < n; ++v) {
    QVector unit(static_cast<size_t>(n), Rational(0));
    unit[static_cast<size_t>(v)] = 1;
    probe_points.push_back(unit);
  }
  QVector ramp(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) ramp[static_cast<size_t>(v)] = frac(v + 1, 2);
  probe_points.push_back(ramp);
  for (const auto& coords : probe_points) {
    Point P = V.point(coords);
    DualPoint dp = ev_point(V, P);
    if (dp.lambda != P.coords) {
      rep.pass = rep.coordinate_identity = false;
      rep.detail = "evaluation map moved a point";
      return rep;
    }
    if (ev_point_inverse(V, dp).coords != P.coords) {
      rep.pass = rep.coordinate_identity = false;
      rep.detail = "round trip failed to recover the point";
      return rep;
    }
    for (const auto& t : ts) {
      DualPoint lhs = ev_point(V, act(t, P));
      DualPoint rhs_dp = ev_point(V, P);
      Point rhs = act(t, Point{back.table(), rhs_dp.lambda});
      if (lhs.lambda != rhs.coords) {
        rep.pass = rep.h_equivariant = false;
        rep.detail = "evaluation is not h-equivariant at t = " + rational_str(t);
        return rep;
      }
    }
  }
  if (order) {
    // k-duality factors duality: dims of the k-dual match the truncated dual
    PresentedGradedAlgebra trunc = k_dual_space_presented(V, *order);
    for (long w = 0; w <= *order; ++w) {
      if (trunc.dim(Weight(w)) != dual.dimension(w)) {
        rep.pass = false;
        rep.detail = "k-dual dimension mismatch at weight " + std::to_string(w);
        return rep;
      }
    }
    GradedSpace recovered = k_alg_dual(trunc, *order);
    if (!(recovered.rank() == V.rank())) {
      rep.pass = false;
      rep.detail = "k-dual round trip changed the rank vector";
      return rep;
    }
  }
  return rep;
}

}  // namespace gradua
