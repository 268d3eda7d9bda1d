#include "gradua/super.hpp"

namespace gradua {

GradedPolynomial super_mul(const GradedPolynomial& p, const GradedPolynomial& q) {
  if (!p.table()->is_super()) throw Error("super_mul needs a parity-tagged table");
  return p * q;
}

BigradingReport check_bigrading_compat(const TablePtr& table) {
  BigradingReport rep;
  for (int v = 0; v < table->size(); ++v) {
    if (!table->var(v).weight.parity().has_value()) {
      rep.pass = false;
      rep.detail = "variable " + table->var(v).name + " carries no parity";
      return rep;
    }
  }
  // weight and parity are additive on products of generators
  for (int a = 0; a < table->size(); ++a)
    for (int b = 0; b < table->size(); ++b) {
      GradedPolynomial prod =
          GradedPolynomial::variable(table, a) * GradedPolynomial::variable(table, b);
      if (prod.is_zero()) continue;  // odd squares
      Weight expect = table->var(a).weight + table->var(b).weight;
      for (const auto& [md, c] : prod.terms()) {
        Weight got = weight_of(md, *table);
        if (!(got == expect)) {
          rep.pass = false;
          rep.detail = "bi-grading not multiplicative on " + table->var(a).name + "*" +
                       table->var(b).name;
          return rep;
        }
      }
    }
  return rep;
}

PresentedGradedAlgebra assemble_n_deg2(const NDeg2Data& d) {
  if (d.m.na() != d.odd_dim || d.m.nb() != d.odd_dim || d.m.nc() != d.even_dim)
    throw Error("m shape mismatch");
  for (int a = 0; a < d.m.na(); ++a)
    for (int b = 0; b < d.m.nb(); ++b)
      for (int c = 0; c < d.m.nc(); ++c)
        if (d.m.at(a, b, c) != -d.m.at(b, a, c)) throw Error("m must be antisymmetric");
  std::map<Weight, AlgComponent> comps;
  comps[Weight(0)] = {1, {}};
  AlgComponent odd;
  odd.dim = static_cast<int>(d.odd_dim);
  odd.parity.assign(static_cast<size_t>(d.odd_dim), Parity::Odd);
  comps[Weight(1)] = std::move(odd);
  AlgComponent even;
  even.dim = static_cast<int>(d.even_dim);
  even.parity.assign(static_cast<size_t>(d.even_dim), Parity::Even);
  comps[Weight(2)] = std::move(even);
  std::map<std::pair<Weight, Weight>, Tensor3> mu;
  mu[{Weight(1), Weight(1)}] = d.m;
  return PresentedGradedAlgebra(Weight(2), std::move(comps), std::move(mu));
}

NDeg2Report check_n_deg2(const NDeg2Data& d) {
  NDeg2Report rep;
  long wedge = d.odd_dim * (d.odd_dim - 1) / 2;
  QMatrix primal(static_cast<int>(d.even_dim), static_cast<int>(wedge));
  int col = 0;
  for (int a = 0; a < d.odd_dim; ++a)
    for (int b = a + 1; b < d.odd_dim; ++b, ++col)
      for (int c = 0; c < d.even_dim; ++c) primal.at(c, col) = d.m.at(a, b, c);
  rep.primal = primal;
  rep.dual_surjection = primal.transpose();
  rep.primal_injective = primal.rank() == static_cast<int>(wedge);
  rep.dual_surjective = rep.dual_surjection.rank() == static_cast<int>(wedge);
  rep.accepted = rep.primal_injective;
  // independent route through super freeness at order 2
  PresentedGradedAlgebra A = assemble_n_deg2(d);
  rep.super_free_verdict = super_check_free(A, 2).free;
  rep.verdicts_agree = (rep.super_free_verdict == rep.accepted);
  return rep;
}

FreenessReport super_check_free(const PresentedGradedAlgebra& A, long k) {
  return check_free(A, Weight(k));
}

NConventionReport check_n_convention(const TablePtr& table, long max_weight) {
  NConventionReport rep;
  rep.applies = true;
  for (int v = 0; v < table->size(); ++v) {
    auto p = table->var(v).weight.parity();
    if (!p.has_value() ||
        static_cast<long>(*p == Parity::Odd ? 1 : 0) != table->var(v).weight.grading_key()[0] % 2) {
      rep.applies = false;
      rep.detail = "parity of " + table->var(v).name + " differs from its weight mod 2";
      return rep;
    }
  }
  // h_{-1} scales a weight-w monomial by (-1)^w; under the convention that
  // equals the parity sign
  for (long w = 0; w <= max_weight; ++w) {
    for (const auto& md : enumerate_monomials(table, Weight(w))) {
      Weight full = weight_of(md, *table);
      long action_sign = (w % 2 == 0) ? 1 : -1;
      long parity_sign = (full.parity() == Parity::Odd) ? -1 : 1;
      if (action_sign != parity_sign) {
        rep.pass = false;
        rep.detail = "monomial " + md.str(*table) + " breaks the parity coincidence";
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace gradua
