#include "gradua/space.hpp"

#include <random>
#include <sstream>

namespace gradua {

namespace {

RankVector rank_of_table(const VariableTable& tbl) {
  std::vector<long> counts;
  for (int v = 0; v < tbl.size(); ++v) {
    const Weight& w = tbl.var(v).weight;
    if (w.arity() != 1) throw Error("graded spaces use scalar weights");
    long ww = w[0];
    if (ww < 1) throw Error("graded space coordinates have positive weight");
    if (static_cast<long>(counts.size()) < ww) counts.resize(static_cast<size_t>(ww), 0);
    ++counts[static_cast<size_t>(ww - 1)];
  }
  if (counts.empty()) counts.push_back(0);
  return RankVector(counts);
}

}  // namespace

GradedSpace::GradedSpace(TablePtr table) : dd_(rank_of_table(*table)), table_(std::move(table)) {}

Point GradedSpace::point(QVector coords) const {
  if (static_cast<int>(coords.size()) != table_->size()) throw Error("coordinate count mismatch");
  return Point{table_, std::move(coords)};
}

Point act(const Rational& t, const Point& p, int weight_component) {
  Point out{p.table, p.coords};
  for (int v = 0; v < p.table->size(); ++v) {
    long w = p.table->var(v).weight.grading_key()[weight_component];
    out.coords[static_cast<size_t>(v)] *= rational_pow(t, w);
  }
  return out;
}

PointwiseCheckReport check_intertwines_pointwise(const GradedPolyMap& f, long max_points,
                                                 unsigned long seed) {
  PointwiseCheckReport rep;
  const TablePtr& src = f.source();
  if (src->weight_arity() != 1 || src->is_super())
    throw Error("pointwise checks run over even scalar-graded tables");

  // degree bounds of the identity f(h_t x) - h_t f(x) = 0 per variable and t
  long t_degree = 0;
  std::vector<long> var_degree(static_cast<size_t>(src->size()), 0);
  for (int c = 0; c < f.target()->size(); ++c) {
    const auto& comp = f.component(c);
    t_degree = std::max({t_degree, comp.max_total_weight(),
                         f.target()->var(c).weight.grading_key()[0]});
    for (int v = 0; v < src->size(); ++v)
      var_degree[static_cast<size_t>(v)] =
          std::max(var_degree[static_cast<size_t>(v)], comp.max_exponent(v));
  }

  // default grid first, extended as the tracked degree bound requires
  std::vector<Rational> t_samples = {Rational(0), Rational(1), Rational(-1),
                                     Rational(2), Rational(3), frac(1, 2)};
  for (long extra = 4; static_cast<long>(t_samples.size()) < t_degree + 1; ++extra)
    t_samples.push_back(Rational(extra));
  std::vector<std::vector<Rational>> coord_samples;
  for (int v = 0; v < src->size(); ++v) {
    std::vector<Rational> vals = {Rational(-2), Rational(-1), Rational(0), Rational(1),
                                  Rational(2)};
    for (long extra = 3; static_cast<long>(vals.size()) < var_degree[static_cast<size_t>(v)] + 1;
         ++extra)
      vals.push_back(Rational(extra));
    coord_samples.push_back(std::move(vals));
  }

  double grid = static_cast<double>(t_samples.size());
  for (const auto& vals : coord_samples) grid *= static_cast<double>(vals.size());
  rep.exhaustive = grid <= static_cast<double>(max_points);

  auto check_sample = [&](const Rational& t, const Point& p) -> bool {
    Point lhs = f.apply(act(t, p));
    Point rhs = act(t, f.apply(p));
    if (lhs.coords == rhs.coords) return true;
    rep.pass = false;
    rep.t = t;
    rep.at = p;
    std::ostringstream os;
    os << "f(h_t x) != h_t f(x) at t = " << rational_str(t);
    rep.detail = os.str();
    return false;
  };

  if (rep.exhaustive) {
    std::vector<size_t> idx(static_cast<size_t>(src->size()), 0);
    bool done = false;
    while (!done) {
      QVector coords;
      coords.reserve(idx.size());
      for (size_t v = 0; v < idx.size(); ++v) coords.push_back(coord_samples[v][idx[v]]);
      Point p{src, coords};
      for (const auto& t : t_samples) {
        ++rep.samples_checked;
        if (!check_sample(t, p)) return rep;
      }
      size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] >= coord_samples[pos].size()) {
        idx[pos] = 0;
        ++pos;
      }
      done = pos >= idx.size();
    }
  } else {
    std::mt19937_64 rng(seed ? seed : 0x9e3779b97f4a7c15ull);
    for (long n = 0; n < max_points; ++n) {
      QVector coords;
      for (size_t v = 0; v < coord_samples.size(); ++v)
        coords.push_back(coord_samples[v][rng() % coord_samples[v].size()]);
      Point p{src, coords};
      const Rational& t = t_samples[rng() % t_samples.size()];
      ++rep.samples_checked;
      if (!check_sample(t, p)) return rep;
    }
  }
  return rep;
}

}  // namespace gradua
