#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradua/linalg.hpp"

using namespace gradua;

namespace {

QMatrix random_matrix(std::mt19937_64& rng, int r, int c, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, 3);
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = frac(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rank of hand-picked matrices") {
  QMatrix m(3, 3);
  m.at(0, 0) = 1; m.at(0, 1) = 2; m.at(0, 2) = 3;
  m.at(1, 0) = 2; m.at(1, 1) = 4; m.at(1, 2) = 6;
  m.at(2, 0) = 0; m.at(2, 1) = 1; m.at(2, 2) = 1;
  CHECK(m.rank() == 2);
  CHECK(QMatrix::identity(4).rank() == 4);
  CHECK(QMatrix(3, 5).rank() == 0);

  // rationals that would break a float threshold: tiny but nonzero entries
  QMatrix t(2, 2);
  t.at(0, 0) = Rational(1);
  t.at(0, 1) = Rational(1);
  t.at(1, 0) = Rational(1);
  t.at(1, 1) = Rational(1) + Rational(1, Integer("1000000000000000000000000"));
  CHECK(t.rank() == 2);
}

TEST_CASE("kernel vectors annihilate and have full count") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + static_cast<int>(rng() % 5);
    int c = 1 + static_cast<int>(rng() % 5);
    QMatrix m = random_matrix(rng, r, c);
    auto ker = m.kernel();
    CHECK(static_cast<int>(ker.size()) == c - m.rank());
    for (const auto& v : ker) CHECK(is_zero_vector(m.apply(v)));
    // kernel basis is itself independent
    if (!ker.empty()) CHECK(QMatrix::from_rows(ker).rank() == static_cast<int>(ker.size()));
  }
}

TEST_CASE("rank via Bareiss matches rank via rref kernel") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + static_cast<int>(rng() % 6);
    int c = 1 + static_cast<int>(rng() % 6);
    QMatrix m = random_matrix(rng, r, c);
    CHECK(m.rank() == c - static_cast<int>(m.kernel().size()));
    CHECK(m.rank() == m.transpose().rank());
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(13);
  int invertible_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    QMatrix m = random_matrix(rng, n, n);
    auto inv = m.inverse();
    if (m.rank() < n) {
      CHECK_FALSE(inv.has_value());
      continue;
    }
    ++invertible_seen;
    REQUIRE(inv.has_value());
    CHECK(m.mul(*inv) == QMatrix::identity(n));
    CHECK(inv->mul(m) == QMatrix::identity(n));
  }
  CHECK(invertible_seen > 10);
}

TEST_CASE("solve") {
  QMatrix m(2, 3);
  m.at(0, 0) = 1; m.at(0, 1) = 1; m.at(0, 2) = 0;
  m.at(1, 0) = 0; m.at(1, 1) = 1; m.at(1, 2) = 1;
  auto x = m.solve({Rational(3), Rational(5)});
  REQUIRE(x.has_value());
  CHECK(m.apply(*x) == QVector{Rational(3), Rational(5)});

  QMatrix bad(2, 1);
  bad.at(0, 0) = 1;
  bad.at(1, 0) = 1;
  CHECK_FALSE(bad.solve({Rational(0), Rational(1)}).has_value());
}

TEST_CASE("row span") {
  RowSpan span(3);
  CHECK(span.add({Rational(1), Rational(2), Rational(0)}));
  CHECK_FALSE(span.add({Rational(2), Rational(4), Rational(0)}));
  CHECK(span.add({Rational(0), Rational(0), Rational(5)}));
  CHECK(span.dim() == 2);
  CHECK(span.contains({Rational(3), Rational(6), Rational(10)}));
  CHECK_FALSE(span.contains({Rational(0), Rational(1), Rational(0)}));
  CHECK(span.complement() == std::vector<int>{1});
}

TEST_CASE("tensor storage") {
  Tensor3 t(2, 2, 3);
  t.at(1, 0, 2) = Rational(1, 2);
  CHECK(t.at(1, 0, 2) == Rational(1, 2));
  CHECK(t.at(0, 1, 2) == 0);
  Tensor3 u = t;
  CHECK(u == t);
  u.at(0, 0, 0) = 1;
  CHECK_FALSE(u == t);
}
