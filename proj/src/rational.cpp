#include "gradua/rational.hpp"

namespace gradua {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw Error("bad rational literal: " + text);
  }
  try {
    Rational q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("bad rational literal: " + text);
  }
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw Error("zero to a negative power");
    return 1 / rational_pow(base, -exp);
  }
  Rational acc = 1;
  Rational b = base;
  long e = exp;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

bool is_zero_vector(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace gradua
