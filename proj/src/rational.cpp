#include "pbvote/rational.hpp"

#include <stdexcept>

namespace pbvote {

Rational rat(Money v) {
  // Money fits a signed long on this platform; go through mpz to be safe with
  // the full long long range.
  mpz_class z;
  if (v >= 0) {
    z = static_cast<unsigned long>(v);
  } else {
    z = static_cast<unsigned long>(-(v + 1));
    z += 1;
    z = -z;
  }
  return Rational(z);
}

Rational rat(Money num, Money den) {
  Rational r = rat(num) / rat(den);
  return r;
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational fraction_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::string text = s;
  if (text.find('/') == std::string::npos) text += "/1";
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: " + s);
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace pbvote
