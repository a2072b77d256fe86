#include "kout/rational.hpp"

#include "kout/errors.hpp"

namespace kout {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  Rational value(numerator, denominator);
  value.canonicalize();
  return value;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational value;
  if (s.empty() || value.set_str(s, 10) != 0) {
    throw InputError("cannot parse rational '" + s + "'");
  }
  if (value.get_den() == 0) throw InputError("rational with zero denominator");
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_fraction_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace kout
