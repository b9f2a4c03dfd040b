#include "operad/rational.hpp"

#include <cctype>

namespace operad {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t k = i; k < text.size(); ++k) {
    char c = text[k];
    if (c == '/') {
      if (slash) throw ParseError("malformed rational '" + std::string(text) + "'");
      slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (slash ? digit_after : digit_before) = true;
    } else {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
  }
  if (!digit_before || (slash && !digit_after)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace operad
