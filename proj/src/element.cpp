#include "operad/element.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace operad {

OperadElement::OperadElement(const TreeMonomial& m, const Rational& c) { add(m, c); }

void OperadElement::add(const TreeMonomial& m, const Rational& c) {
  if (c == 0) return;
  if (terms_.empty()) {
    arity_ = m.arity();
    mode_ = m.mode();
  } else if (m.arity() != arity_ || m.mode() != mode_) {
    throw Error("element is not arity-homogeneous: arity " + std::to_string(m.arity()) +
                " added to arity " + std::to_string(arity_));
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  if (terms_.empty()) arity_ = 0;
}

Rational OperadElement::coefficient(const TreeMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::pair<TreeMonomial, Rational> OperadElement::leading(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error("leading term of the zero element");
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it) {
    if (order.less(best->first, it->first)) best = it;
  }
  return *best;
}

Rational OperadElement::make_monic(const MonomialOrder& order) {
  Rational lc = leading(order).second;
  if (lc != 1) *this *= Rational(1 / lc);
  return lc;
}

OperadElement& OperadElement::operator+=(const OperadElement& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

OperadElement& OperadElement::operator-=(const OperadElement& other) {
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

OperadElement& OperadElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    arity_ = 0;
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

OperadElement lift(const OperadElement& r, const TreeMonomial& host, const Occurrence& occ) {
  OperadElement out;
  for (const auto& [t, c] : r.terms()) out.add(substitute(host, occ, t), c);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool looks_rational(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') return false;
  }
  return true;
}

}  // namespace

OperadElement parse_element(std::string_view text, const Signature& sig, Mode mode) {
  // Split at top-level signs; '-' inside parentheses is a planar leaf.
  std::vector<std::pair<int, std::string_view>> pieces;
  int depth = 0;
  int sign = 1;
  std::size_t start = 0;
  bool seen_content = false;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : '\0';
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth < 0) throw ParseError("unbalanced parenthesis in '" + std::string(text) + "'");
    }
    const bool boundary = i == text.size() || (depth == 0 && (c == '+' || c == '-'));
    if (!boundary) {
      if (!std::isspace(static_cast<unsigned char>(c))) seen_content = true;
      continue;
    }
    auto piece = trim(text.substr(start, i - start));
    if (!piece.empty()) {
      pieces.emplace_back(sign, piece);
    } else if (seen_content || (i < text.size() && !pieces.empty())) {
      throw ParseError("empty term in '" + std::string(text) + "'");
    }
    sign = c == '-' ? -1 : 1;
    start = i + 1;
    seen_content = false;
  }
  if (depth != 0) throw ParseError("unbalanced parenthesis in '" + std::string(text) + "'");
  if (pieces.empty()) throw ParseError("empty element");

  OperadElement out;
  for (const auto& [sgn, piece] : pieces) {
    Rational coef = sgn;
    std::string_view tree = piece;
    if (auto star = piece.find('*'); star != std::string_view::npos) {
      coef *= parse_rational(trim(piece.substr(0, star)));
      tree = trim(piece.substr(star + 1));
    } else if (auto sp = piece.find_first_of(" \t("); sp != std::string_view::npos &&
                                                     looks_rational(piece.substr(0, sp)) &&
                                                     !trim(piece.substr(sp)).empty()) {
      coef *= parse_rational(piece.substr(0, sp));
      tree = trim(piece.substr(sp));
    } else if (piece == "0") {
      continue;
    }
    try {
      out.add(parse_monomial(tree, sig, mode), coef);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  return out;
}

std::string format_element(const OperadElement& e, const Signature& sig,
                           const MonomialOrder& order) {
  if (e.is_zero()) return "0";
  std::vector<std::pair<TreeMonomial, Rational>> terms(e.terms().begin(), e.terms().end());
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return order.less(b.first, a.first); });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Rational a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a != 1) out += format_rational(a) + " * ";
    out += format_monomial(m, sig);
    first = false;
  }
  return out;
}

}  // namespace operad
