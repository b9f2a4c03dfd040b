#include "operad/order.hpp"

#include <algorithm>

namespace operad {

MonomialOrder::MonomialOrder(const Signature& sig, std::vector<int> precedence)
    : precedence_(std::move(precedence)) {
  const int n = static_cast<int>(sig.size());
  std::vector<char> seen(sig.size(), 0);
  for (int g : precedence_) {
    if (g < 0 || g >= n) throw Error("precedence refers to an unknown generator");
    if (seen[static_cast<std::size_t>(g)]) throw Error("precedence lists a generator twice");
    seen[static_cast<std::size_t>(g)] = 1;
  }
  for (int g = 0; g < n; ++g) {
    if (!seen[static_cast<std::size_t>(g)]) precedence_.push_back(g);
  }
  rank_.assign(sig.size(), 0);
  for (int i = 0; i < n; ++i) rank_[static_cast<std::size_t>(precedence_[static_cast<std::size_t>(i)])] = n - i;
}

MonomialOrder MonomialOrder::from_names(const Signature& sig,
                                        const std::vector<std::string>& names) {
  std::vector<int> prec;
  for (const auto& name : names) {
    int g = sig.index_of(name);
    if (g < 0) throw Error("precedence names undeclared generator '" + name + "'");
    prec.push_back(g);
  }
  return MonomialOrder(sig, std::move(prec));
}

std::vector<std::vector<int>> MonomialOrder::path_words(const TreeMonomial& m) const {
  std::vector<std::vector<int>> words(static_cast<std::size_t>(m.arity()));
  std::vector<int> path;
  std::vector<int> remaining;
  for (const auto& v : m.vertices()) {
    if (v.is_leaf()) {
      words[static_cast<std::size_t>(v.value - 1)] = path;
      while (!remaining.empty() && --remaining.back() == 0) {
        remaining.pop_back();
        path.pop_back();
      }
    } else {
      path.push_back(rank_.at(static_cast<std::size_t>(v.gen)));
      remaining.push_back(v.value);
    }
  }
  return words;
}

std::strong_ordering MonomialOrder::compare(const TreeMonomial& a, const TreeMonomial& b) const {
  if (a.mode() != b.mode()) throw Error("compare: monomials of different kinds");
  if (a.arity() != b.arity()) throw Error("compare: monomials of different arities");
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a.weight() <=> b.weight(); c != 0) return c;

  auto wa = path_words(a), wb = path_words(b);
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (auto c = wa[i].size() <=> wb[i].size(); c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(wa[i].begin(), wa[i].end(),
                                                        wb[i].begin(), wb[i].end());
        c != 0) {
      return c;
    }
  }
  auto la = a.leaf_labels(), lb = b.leaf_labels();
  if (auto c = std::lexicographical_compare_three_way(la.rbegin(), la.rend(), lb.rbegin(),
                                                      lb.rend());
      c != 0) {
    return c;
  }
  return a <=> b;
}

std::string MonomialOrder::describe(const Signature& sig) const {
  std::string out = "path-lex";
  for (std::size_t i = 0; i < precedence_.size(); ++i) {
    out += i == 0 ? " " : " > ";
    out += sig[static_cast<std::size_t>(precedence_[i])].name;
  }
  return out;
}

}  // namespace operad
