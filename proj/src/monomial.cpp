#include "operad/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "operad/order.hpp"

namespace operad {

std::string_view to_string(Mode mode) { return mode == Mode::planar ? "planar" : "shuffle"; }

// --- Signature ---------------------------------------------------------------

Signature::Signature(std::vector<Generator> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.name.empty() || g.name == "Id") throw Error("invalid generator name '" + g.name + "'");
    if (g.arity < 2) {
      throw Error("generator '" + g.name + "' has arity " + std::to_string(g.arity) +
                  "; unary generators other than the identity are not supported");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (generators_[j].name == g.name) throw Error("duplicate generator '" + g.name + "'");
    }
  }
}

int Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int Signature::max_arity() const {
  int a = 0;
  for (const auto& g : generators_) a = std::max(a, g.arity);
  return a;
}

// --- TreeIndex ---------------------------------------------------------------

TreeIndex::TreeIndex(const TreeMonomial& m)
    : end(m.size()), min_label(m.size()), depth(m.size()) {
  auto v = m.vertices();
  // Iterative post-order using an explicit stack of (pos, remaining children).
  struct Frame {
    std::size_t pos;
    int remaining;
  };
  std::vector<Frame> stack;
  std::size_t pos = 0;
  int cur_depth = 0;
  auto close = [&](std::size_t p, std::size_t e) {
    end[p] = e;
  };
  while (pos < v.size()) {
    depth[pos] = cur_depth;
    if (v[pos].is_leaf()) {
      min_label[pos] = v[pos].value;
      close(pos, pos + 1);
      std::size_t e = pos + 1;
      // Pop finished parents.
      while (!stack.empty()) {
        auto& top = stack.back();
        if (--top.remaining > 0) break;
        close(top.pos, e);
        stack.pop_back();
        --cur_depth;
      }
      ++pos;
    } else {
      stack.push_back({pos, v[pos].value});
      ++cur_depth;
      ++pos;
    }
  }
  for (std::size_t p = v.size(); p-- > 0;) {
    if (v[p].is_leaf()) continue;
    std::int32_t best = INT32_MAX;
    for (std::size_t c = p + 1; c < end[p]; c = end[c]) best = std::min(best, min_label[c]);
    min_label[p] = best;
  }
}

// --- TreeMonomial --------------------------------------------------------------

namespace {

// Checks that vertices form exactly one complete tree; returns the arity.
int check_structure(std::span<const Vertex> vertices) {
  if (vertices.empty()) throw Error("empty monomial");
  long need = 1;
  int leaves = 0;
  for (const auto& v : vertices) {
    if (need == 0) throw Error("trailing vertices after a complete monomial");
    --need;
    if (v.is_leaf()) {
      ++leaves;
    } else {
      if (v.gen < 0 || v.value < 1) throw Error("malformed internal vertex");
      need += v.value;
    }
  }
  if (need != 0) throw Error("incomplete monomial");
  return leaves;
}

void check_permutation(std::span<const Vertex> vertices, int arity) {
  std::vector<char> seen(static_cast<std::size_t>(arity) + 1, 0);
  for (const auto& v : vertices) {
    if (!v.is_leaf()) continue;
    if (v.value < 1 || v.value > arity) {
      throw Error("leaf label " + std::to_string(v.value) + " out of range 1.." +
                  std::to_string(arity));
    }
    if (seen[static_cast<std::size_t>(v.value)]) {
      throw Error("duplicate leaf label " + std::to_string(v.value));
    }
    seen[static_cast<std::size_t>(v.value)] = 1;
  }
}

}  // namespace

TreeMonomial TreeMonomial::identity(Mode mode) {
  return TreeMonomial({Vertex{}}, mode, 1);
}

TreeMonomial TreeMonomial::from_vertices_unchecked(std::vector<Vertex> vertices, Mode mode) {
  int arity = check_structure(vertices);
  if (mode == Mode::planar) {
    std::int32_t next = 1;
    for (auto& v : vertices) {
      if (v.is_leaf()) v.value = next++;
    }
  } else {
    check_permutation(vertices, arity);
  }
  return TreeMonomial(std::move(vertices), mode, arity);
}

TreeMonomial TreeMonomial::from_vertices(std::vector<Vertex> vertices, Mode mode) {
  TreeMonomial m = from_vertices_unchecked(std::move(vertices), mode);
  if (mode == Mode::shuffle) {
    if (auto bad = shuffle_violation(m)) {
      throw HypothesisError("not a shuffle monomial: minimal leaf is not leftmost at vertex " +
                            std::to_string(*bad));
    }
  }
  return m;
}

int TreeMonomial::depth() const {
  if (is_identity()) return 0;
  TreeIndex idx(*this);
  int d = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!vertices_[i].is_leaf()) d = std::max(d, idx.depth[i] + 1);
  }
  return d;
}

std::vector<std::int32_t> TreeMonomial::leaf_labels() const {
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(arity_));
  for (const auto& v : vertices_) {
    if (v.is_leaf()) out.push_back(v.value);
  }
  return out;
}

std::vector<std::size_t> TreeMonomial::children(std::size_t pos, const TreeIndex& index) const {
  std::vector<std::size_t> out;
  if (vertices_.at(pos).is_leaf()) return out;
  for (std::size_t c = pos + 1; c < index.end[pos]; c = index.end[c]) out.push_back(c);
  return out;
}

std::vector<std::size_t> TreeMonomial::children(std::size_t pos) const {
  return children(pos, TreeIndex(*this));
}

TreeMonomial TreeMonomial::shape() const {
  if (mode_ == Mode::planar) return *this;
  std::vector<Vertex> v = vertices_;
  return from_vertices_unchecked(std::move(v), Mode::planar);
}

std::strong_ordering operator<=>(const TreeMonomial& a, const TreeMonomial& b) {
  if (auto c = a.mode_ <=> b.mode_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(),
                                                b.vertices_.begin(), b.vertices_.end());
}

std::size_t TreeMonomial::hash() const noexcept {
  std::size_t h = mode_ == Mode::planar ? 0x9e3779b97f4a7c15ULL : 0x7f4a7c159e3779b9ULL;
  for (const auto& v : vertices_) {
    std::uint64_t x = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.gen)) << 32) |
                      static_cast<std::uint32_t>(v.value);
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

TreeMonomial graft(int gen, int arity, std::span<const TreeMonomial> children, Mode mode) {
  if (static_cast<int>(children.size()) != arity) throw Error("graft: wrong number of children");
  std::vector<Vertex> v{Vertex{gen, arity}};
  for (const auto& c : children) {
    if (c.mode() != mode) throw Error("graft: mode mismatch");
    v.insert(v.end(), c.vertices().begin(), c.vertices().end());
  }
  return TreeMonomial::from_vertices(std::move(v), mode);
}

// --- text form -------------------------------------------------------------------

namespace {

class SexprParser {
 public:
  SexprParser(std::string_view text, const Signature& sig, Mode mode)
      : text_(text), sig_(sig), mode_(mode) {}

  TreeMonomial parse() {
    skip_ws();
    if (peek_word() == "Id") {
      pos_ += 2;
      skip_ws();
      if (pos_ != text_.size()) fail("unexpected text after Id");
      return TreeMonomial::identity(mode_);
    }
    tree();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected text after monomial");
    int arity = 0;
    for (const auto& v : out_) arity += v.is_leaf();
    if (mode_ == Mode::shuffle) {
      std::vector<int> seen(static_cast<std::size_t>(arity) + 1, 0);
      for (const auto& v : out_) {
        if (!v.is_leaf()) continue;
        if (v.value > arity) {
          fail("missing leaf labels: label " + std::to_string(v.value) + " exceeds arity " +
               std::to_string(arity));
        }
        if (seen[static_cast<std::size_t>(v.value)]++) {
          fail("duplicate leaf label " + std::to_string(v.value));
        }
      }
    }
    TreeMonomial m = TreeMonomial::from_vertices_unchecked(out_, mode_);
    if (auto bad = shuffle_violation(m)) {
      TreeIndex idx(m);
      std::vector<Vertex> sub(m.vertices().begin() + static_cast<long>(*bad),
                              m.vertices().begin() + static_cast<long>(idx.end[*bad]));
      std::string where;
      // Format the offending subtree with its original labels.
      std::function<std::size_t(std::size_t)> fmt = [&](std::size_t i) -> std::size_t {
        const Vertex& v = sub[i];
        if (v.is_leaf()) {
          where += std::to_string(v.value);
          return i + 1;
        }
        where += "(" + sig_[static_cast<std::size_t>(v.gen)].name;
        std::size_t j = i + 1;
        for (int k = 0; k < v.value; ++k) {
          where += " ";
          j = fmt(j);
        }
        where += ")";
        return j;
      };
      fmt(0);
      fail("shuffle condition violated at " + where + ": minimal leaf not leftmost");
    }
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " (at offset " + std::to_string(pos_) + " in '" + std::string(text_) +
                     "')");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view peek_word() const {
    std::size_t e = pos_;
    while (e < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[e])) || text_[e] == '_' ||
            text_[e] == '\'')) {
      ++e;
    }
    return text_.substr(pos_, e - pos_);
  }

  void tree() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      skip_ws();
      std::string_view name = peek_word();
      if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) {
        fail("expected generator name");
      }
      int gen = sig_.index_of(name);
      if (gen < 0) fail("undeclared generator '" + std::string(name) + "'");
      pos_ += name.size();
      const int arity = sig_[static_cast<std::size_t>(gen)].arity;
      out_.push_back(Vertex{gen, arity});
      int count = 0;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unbalanced parenthesis");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        tree();
        ++count;
      }
      if (count != arity) {
        fail("arity mismatch: '" + std::string(name) + "' has arity " + std::to_string(arity) +
             " but got " + std::to_string(count) + " arguments");
      }
      return;
    }
    if (c == '-') {
      if (mode_ != Mode::planar) fail("'-' leaves are only valid in planar mode");
      ++pos_;
      out_.push_back(Vertex{kLeaf, 0});
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (mode_ != Mode::shuffle) fail("numbered leaves are only valid in shuffle mode");
      if (c == '0') fail("leaf labels start at 1");
      std::size_t e = pos_;
      while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
      long label = std::stol(std::string(text_.substr(pos_, e - pos_)));
      if (label > 1'000'000) fail("leaf label too large");
      pos_ = e;
      out_.push_back(Vertex{kLeaf, static_cast<std::int32_t>(label)});
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const Signature& sig_;
  Mode mode_;
  std::size_t pos_ = 0;
  std::vector<Vertex> out_;
};

}  // namespace

TreeMonomial parse_monomial(std::string_view text, const Signature& sig, Mode mode) {
  return SexprParser(text, sig, mode).parse();
}

std::string format_monomial(const TreeMonomial& m, const Signature& sig) {
  if (m.is_identity()) return "Id";
  std::string out;
  std::vector<int> open;  // remaining children of open vertices
  for (const auto& v : m.vertices()) {
    if (!open.empty()) out += ' ';
    if (v.is_leaf()) {
      out += m.mode() == Mode::planar ? std::string("-") : std::to_string(v.value);
      while (!open.empty() && --open.back() == 0) {
        out += ')';
        open.pop_back();
      }
    } else {
      out += '(';
      out += sig[static_cast<std::size_t>(v.gen)].name;
      open.push_back(v.value);
    }
  }
  return out;
}

// --- shuffle condition and composition ------------------------------------------

std::optional<std::size_t> shuffle_violation(const TreeMonomial& m) {
  if (m.mode() == Mode::planar) return std::nullopt;
  TreeIndex idx(m);
  for (std::size_t p = 0; p < m.size(); ++p) {
    if (m[p].is_leaf()) continue;
    if (idx.min_label[p + 1] != idx.min_label[p]) return p;
  }
  return std::nullopt;
}

bool is_shuffle(const TreeMonomial& m) { return !shuffle_violation(m).has_value(); }

TreeMonomial compose(const TreeMonomial& outer, int slot, const TreeMonomial& inner,
                     std::span<const std::int32_t> relabel) {
  if (outer.mode() != inner.mode()) throw Error("compose: mode mismatch");
  const int a = outer.arity(), b = inner.arity(), n = a + b - 1;
  if (slot < 1 || slot > a) {
    throw Error("compose: slot " + std::to_string(slot) + " out of range 1.." + std::to_string(a));
  }
  if (!relabel.empty()) {
    if (static_cast<int>(relabel.size()) != n) throw Error("compose: relabelling has wrong size");
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (auto l : relabel) {
      if (l < 1 || l > n || seen[static_cast<std::size_t>(l)]) {
        throw Error("compose: relabelling is not a permutation");
      }
      seen[static_cast<std::size_t>(l)] = 1;
    }
  }
  auto final_label = [&](std::int32_t naive) {
    return relabel.empty() ? naive : relabel[static_cast<std::size_t>(naive - 1)];
  };

  std::vector<Vertex> v;
  v.reserve(outer.size() + inner.size());
  for (const auto& ov : outer.vertices()) {
    if (!ov.is_leaf()) {
      v.push_back(ov);
    } else if (ov.value < slot) {
      v.push_back(Vertex{kLeaf, final_label(ov.value)});
    } else if (ov.value > slot) {
      v.push_back(Vertex{kLeaf, final_label(ov.value + b - 1)});
    } else {
      for (const auto& iv : inner.vertices()) {
        v.push_back(iv.is_leaf() ? Vertex{kLeaf, final_label(iv.value + slot - 1)} : iv);
      }
    }
  }

  if (outer.mode() == Mode::planar) {
    for (int k = 1; k <= n; ++k) {
      if (final_label(k) != k) throw Error("compose: planar compositions admit no relabelling");
    }
    return TreeMonomial::from_vertices(std::move(v), Mode::planar);
  }

  // Both factors must appear unchanged: inner labels keep their order, and the
  // outer leaves (slot represented by the inner minimum) keep theirs.
  for (int j = 1; j < b; ++j) {
    if (final_label(slot + j - 1) > final_label(slot + j)) {
      throw HypothesisError("compose: relabelling does not preserve the inner factor");
    }
  }
  std::vector<std::int32_t> induced;
  for (int l = 1; l <= a; ++l) {
    if (l < slot) {
      induced.push_back(final_label(l));
    } else if (l > slot) {
      induced.push_back(final_label(l + b - 1));
    } else {
      std::int32_t mn = INT32_MAX;
      for (int j = 0; j < b; ++j) mn = std::min(mn, final_label(slot + j));
      induced.push_back(mn);
    }
  }
  // Outer labels l map to induced[l-1]; they must be increasing in l.
  if (!std::is_sorted(induced.begin(), induced.end())) {
    throw HypothesisError("compose: relabelling does not preserve the outer factor");
  }
  TreeMonomial r = TreeMonomial::from_vertices_unchecked(std::move(v), Mode::shuffle);
  if (!is_shuffle(r)) throw HypothesisError("compose: result violates the shuffle condition");
  return r;
}

std::vector<TreeMonomial> shuffle_compositions(const TreeMonomial& outer, int slot,
                                               const TreeMonomial& inner) {
  if (outer.mode() != Mode::shuffle || inner.mode() != Mode::shuffle) {
    throw Error("shuffle_compositions: shuffle monomials required");
  }
  const int a = outer.arity(), b = inner.arity(), n = a + b - 1;
  if (slot < 1 || slot > a) throw Error("compose: slot out of range");
  std::vector<TreeMonomial> out;
  std::vector<int> choose(static_cast<std::size_t>(n), 0);
  std::fill(choose.end() - b, choose.end(), 1);
  do {
    std::vector<std::int32_t> block, rest;
    for (int k = 0; k < n; ++k) (choose[static_cast<std::size_t>(k)] ? block : rest).push_back(k + 1);
    const std::int32_t mn = block.front();
    int below = 0;
    for (auto r : rest) below += r < mn;
    if (below != slot - 1) continue;
    std::vector<std::int32_t> relabel(static_cast<std::size_t>(n));
    for (int l = 1; l <= a; ++l) {
      if (l < slot) relabel[static_cast<std::size_t>(l - 1)] = rest[static_cast<std::size_t>(l - 1)];
      if (l > slot) {
        relabel[static_cast<std::size_t>(l + b - 2)] = rest[static_cast<std::size_t>(l - 2)];
      }
    }
    for (int j = 0; j < b; ++j) {
      relabel[static_cast<std::size_t>(slot - 1 + j)] = block[static_cast<std::size_t>(j)];
    }
    try {
      out.push_back(compose(outer, slot, inner, relabel));
    } catch (const HypothesisError&) {
      // Not a shuffle monomial for this choice of block.
    }
  } while (std::next_permutation(choose.begin(), choose.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// --- divisibility -----------------------------------------------------------------

namespace {

constexpr std::size_t kFail = static_cast<std::size_t>(-1);

struct Matcher {
  const TreeMonomial& q;
  const TreeMonomial& host;
  const TreeIndex& index;
  std::vector<std::size_t> internal;
  std::vector<std::pair<std::int32_t, std::size_t>> leaves;  // (divisor label, host pos)

  std::size_t walk(std::size_t qi, std::size_t hi) {
    const Vertex& qv = q[qi];
    if (qv.is_leaf()) {
      leaves.emplace_back(qv.value, hi);
      return qi + 1;
    }
    const Vertex& hv = host[hi];
    if (hv.is_leaf() || hv.gen != qv.gen) return kFail;
    internal.push_back(hi);
    std::size_t qc = qi + 1, hc = hi + 1;
    for (int k = 0; k < qv.value; ++k) {
      qc = walk(qc, hc);
      if (qc == kFail) return kFail;
      hc = index.end[hc];
    }
    return qc;
  }
};

}  // namespace

std::optional<Occurrence> match_at(const TreeMonomial& q, const TreeMonomial& host,
                                   std::size_t anchor, const TreeIndex& index) {
  if (q.mode() != host.mode()) return std::nullopt;
  if (!q[0].is_leaf() && (host[anchor].is_leaf() || host[anchor].gen != q[0].gen)) {
    return std::nullopt;
  }
  Matcher mt{q, host, index, {}, {}};
  mt.internal.reserve(static_cast<std::size_t>(q.weight()));
  mt.leaves.reserve(static_cast<std::size_t>(q.arity()));
  if (mt.walk(0, anchor) == kFail) return std::nullopt;

  // The divisor labels must be the ranks of the minimal host labels below the cuts.
  auto& lv = mt.leaves;
  std::vector<std::size_t> order(lv.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return index.min_label[lv[x].second] < index.min_label[lv[y].second];
  });
  Occurrence occ;
  occ.root = anchor;
  occ.internal = std::move(mt.internal);
  occ.cuts.resize(lv.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    const auto& [label, pos] = lv[order[r]];
    if (label != static_cast<std::int32_t>(r + 1)) return std::nullopt;
    occ.cuts[r] = pos;
  }
  return occ;
}

std::vector<Occurrence> occurrences(const TreeMonomial& q, const TreeMonomial& host) {
  std::vector<Occurrence> out;
  if (q.mode() != host.mode()) return out;
  TreeIndex index(host);
  for (std::size_t a = 0; a < host.size(); ++a) {
    if (!q.is_identity() && host[a].is_leaf()) continue;
    if (auto occ = match_at(q, host, a, index)) out.push_back(std::move(*occ));
  }
  return out;
}

bool divides(const TreeMonomial& q, const TreeMonomial& host, const TreeIndex& index) {
  if (q.mode() != host.mode() || q.arity() > host.arity() || q.weight() > host.weight()) {
    return false;
  }
  if (q.is_identity()) return true;
  for (std::size_t a = 0; a < host.size(); ++a) {
    if (host[a].is_leaf() || host[a].gen != q[0].gen) continue;
    if (match_at(q, host, a, index)) return true;
  }
  return false;
}

bool divides(const TreeMonomial& q, const TreeMonomial& host) {
  return divides(q, host, TreeIndex(host));
}

bool divides_at_root(std::span<const TreeMonomial> qs, const TreeMonomial& host) {
  if (host.is_identity()) {
    return std::any_of(qs.begin(), qs.end(), [](const auto& q) { return q.is_identity(); });
  }
  TreeIndex index(host);
  for (const auto& q : qs) {
    if (q.is_identity()) return true;
    if (q[0].gen != host[0].gen) continue;
    if (match_at(q, host, 0, index)) return true;
  }
  return false;
}

Occurrence whole(const TreeMonomial& host) {
  Occurrence occ;
  occ.root = 0;
  occ.cuts.resize(static_cast<std::size_t>(host.arity()));
  for (std::size_t p = 0; p < host.size(); ++p) {
    if (host[p].is_leaf()) {
      occ.cuts[static_cast<std::size_t>(host[p].value - 1)] = p;
    } else {
      occ.internal.push_back(p);
    }
  }
  return occ;
}

TreeMonomial extract(const TreeMonomial& host, const Occurrence& occ) {
  TreeIndex index(host);
  std::vector<std::size_t> cuts = occ.cuts;
  std::vector<std::int32_t> mins;
  for (auto c : cuts) mins.push_back(index.min_label[c]);
  std::vector<std::int32_t> sorted = mins;
  std::sort(sorted.begin(), sorted.end());
  auto rank_of = [&](std::size_t pos) -> std::int32_t {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (cuts[i] == pos) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), mins[i]);
        return static_cast<std::int32_t>(it - sorted.begin()) + 1;
      }
    }
    return 0;
  };
  std::vector<Vertex> out;
  std::function<void(std::size_t)> walk = [&](std::size_t p) {
    if (std::int32_t r = rank_of(p); r > 0) {
      out.push_back(Vertex{kLeaf, r});
      return;
    }
    if (host[p].is_leaf()) throw Error("extract: occurrence does not cover the host region");
    out.push_back(host[p]);
    for (std::size_t c = p + 1; c < index.end[p]; c = index.end[c]) walk(c);
  };
  walk(occ.root);
  return TreeMonomial::from_vertices(std::move(out), host.mode());
}

TreeMonomial substitute(const TreeMonomial& host, const Occurrence& occ,
                        const TreeMonomial& replacement, std::vector<std::size_t>* position_map) {
  if (static_cast<int>(occ.cuts.size()) != replacement.arity()) {
    throw Error("substitute: arity mismatch between occurrence and replacement");
  }
  TreeIndex index(host);
  auto hv = host.vertices();
  std::vector<Vertex> out(hv.begin(), hv.begin() + static_cast<long>(occ.root));
  out.reserve(host.size() + replacement.size());
  if (position_map) position_map->assign(replacement.size(), 0);
  for (std::size_t i = 0; i < replacement.size(); ++i) {
    const Vertex& rv = replacement[i];
    if (position_map) (*position_map)[i] = out.size();
    if (!rv.is_leaf()) {
      out.push_back(rv);
      continue;
    }
    std::size_t c = occ.cuts[static_cast<std::size_t>(rv.value - 1)];
    out.insert(out.end(), hv.begin() + static_cast<long>(c),
               hv.begin() + static_cast<long>(index.end[c]));
  }
  out.insert(out.end(), hv.begin() + static_cast<long>(index.end[occ.root]), hv.end());
  return TreeMonomial::from_vertices(std::move(out), host.mode());
}

// --- enumeration and regularity ------------------------------------------------------

namespace {

void compositions(int n, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 1) {
    cur.push_back(n);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int a = 1; a <= n - parts + 1; ++a) {
    cur.push_back(a);
    compositions(n - a, parts - 1, cur, f);
    cur.pop_back();
  }
}

using VertexSeq = std::vector<Vertex>;

// All shuffle labellings of the subtree at pos using the sorted label set.
std::vector<VertexSeq> label_subtree(const TreeMonomial& shape, const TreeIndex& idx,
                                     std::size_t pos, const std::vector<std::int32_t>& labels) {
  if (shape[pos].is_leaf()) return {VertexSeq{Vertex{kLeaf, labels.front()}}};
  auto kids = shape.children(pos, idx);
  std::vector<int> sizes;
  for (auto c : kids) {
    int leaves = 0;
    for (std::size_t p = c; p < idx.end[c]; ++p) leaves += shape[p].is_leaf();
    sizes.push_back(leaves);
  }
  std::vector<VertexSeq> out;
  // Distribute labels: child 0 receives labels.front() and sizes[0]-1 others.
  std::vector<std::vector<std::int32_t>> parts(kids.size());
  std::function<void(std::size_t, std::vector<std::int32_t>)> distribute =
      [&](std::size_t k, std::vector<std::int32_t> remaining) {
        if (k == kids.size()) {
          std::vector<std::vector<VertexSeq>> sub;
          for (std::size_t i = 0; i < kids.size(); ++i) {
            sub.push_back(label_subtree(shape, idx, kids[i], parts[i]));
          }
          std::vector<std::size_t> pick(kids.size(), 0);
          for (;;) {
            VertexSeq seq{shape[pos]};
            for (std::size_t i = 0; i < kids.size(); ++i) {
              const auto& s = sub[i][pick[i]];
              seq.insert(seq.end(), s.begin(), s.end());
            }
            out.push_back(std::move(seq));
            std::size_t i = 0;
            while (i < kids.size() && ++pick[i] == sub[i].size()) pick[i++] = 0;
            if (i == kids.size()) break;
          }
          return;
        }
        const int need = sizes[k];
        const std::size_t forced = k == 0 ? 1 : 0;
        const int free_count = need - static_cast<int>(forced);
        const std::size_t pool_begin = forced;
        const std::size_t pool = remaining.size() - pool_begin;
        std::vector<int> mask(pool, 0);
        std::fill(mask.end() - free_count, mask.end(), 1);
        do {
          std::vector<std::int32_t> mine, rest;
          if (forced) mine.push_back(remaining.front());
          for (std::size_t i = 0; i < pool; ++i) {
            (mask[i] ? mine : rest).push_back(remaining[pool_begin + i]);
          }
          std::sort(mine.begin(), mine.end());
          parts[k] = mine;
          distribute(k + 1, rest);
        } while (std::next_permutation(mask.begin(), mask.end()));
      };
  distribute(0, labels);
  return out;
}

}  // namespace

std::vector<TreeMonomial> planar_shapes(const Signature& sig, int n) {
  std::map<int, std::vector<TreeMonomial>> memo;
  std::function<const std::vector<TreeMonomial>&(int)> shapes =
      [&](int k) -> const std::vector<TreeMonomial>& {
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::vector<TreeMonomial> out;
    if (k == 1) out.push_back(TreeMonomial::identity(Mode::planar));
    for (std::size_t g = 0; g < sig.size(); ++g) {
      const int ar = sig[g].arity;
      if (ar > k) continue;
      std::vector<int> cur;
      compositions(k, ar, cur, [&](const std::vector<int>& parts) {
        std::vector<const std::vector<TreeMonomial>*> lists;
        for (int p : parts) lists.push_back(&shapes(p));
        std::vector<std::size_t> pick(parts.size(), 0);
        for (const auto* l : lists) {
          if (l->empty()) return;
        }
        for (;;) {
          VertexSeq seq{Vertex{static_cast<std::int32_t>(g), ar}};
          for (std::size_t i = 0; i < parts.size(); ++i) {
            auto vs = (*lists[i])[pick[i]].vertices();
            seq.insert(seq.end(), vs.begin(), vs.end());
          }
          out.push_back(TreeMonomial::from_vertices(std::move(seq), Mode::planar));
          std::size_t i = 0;
          while (i < parts.size() && ++pick[i] == lists[i]->size()) pick[i++] = 0;
          if (i == parts.size()) break;
        }
      });
    }
    return memo.emplace(k, std::move(out)).first->second;
  };
  if (n < 1) return {};
  return shapes(n);
}

std::vector<TreeMonomial> shuffle_labellings(const TreeMonomial& shape) {
  TreeIndex idx(shape);
  std::vector<std::int32_t> labels(static_cast<std::size_t>(shape.arity()));
  std::iota(labels.begin(), labels.end(), 1);
  std::vector<TreeMonomial> out;
  for (auto& seq : label_subtree(shape, idx, 0, labels)) {
    out.push_back(TreeMonomial::from_vertices_unchecked(std::move(seq), Mode::shuffle));
  }
  return out;
}

void for_each_free(const Signature& sig, int n, Mode mode,
                   const std::function<bool(const TreeMonomial&)>& visit) {
  for (const auto& s : planar_shapes(sig, n)) {
    if (mode == Mode::planar) {
      if (!visit(s)) return;
      continue;
    }
    for (const auto& m : shuffle_labellings(s)) {
      if (!visit(m)) return;
    }
  }
}

std::vector<TreeMonomial> enumerate_free(const Signature& sig, int n, Mode mode) {
  std::vector<TreeMonomial> out;
  for_each_free(sig, n, mode, [&](const TreeMonomial& m) {
    out.push_back(m);
    return true;
  });
  MonomialOrder order(sig);
  std::sort(out.begin(), out.end(),
            [&](const TreeMonomial& a, const TreeMonomial& b) { return order.less(a, b); });
  return out;
}

namespace {

// All re-planarizations of the subtree at pos (children permuted at every vertex).
std::vector<VertexSeq> replanarize(const TreeMonomial& m, const TreeIndex& idx, std::size_t pos) {
  if (m[pos].is_leaf()) return {VertexSeq{Vertex{kLeaf, 0}}};
  auto kids = m.children(pos, idx);
  std::vector<std::vector<VertexSeq>> sub;
  for (auto c : kids) sub.push_back(replanarize(m, idx, c));
  std::vector<std::size_t> perm(kids.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::set<VertexSeq> out;
  do {
    std::vector<std::size_t> pick(kids.size(), 0);
    for (;;) {
      VertexSeq seq{m[pos]};
      for (auto k : perm) {
        const auto& s = sub[k][pick[k]];
        seq.insert(seq.end(), s.begin(), s.end());
      }
      out.insert(std::move(seq));
      std::size_t i = 0;
      while (i < kids.size() && ++pick[i] == sub[i].size()) pick[i++] = 0;
      if (i == kids.size()) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<TreeMonomial> regular_orbit(const TreeMonomial& m, Regularity flavor) {
  if (m.mode() != Mode::shuffle) throw Error("regularity is defined for shuffle monomials");
  std::vector<TreeMonomial> shapes;
  if (flavor == Regularity::shuffle) {
    shapes.push_back(m.shape());
  } else {
    TreeMonomial s = m.shape();
    TreeIndex idx(s);
    for (auto& seq : replanarize(s, idx, 0)) {
      shapes.push_back(TreeMonomial::from_vertices(std::move(seq), Mode::planar));
    }
  }
  std::vector<TreeMonomial> out;
  for (const auto& s : shapes) {
    auto ls = shuffle_labellings(s);
    out.insert(out.end(), ls.begin(), ls.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<TreeMonomial> regularity_witness(std::span<const TreeMonomial> ms,
                                               Regularity flavor) {
  std::set<TreeMonomial> have(ms.begin(), ms.end());
  for (const auto& m : ms) {
    for (auto& o : regular_orbit(m, flavor)) {
      if (!have.count(o)) return o;
    }
  }
  return std::nullopt;
}

bool is_shuffle_regular(std::span<const TreeMonomial> ms) {
  return !regularity_witness(ms, Regularity::shuffle).has_value();
}

bool is_symmetric_regular(std::span<const TreeMonomial> ms) {
  return !regularity_witness(ms, Regularity::symmetric).has_value();
}

std::vector<TreeMonomial> regular_closure(std::span<const TreeMonomial> ms, Regularity flavor) {
  std::set<TreeMonomial> out;
  for (const auto& m : ms) {
    for (auto& o : regular_orbit(m, flavor)) out.insert(std::move(o));
  }
  return {out.begin(), out.end()};
}

std::vector<TreeMonomial> inter_reduce(std::span<const TreeMonomial> ms) {
  std::vector<TreeMonomial> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < ms.size() && !redundant; ++j) {
      if (i == j) continue;
      if (ms[j] == ms[i]) {
        redundant = j < i;
      } else {
        redundant = divides(ms[j], ms[i]);
      }
    }
    if (!redundant) out.push_back(ms[i]);
  }
  return out;
}

TreeMonomial truncate_shape(const TreeMonomial& m, int levels) {
  TreeIndex idx(m);
  std::vector<Vertex> out;
  std::size_t p = 0;
  while (p < m.size()) {
    if (!m[p].is_leaf() && idx.depth[p] < levels) {
      out.push_back(m[p]);
      ++p;
    } else {
      out.push_back(Vertex{kLeaf, 0});
      p = idx.end[p];
    }
  }
  return TreeMonomial::from_vertices(std::move(out), Mode::planar);
}

}  // namespace operad
