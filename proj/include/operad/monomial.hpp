#pragma once

// Tree monomials of free planar (non-symmetric) and shuffle operads.
//
// A monomial is stored as the preorder sequence of its vertices. Internal
// vertices carry a generator index and their arity; leaves carry a label.
// Planar monomials always have the labels 1..n in left-to-right order, so
// the same matching and substitution code serves both kinds: the labels of
// a planar occurrence are automatically order-isomorphic to the divisor's.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "operad/rational.hpp"

namespace operad {

enum class Mode { planar, shuffle };

std::string_view to_string(Mode mode);

struct Generator {
  std::string name;
  int arity = 2;
};

/// An ordered alphabet of generators. Generator names are unique
/// identifiers; arities are at least 2 (the identity is implicit).
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Generator> generators);

  std::size_t size() const noexcept { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_.at(i); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }

  /// Index of the generator, or -1.
  int index_of(std::string_view name) const;
  int max_arity() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Generator> generators_;
};

inline constexpr std::int32_t kLeaf = -1;

struct Vertex {
  std::int32_t gen = kLeaf;  // generator index, or kLeaf
  std::int32_t value = 1;    // arity of an internal vertex, label of a leaf

  bool is_leaf() const noexcept { return gen == kLeaf; }
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

class TreeMonomial;

/// Per-vertex navigation data of a monomial: subtree extents, minimal
/// reachable leaf label and depth (number of internal vertices above).
struct TreeIndex {
  std::vector<std::size_t> end;  // one past the last vertex of the subtree
  std::vector<std::int32_t> min_label;
  std::vector<int> depth;

  explicit TreeIndex(const TreeMonomial& m);
};

class TreeMonomial {
 public:
  /// The identity monomial Id (a single leaf).
  TreeMonomial() = default;
  static TreeMonomial identity(Mode mode);

  /// Validates the preorder sequence. Planar leaves are relabelled 1..n
  /// left to right; shuffle leaves must be a permutation of 1..n and satisfy
  /// the shuffle condition.
  static TreeMonomial from_vertices(std::vector<Vertex> vertices, Mode mode);

  /// As from_vertices, but shuffle mode accepts any permutation labelling;
  /// used for candidate relabellings that are filtered by is_shuffle.
  static TreeMonomial from_vertices_unchecked(std::vector<Vertex> vertices, Mode mode);

  Mode mode() const noexcept { return mode_; }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  const Vertex& operator[](std::size_t i) const { return vertices_[i]; }
  std::size_t size() const noexcept { return vertices_.size(); }

  int arity() const noexcept { return arity_; }
  int weight() const noexcept { return static_cast<int>(vertices_.size()) - arity_; }
  /// Number of levels of internal vertices; 0 for Id.
  int depth() const;
  bool is_identity() const noexcept { return vertices_.size() == 1; }

  /// Leaf labels in left-to-right order.
  std::vector<std::int32_t> leaf_labels() const;
  /// Positions of the children of the internal vertex at pos.
  std::vector<std::size_t> children(std::size_t pos, const TreeIndex& index) const;
  std::vector<std::size_t> children(std::size_t pos) const;

  /// The same tree with labels forgotten (a planar monomial).
  TreeMonomial shape() const;

  friend bool operator==(const TreeMonomial&, const TreeMonomial&) = default;
  friend std::strong_ordering operator<=>(const TreeMonomial& a, const TreeMonomial& b);

  std::size_t hash() const noexcept;

 private:
  TreeMonomial(std::vector<Vertex> vertices, Mode mode, int arity)
      : vertices_(std::move(vertices)), mode_(mode), arity_(arity) {}

  std::vector<Vertex> vertices_{Vertex{}};
  Mode mode_ = Mode::planar;
  int arity_ = 1;
};

struct TreeMonomialHash {
  std::size_t operator()(const TreeMonomial& m) const noexcept { return m.hash(); }
};

/// Builds g(children...). Planar children are concatenated; shuffle children
/// keep their labels (the caller supplies the final, disjoint labels).
TreeMonomial graft(int gen, int arity, std::span<const TreeMonomial> children, Mode mode);

// --- text form -------------------------------------------------------------

/// tree := leaf | "(" name tree+ ")"; leaf := [1-9][0-9]* (shuffle) | "-" (planar).
/// "Id" denotes the identity in both modes.
TreeMonomial parse_monomial(std::string_view text, const Signature& sig, Mode mode);
std::string format_monomial(const TreeMonomial& m, const Signature& sig);

// --- shuffle condition and composition --------------------------------------

/// True iff at every internal vertex the leftmost child reaches the minimal
/// leaf label of the vertex. Planar monomials always satisfy it.
bool is_shuffle(const TreeMonomial& m);

/// Position of the first internal vertex violating the shuffle condition.
std::optional<std::size_t> shuffle_violation(const TreeMonomial& m);

/// Partial composition outer o_slot inner. The naive labelling keeps outer
/// labels below slot, gives the inner leaves slot..slot+b-1 and shifts the
/// remaining outer labels by b-1; relabel[k-1] is the final label of naive
/// label k. An empty relabel means the identity. In shuffle mode the result
/// must be a shuffle monomial in which both factors appear unchanged.
TreeMonomial compose(const TreeMonomial& outer, int slot, const TreeMonomial& inner,
                     std::span<const std::int32_t> relabel = {});

/// All shuffle compositions of inner into the given slot of outer.
std::vector<TreeMonomial> shuffle_compositions(const TreeMonomial& outer, int slot,
                                               const TreeMonomial& inner);

// --- divisibility ------------------------------------------------------------

/// An embedded copy of a divisor inside a host monomial.
struct Occurrence {
  std::size_t root = 0;                 // host position of the divisor root
  std::vector<std::size_t> internal;    // host positions, divisor preorder
  std::vector<std::size_t> cuts;        // cuts[i]: host subtree hanging at divisor leaf i+1

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

/// Occurrence of q anchored at host position anchor, if any.
std::optional<Occurrence> match_at(const TreeMonomial& q, const TreeMonomial& host,
                                   std::size_t anchor, const TreeIndex& index);

std::vector<Occurrence> occurrences(const TreeMonomial& q, const TreeMonomial& host);
bool divides(const TreeMonomial& q, const TreeMonomial& host);
bool divides(const TreeMonomial& q, const TreeMonomial& host, const TreeIndex& index);
/// True iff some q in qs occurs anchored at the host root.
bool divides_at_root(std::span<const TreeMonomial> qs, const TreeMonomial& host);

/// The occurrence of host in itself.
Occurrence whole(const TreeMonomial& host);

/// Reconstructs the submonomial identified by occ from the host alone (the
/// cut labels are the order-compressed minimal labels below each cut).
TreeMonomial extract(const TreeMonomial& host, const Occurrence& occ);

/// Replaces the region of occ in host by replacement (of arity occ.cuts.size()),
/// hanging cuts[i] at the replacement leaf labelled i+1. When position_map is
/// given it receives, for every replacement vertex, its position in the
/// result (for a leaf: the position of the attached host subtree).
TreeMonomial substitute(const TreeMonomial& host, const Occurrence& occ,
                        const TreeMonomial& replacement,
                        std::vector<std::size_t>* position_map = nullptr);

// --- enumeration and regularity -----------------------------------------------

/// All planar shapes (labels 1..n left to right) of arity n.
std::vector<TreeMonomial> planar_shapes(const Signature& sig, int n);

/// All shuffle labellings of a shape.
std::vector<TreeMonomial> shuffle_labellings(const TreeMonomial& shape);

/// Every monomial of arity n of the free operad exactly once, sorted by the
/// default path-lexicographic order (ascending).
std::vector<TreeMonomial> enumerate_free(const Signature& sig, int n, Mode mode);

/// Visits the same monomials in generation order; stops when the visitor
/// returns false.
void for_each_free(const Signature& sig, int n, Mode mode,
                   const std::function<bool(const TreeMonomial&)>& visit);

enum class Regularity { shuffle, symmetric };

/// Shuffle monomials obtained from m by permuting leaf labels (shuffle
/// flavour) or, in addition, by re-planarizing the underlying tree
/// (symmetric flavour).
std::vector<TreeMonomial> regular_orbit(const TreeMonomial& m, Regularity flavor);

/// First monomial required by the flavour that is missing from ms.
std::optional<TreeMonomial> regularity_witness(std::span<const TreeMonomial> ms,
                                               Regularity flavor);
bool is_shuffle_regular(std::span<const TreeMonomial> ms);
bool is_symmetric_regular(std::span<const TreeMonomial> ms);
/// Smallest regular superset, sorted structurally and deduplicated.
std::vector<TreeMonomial> regular_closure(std::span<const TreeMonomial> ms, Regularity flavor);

/// Drops monomials divisible by another member and duplicates; keeps order.
std::vector<TreeMonomial> inter_reduce(std::span<const TreeMonomial> ms);

/// The top `levels` levels of internal vertices of m; deeper subtrees become
/// leaves. Labels are forgotten (the result is a planar shape).
TreeMonomial truncate_shape(const TreeMonomial& m, int levels);

}  // namespace operad
