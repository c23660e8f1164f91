#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "guarded/hashing.hpp"
#include "guarded/structures.hpp"

namespace guarded {

enum class GuardKind { Atom, Loose, Clique };

auto to_string(GuardKind kind) -> std::string_view;
auto parse_guard_kind(std::string_view text) -> std::optional<GuardKind>;

// A width or round bound; empty means unbounded.
struct Bound {
  std::optional<int> n;

  static auto unbounded() -> Bound { return {}; }
  static auto of(int v) -> Bound { return {v}; }
  auto finite() const -> bool { return n.has_value(); }
  auto admits(std::size_t x) const -> bool { return !n || static_cast<long>(x) <= *n; }
  auto str() const -> std::string { return n ? std::to_string(*n) : "inf"; }

  friend auto operator==(const Bound&, const Bound&) -> bool = default;
};

struct GuardedSet {
  ElemSet elements;
  GuardKind kind = GuardKind::Atom;
  std::string witness;

  friend auto operator==(const GuardedSet& a, const GuardedSet& b) -> bool {
    return a.elements == b.elements && a.kind == b.kind;
  }
};

// Precomputed guard tables for one (structure, kind, width). Queries are
// constant time; construction enumerates every exactly guarded set.
class GuardOracle {
 public:
  GuardOracle(const Structure& s, GuardKind kind, Bound k);

  auto kind() const -> GuardKind { return kind_; }
  auto width() const -> Bound { return k_; }
  auto exact_sets() const -> const std::vector<ElemSet>& { return exact_; }
  auto is_exact(const ElemSet& x) const -> bool { return exact_index_.count(x) > 0; }
  auto is_guarded(const ElemSet& x) const -> bool { return closed_index_.count(x) > 0; }
  auto witness(const ElemSet& x) const -> std::string;

 private:
  const Structure* s_;
  GuardKind kind_;
  Bound k_;
  std::vector<ElemSet> exact_;
  std::unordered_set<ElemSet, IntVecHash> exact_index_;
  std::unordered_set<ElemSet, IntVecHash> closed_index_;
};

// Throws UnknownElement for an element outside the universe.
auto is_exactly_guarded(const Structure& s, const ElemSet& x, GuardKind kind, Bound k) -> bool;
auto is_guarded(const Structure& s, const ElemSet& x, GuardKind kind, Bound k) -> bool;

auto exactly_guarded_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<GuardedSet>;
auto guarded_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<GuardedSet>;
auto maximal_guarded_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<GuardedSet>;

// Element sets only, sorted lexicographically.
auto exact_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet>;
auto closed_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet>;
auto maximal_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet>;

// Cliques of the graph with at most k elements, sorted lexicographically.
auto bounded_cliques(const Graph& g, Bound k) -> std::vector<ElemSet>;

}  // namespace guarded
