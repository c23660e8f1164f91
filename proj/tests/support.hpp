#pragma once

// Fixtures, seeded generators and brute-force oracles shared by the unit and
// acceptance tests. The oracles deliberately avoid the library's guard,
// canonicalization and game code so that they check it independently.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "guarded/guarded.hpp"

namespace testing_support {

using namespace guarded;

inline auto letters(std::size_t n) -> std::vector<std::string> {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline auto binary(std::size_t n, std::vector<Tuple> tuples) -> Structure {
  return Structure(Signature({{"R", 2}}), letters(n), {std::move(tuples)});
}

inline auto path_a() -> Structure { return binary(3, {{0, 1}, {1, 2}}); }
inline auto tri_b() -> Structure { return binary(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline auto path4() -> Structure { return binary(4, {{0, 1}, {1, 2}, {2, 3}}); }
inline auto cycle4() -> Structure { return binary(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline auto singleton() -> Structure { return binary(1, {}); }
inline auto ternary() -> Structure {
  return Structure(Signature({{"T", 3}, {"R", 2}}), letters(4), {{{0, 1, 2}}, {{2, 3}}});
}

inline auto identity_map(std::size_t n) -> Map {
  Map id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

// Random structures over one binary and one ternary relation.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  auto below(std::size_t n) -> std::size_t {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }
  auto chance(double p) -> bool { return std::bernoulli_distribution(p)(rng); }

  auto tuple(std::size_t n, int arity) -> Tuple {
    Tuple t;
    for (int i = 0; i < arity; ++i) t.push_back(static_cast<Element>(below(n)));
    return t;
  }

  auto mixed(std::size_t max_n, std::size_t max_binary = 4, std::size_t max_ternary = 2)
      -> Structure {
    const std::size_t n = 1 + below(max_n);
    std::vector<Tuple> r, t;
    for (std::size_t i = below(max_binary + 1); i > 0; --i) r.push_back(tuple(n, 2));
    for (std::size_t i = below(max_ternary + 1); i > 0; --i) t.push_back(tuple(n, 3));
    return Structure(Signature({{"R", 2}, {"T", 3}}), letters(n), {r, t});
  }

  auto digraph(std::size_t min_n, std::size_t max_n, double p, bool loops = false) -> Structure {
    const std::size_t n = min_n + below(max_n - min_n + 1);
    std::vector<Tuple> r;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if ((u != v || loops) && chance(p)) r.push_back({static_cast<Element>(u), static_cast<Element>(v)});
      }
    }
    return binary(n, r);
  }

  auto graph(std::size_t n, double p) -> Structure {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (chance(p)) edges.push_back({static_cast<int>(u), static_cast<int>(v)});
      }
    }
    return simple_graph(n, edges);
  }

  static auto simple_graph(std::size_t n, const std::vector<std::pair<int, int>>& edges) -> Structure {
    std::vector<Tuple> r;
    for (auto [u, v] : edges) {
      r.push_back({u, v});
      r.push_back({v, u});
    }
    return binary(n, r);
  }
};

// All structures over {R:2} with at most max_n elements, one per isomorphism
// class.
inline auto binary_structures_up_to_iso(std::size_t max_n) -> std::vector<Structure> {
  std::vector<Structure> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const std::size_t cells = n * n;
    std::set<std::uint32_t> seen;
    std::vector<int> perm(n);
    for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
      std::uint32_t best = mask;
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::uint32_t m = 0;
        for (std::size_t c = 0; c < cells; ++c) {
          if (mask >> c & 1u) {
            const std::size_t u = static_cast<std::size_t>(perm[c / n]);
            const std::size_t v = static_cast<std::size_t>(perm[c % n]);
            m |= 1u << (u * n + v);
          }
        }
        best = std::min(best, m);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!seen.insert(best).second) continue;
      std::vector<Tuple> r;
      for (std::size_t c = 0; c < cells; ++c) {
        if (best >> c & 1u) r.push_back({static_cast<Element>(c / n), static_cast<Element>(c % n)});
      }
      out.push_back(binary(n, r));
    }
  }
  return out;
}

// ---- Guard oracle ------------------------------------------------------

inline auto subsets(std::size_t n) -> std::vector<ElemSet> {
  std::vector<ElemSet> out;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    ElemSet x;
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1u) x.push_back(static_cast<Element>(i));
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline auto tuple_support(const Tuple& t) -> ElemSet {
  std::set<Element> s(t.begin(), t.end());
  return {s.begin(), s.end()};
}

inline auto all_facts(const Structure& s) -> std::vector<ElemSet> {
  std::vector<ElemSet> out;
  for (const auto& table : s.tables()) {
    for (const auto& t : table) out.push_back(tuple_support(t));
  }
  return out;
}

inline auto co_occur(const Structure& s, Element u, Element v) -> bool {
  for (const auto& f : all_facts(s)) {
    if (std::count(f.begin(), f.end(), u) && std::count(f.begin(), f.end(), v)) return true;
  }
  return false;
}

// Exactly guarded sets straight from the definitions, by subset scan.
inline auto oracle_exact(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet> {
  std::vector<ElemSet> out;
  const auto facts = all_facts(s);
  for (const auto& x : subsets(s.size())) {
    if (!k.admits(x.size())) continue;
    bool ok = x.size() == 1;
    if (!ok && kind == GuardKind::Atom) ok = std::count(facts.begin(), facts.end(), x) > 0;
    if (!ok && kind == GuardKind::Loose) {
      ok = true;
      for (Element u : x) {
        for (Element v : x) {
          if (u >= v) continue;
          bool covered = false;
          for (const auto& f : facts) {
            covered = covered || (std::includes(x.begin(), x.end(), f.begin(), f.end()) &&
                                  std::count(f.begin(), f.end(), u) && std::count(f.begin(), f.end(), v));
          }
          ok = ok && covered;
        }
      }
    }
    if (!ok && kind == GuardKind::Clique) {
      ok = true;
      for (Element u : x) {
        for (Element v : x) ok = ok && (u == v || co_occur(s, u, v));
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

inline auto oracle_guarded(const Structure& s, GuardKind kind, Bound k, const ElemSet& y) -> bool {
  for (const auto& x : oracle_exact(s, kind, k)) {
    if (std::includes(x.begin(), x.end(), y.begin(), y.end())) return true;
  }
  return false;
}

// ---- Equivalence of focussed plays ---------------------------------------

// All plays of length at most d over the given alphabet.
inline auto all_plays(const std::vector<ElemSet>& alphabet, std::size_t d) -> std::vector<Play> {
  std::vector<Play> out;
  std::vector<Play> frontier{{}};
  for (std::size_t len = 1; len <= d; ++len) {
    std::vector<Play> next;
    for (const auto& p : frontier) {
      for (const auto& u : alphabet) {
        Play q = p;
        q.push_back(u);
        next.push_back(q);
        out.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

inline auto all_focussed(const std::vector<Play>& plays) -> std::vector<FocussedPlay> {
  std::vector<FocussedPlay> out;
  for (const auto& p : plays) {
    for (Element a : p.back()) out.push_back({p, a});
  }
  return out;
}

// The three-clause relation: same focus, nonempty common prefix, and the focus
// lies in every set on the tree path between the two plays.
inline auto three_clause(const FocussedPlay& x, const FocussedPlay& y) -> bool {
  if (x.focus != y.focus) return false;
  std::size_t m = 0;
  while (m < x.play.size() && m < y.play.size() && x.play[m] == y.play[m]) ++m;
  if (m == 0) return false;
  auto in = [&](const ElemSet& u) { return std::count(u.begin(), u.end(), x.focus) > 0; };
  for (std::size_t i = m - 1; i < x.play.size(); ++i) {
    if (!in(x.play[i])) return false;
  }
  for (std::size_t i = m - 1; i < y.play.size(); ++i) {
    if (!in(y.play[i])) return false;
  }
  return true;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  auto find(std::size_t x) -> std::size_t {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  auto unite(std::size_t x, std::size_t y) -> bool {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[std::max(x, y)] = std::min(x, y);
    return true;
  }
};

// ---- Homomorphism search -------------------------------------------------

// Plain backtracking, checking each tuple once all its entries are assigned.
inline auto oracle_find_hom(const Structure& a, const Structure& b) -> std::optional<Map> {
  const std::size_t n = a.size();
  if (n == 0) return Map{};
  if (b.size() == 0) return std::nullopt;
  std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> due(n);
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    for (const auto& t : a.tuples(r)) {
      const auto last = static_cast<std::size_t>(*std::max_element(t.begin(), t.end()));
      due[last].push_back({r, &t});
    }
  }
  std::vector<std::set<Tuple>> target(b.signature().size());
  for (std::size_t r = 0; r < target.size(); ++r) target[r] = {b.tuples(r).begin(), b.tuples(r).end()};
  Map h(n, 0);
  auto go = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t v = 0; v < b.size(); ++v) {
      h[i] = static_cast<Element>(v);
      bool ok = true;
      for (const auto& [r, t] : due[i]) {
        Tuple img;
        for (Element e : *t) img.push_back(h[static_cast<std::size_t>(e)]);
        if (!target[r].count(img)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, i + 1)) return true;
    }
    return false;
  };
  if (go(go, 0)) return h;
  return std::nullopt;
}

// ---- Reference game-tree search --------------------------------------------

// Duplicator wins `rounds` rounds from the empty position, by direct recursion
// over Spoiler moves and all candidate responses, memoized on (position,
// rounds left). Responses must have a guarded image, be a partial homomorphism
// (or a partial isomorphism) and agree with the previous map on the overlap.
class ReferenceGame {
 public:
  ReferenceGame(const Structure& a, const Structure& b, GuardKind kind, Bound k, GameMode mode,
                Overlap overlap = Overlap::OneSided, bool closed_moves = false)
      : a_(a), b_(b), mode_(mode), overlap_(overlap) {
    auto moves = [&](const Structure& s) {
      if (!closed_moves) return oracle_exact(s, kind, k);
      std::vector<ElemSet> out;
      for (const auto& x : subsets(s.size())) {
        if (oracle_guarded(s, kind, k, x)) out.push_back(x);
      }
      return out;
    };
    for (const auto& x : subsets(a.size())) {
      if (oracle_guarded(a, kind, k, x)) closed_a_.insert(x);
    }
    for (const auto& x : subsets(b.size())) {
      if (oracle_guarded(b, kind, k, x)) closed_b_.insert(x);
    }
    moves_a_ = moves(a);
    if (mode == GameMode::Bisimulation) moves_b_ = moves(b);
    for (const auto& f : a.tables()) facts_a_.push_back({f.begin(), f.end()});
    for (const auto& f : b.tables()) facts_b_.push_back({f.begin(), f.end()});
  }

  auto duplicator_wins(int rounds) -> bool { return wins({}, rounds); }

  // Largest r <= cap such that Duplicator survives r rounds.
  auto survived(int cap) -> int {
    int r = 0;
    while (r < cap && wins({}, r + 1)) ++r;
    return r;
  }

 private:
  using Pairs = std::vector<std::pair<Element, Element>>;

  auto maps_into(const ElemSet& x, const Structure& y) const -> std::vector<Map> {
    std::vector<Map> out;
    if (y.size() == 0) return out;
    Map v(x.size(), 0);
    while (true) {
      out.push_back(v);
      std::size_t i = 0;
      while (i < v.size() && ++v[i] == static_cast<Element>(y.size())) v[i++] = 0;
      if (i == v.size()) break;
    }
    return out;
  }

  // Does phi (a to b) preserve, and in bisimulation mode reflect, all facts
  // among mapped elements?
  auto legal(const Pairs& phi) const -> bool {
    std::map<Element, Element> f, g;
    for (auto [x, y] : phi) {
      if (f.count(x)) return false;
      f[x] = y;
      if (mode_ == GameMode::Bisimulation && g.count(y)) return false;
      g[y] = x;
    }
    for (std::size_t r = 0; r < facts_a_.size(); ++r) {
      for (const auto& t : a_.tuples(r)) {
        Tuple img;
        bool inside = true;
        for (Element e : t) {
          inside = inside && f.count(e);
          if (inside) img.push_back(f[e]);
        }
        if (inside && !facts_b_[r].count(img)) return false;
      }
    }
    if (mode_ == GameMode::Bisimulation) {
      for (std::size_t r = 0; r < facts_b_.size(); ++r) {
        for (const auto& t : b_.tuples(r)) {
          Tuple pre;
          bool inside = true;
          for (Element e : t) {
            inside = inside && g.count(e);
            if (inside) pre.push_back(g[e]);
          }
          if (inside && !facts_a_[r].count(pre)) return false;
        }
      }
    }
    return true;
  }

  auto wins(const Pairs& phi, int rounds) -> bool {
    if (rounds == 0) return true;
    auto key = std::make_pair(phi, rounds);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok = true;
    for (int side = 0; side < 2 && ok; ++side) {
      const auto& moves = side == 0 ? moves_a_ : moves_b_;
      const Structure& other = side == 0 ? b_ : a_;
      for (const auto& x : moves) {
        bool answered = false;
        for (const auto& v : maps_into(x, other)) {
          Pairs next;
          ElemSet img;
          for (std::size_t i = 0; i < x.size(); ++i) {
            next.push_back(side == 0 ? std::pair{x[i], v[i]} : std::pair{v[i], x[i]});
            img.push_back(v[i]);
          }
          std::sort(next.begin(), next.end());
          img = tuple_support(img);
          if (!(side == 0 ? closed_b_ : closed_a_).count(img)) continue;
          if (!legal(next) || !agrees(phi, next, side)) continue;
          if (wins(next, rounds - 1)) {
            answered = true;
            break;
          }
        }
        if (!answered) {
          ok = false;
          break;
        }
      }
    }
    memo_[key] = ok;
    return ok;
  }

  auto agrees(const Pairs& prev, const Pairs& next, int side) const -> bool {
    for (auto [x, y] : prev) {
      for (auto [x2, y2] : next) {
        const bool check_dom = side == 0 || overlap_ == Overlap::TwoSided;
        const bool check_rng = side == 1 || overlap_ == Overlap::TwoSided;
        if (check_dom && x == x2 && y != y2) return false;
        if (check_rng && y == y2 && x != x2) return false;
      }
    }
    return true;
  }

  const Structure& a_;
  const Structure& b_;
  GameMode mode_;
  Overlap overlap_;
  std::vector<ElemSet> moves_a_, moves_b_;
  std::set<ElemSet> closed_a_, closed_b_;
  std::vector<std::set<Tuple>> facts_a_, facts_b_;
  std::map<std::pair<Pairs, int>, bool> memo_;
};

// ---- Graph oracles ---------------------------------------------------------

// Undirected simple graph from a symmetric binary relation: has a cycle?
inline auto has_cycle(const Structure& g) -> bool {
  UnionFind uf(g.size());
  std::set<std::pair<Element, Element>> edges;
  for (const auto& t : g.tuples(0)) {
    if (t[0] != t[1]) edges.insert({std::min(t[0], t[1]), std::max(t[0], t[1])});
  }
  for (auto [u, v] : edges) {
    if (!uf.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) return true;
  }
  return false;
}

inline auto has_triangle(const Graph& g) -> bool {
  const auto n = static_cast<Element>(g.size());
  for (Element u = 0; u < n; ++u) {
    for (Element v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v)) continue;
      for (Element w = v + 1; w < n; ++w) {
        if (g.adjacent(u, w) && g.adjacent(v, w)) return true;
      }
    }
  }
  return false;
}

}  // namespace testing_support
