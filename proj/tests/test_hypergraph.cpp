#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

namespace {

const Bound two = Bound::of(2);

auto dup(const GameResult& r) -> bool { return r.winner == Winner::Duplicator; }

// Hyperedges of the lifted hypergraph, straight from the definition: for every
// play p and every move U inside last(p), the classes of U under p.
auto expected_edges(const HComonad& c) -> std::set<ElemSet> {
  std::set<ElemSet> out;
  for (const auto& p : all_plays(c.moves, static_cast<std::size_t>(c.depth))) {
    for (const auto& u : c.moves) {
      if (!std::includes(p.back().begin(), p.back().end(), u.begin(), u.end())) continue;
      ElemSet e;
      for (Element a : u) e.push_back(c.element_of({p, a}));
      std::sort(e.begin(), e.end());
      out.insert(e);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("hypergraph of a structure") {
  auto h = hgraph_of(path_a(), GuardKind::Atom, two);
  CHECK(h.edges() == std::vector<ElemSet>{{0}, {0, 1}, {1}, {1, 2}, {2}});
  CHECK(hgraph_of(tri_b(), GuardKind::Loose, Bound::unbounded()).has_edge({0, 1, 2}));
  CHECK(hgraph_of(binary(2, {}), GuardKind::Atom, two).edges() == std::vector<ElemSet>{{0}, {1}});
  CHECK_THROWS_AS(Hypergraph({"x"}, {{}}), Error);
  CHECK_THROWS_AS(Hypergraph({"x"}, {{3}}), Error);
}

TEST_CASE("hypergraph comonad carriers") {
  auto g = hgraph_of(path_a(), GuardKind::Atom, two);
  auto c = hmaterialize(g, two, 1);
  CHECK(c.size() == 7);
  CHECK(hmaterialize(Hypergraph({"x"}, {{0}}), two, 3).size() == 1);
  auto c2 = hmaterialize(g, two, 2);
  auto want = expected_edges(c2);
  CHECK(std::set<ElemSet>(c2.carrier.edges().begin(), c2.carrier.edges().end()) == want);
  CHECK(is_hypergraph_morphism(c2.carrier, g, hcounit(c2)));
  CHECK_THROWS_AS(hmaterialize(g, two, 3, 5), Error);
}

TEST_CASE("hypergraph comonad laws") {
  Gen gen(71);
  for (int round = 0; round < 20; ++round) {
    auto s = gen.mixed(3, 3, 1);
    auto g = hgraph_of(s, GuardKind::Loose, Bound::of(3));
    auto c = hmaterialize(g, Bound::of(3), 2);
    CHECK(hcoextend_into(hcounit(c), c, c) == identity_map(c.size()));
    auto t = Hypergraph({"x", "y"}, {{0}, {1}, {0, 1}});  // every nonempty subset
    auto ct = hmaterialize(t, Bound::of(3), 2);
    Map f(c.size());
    for (auto& v : f) v = static_cast<Element>(gen.below(2));
    REQUIRE(is_hypergraph_morphism(c.carrier, t, f));
    auto f_star = hcoextend_into(f, c, ct);
    CHECK(compose(hcounit(ct), f_star) == f);
    Map g2(ct.size());
    for (auto& v : g2) v = static_cast<Element>(gen.below(2));
    REQUIRE(is_hypergraph_morphism(ct.carrier, t, g2));
    CHECK(hcoextend_into(compose(g2, f_star), c, ct) == compose(hcoextend_into(g2, ct, ct), f_star));
  }
}

TEST_CASE("hypergraph games") {
  auto g = hgraph_of(path_a(), GuardKind::Atom, two);
  for (auto mode : {GameMode::Simulation, GameMode::Bisimulation}) {
    CHECK(dup(hgame_solve(g, g, {two, two, mode})));
  }
  auto one = Hypergraph({"x", "y"}, {{0, 1}});
  auto three = Hypergraph({"x", "y", "z"}, {{0, 1, 2}});
  CHECK_FALSE(dup(hgame_solve(one, three, {Bound::of(3), two, GameMode::Bisimulation})));
  CHECK(dup(hgame_solve(one, three, {Bound::of(3), two, GameMode::Simulation})));
}

TEST_CASE("property: structure simulation implies hypergraph simulation") {
  Gen gen(72);
  for (int round = 0; round < 80; ++round) {
    auto a = gen.digraph(1, 3, 0.4, true);
    auto b = gen.digraph(1, 3, 0.4, true);
    for (int d = 1; d <= 3; ++d) {
      auto s = solve(a, b, {GuardKind::Atom, two, Bound::of(d), GameMode::Simulation});
      auto h = hgame_solve(hgraph_of(a, GuardKind::Atom, two), hgraph_of(b, GuardKind::Atom, two),
                           {two, Bound::of(d), GameMode::Simulation});
      if (dup(s)) CHECK(dup(h));
    }
  }
}

TEST_CASE("property: the functor sends homomorphisms to hypergraph morphisms") {
  Gen gen(73);
  for (int round = 0; round < 40; ++round) {
    auto a = gen.mixed(3, 3, 1);
    auto b = gen.mixed(3, 5, 2);
    for (auto kind : {GuardKind::Atom, GuardKind::Loose, GuardKind::Clique}) {
      auto ha = hgraph_of(a, kind, Bound::of(3), EdgeMode::Closed);
      auto hb = hgraph_of(b, kind, Bound::of(3), EdgeMode::Closed);
      for (const auto& h : enumerate_homomorphisms(a, b)) CHECK(is_hypergraph_morphism(ha, hb, h));
    }
  }
}

TEST_CASE("the distributive law is the identity") {
  CHECK(check_em_law(path_a(), GuardKind::Atom, two, 2).ok);
  CHECK(check_em_law(singleton(), GuardKind::Atom, two, 2).ok);
  CHECK(check_em_law(tri_b(), GuardKind::Loose, Bound::of(3), 2).ok);
  CHECK_THROWS_AS(check_em_law(path_a(), GuardKind::Atom, two, 2, EdgeMode::Closed), Error);
}

TEST_CASE("property: lifted hyperedge families are cliques of one hyperedge") {
  auto c = hmaterialize(hgraph_of(tri_b(), GuardKind::Atom, two), two, 2);
  std::map<Element, std::set<Element>> adj;
  for (const auto& e : c.carrier.edges()) {
    for (Element u : e) {
      for (Element v : e) adj[u].insert(v);
    }
  }
  for (Element u = 0; u < static_cast<Element>(c.size()); ++u) {
    for (Element v : adj[u]) {
      for (Element w : adj[u]) {
        if (u < v && v < w && adj[v].count(w)) {
          bool inside = false;
          for (const auto& e : c.carrier.edges()) {
            inside = inside || (contains(e, u) && contains(e, v) && contains(e, w));
          }
          CHECK(inside);
        }
      }
    }
  }
}
