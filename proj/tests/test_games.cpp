#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

namespace {

const Bound inf = Bound::unbounded();

auto cfg(GuardKind kind, Bound k, Bound d, GameMode mode, Overlap overlap = Overlap::OneSided)
    -> GameConfig {
  return GameConfig{kind, k, d, mode, overlap};
}

auto dup(const GameResult& r) -> bool { return r.winner == Winner::Duplicator; }

}  // namespace

TEST_CASE("copy strategy wins every game on identical structures") {
  for (const auto& s : {path_a(), tri_b(), cycle4(), ternary(), binary(0, {})}) {
    for (auto kind : {GuardKind::Atom, GuardKind::Loose, GuardKind::Clique}) {
      for (auto mode : {GameMode::Simulation, GameMode::Bisimulation}) {
        for (auto d : {Bound::of(2), inf}) CHECK(dup(solve(s, s, cfg(kind, Bound::of(3), d, mode))));
      }
    }
  }
}

TEST_CASE("solver examples") {
  auto r = solve(path_a(), tri_b(), cfg(GuardKind::Atom, inf, inf, GameMode::Simulation));
  CHECK(dup(r));
  CHECK(find_homomorphism(path_a(), tri_b()).has_value());
  REQUIRE(r.strategy);
  CHECK_FALSE(check_strategy(path_a(), tri_b(), cfg(GuardKind::Atom, inf, inf, GameMode::Simulation), *r.strategy));
  auto back = solve(tri_b(), path_a(), cfg(GuardKind::Atom, inf, inf, GameMode::Simulation));
  CHECK_FALSE(dup(back));
  CHECK_FALSE(back.strategy);
  CHECK_FALSE(dup(solve(path_a(), tri_b(), cfg(GuardKind::Atom, Bound::of(2), inf, GameMode::Bisimulation))));
  CHECK_FALSE(dup(solve(path_a(), tri_b(), cfg(GuardKind::Atom, Bound::of(2), Bound::of(3), GameMode::Bisimulation))));
  CHECK(dup(solve(path_a(), tri_b(), cfg(GuardKind::Clique, Bound::of(2), Bound::of(2), GameMode::Simulation))));
}

TEST_CASE("coKleisli maps and strategies") {
  auto c = materialize(path_a(), GuardKind::Atom, Bound::of(2), 1);
  auto b = tri_b();
  auto h = find_homomorphism(c.carrier, b);
  REQUIRE(h);
  auto st = cokleisli_to_strategy(*h, c, b);
  auto one = cfg(GuardKind::Atom, Bound::of(2), Bound::of(1), GameMode::Simulation);
  CHECK_FALSE(check_strategy(path_a(), b, one, st));
  CHECK(strategy_to_cokleisli(st, c, b) == *h);
  CHECK_THROWS_AS(cokleisli_to_strategy(Map(c.size(), 0), c, b), Error);

  auto self = cokleisli_to_strategy(counit(c), c, path_a());
  for (const auto& m : moves_of_play({{0, 1}})) {
    auto resp = self.respond({m});
    REQUIRE(resp);
    CHECK(*resp == PartialMap{{0, 0}, {1, 1}});
  }

  auto two = cfg(GuardKind::Atom, Bound::of(2), Bound::of(2), GameMode::Simulation);
  auto c2 = materialize(path_a(), GuardKind::Atom, Bound::of(2), 2);
  auto r = solve(path_a(), b, two);
  REQUIRE(r.strategy);
  auto g = strategy_to_cokleisli(*r.strategy, c2, b);
  CHECK(is_homomorphism(c2.carrier, b, g));
  auto identity_game = solve(path_a(), path_a(), two);
  REQUIRE(identity_game.strategy);
  CHECK(is_homomorphism(c2.carrier, path_a(), strategy_to_cokleisli(*identity_game.strategy, c2, path_a())));
  CHECK_THROWS_AS(strategy_to_cokleisli(Strategy{}, c2, b), Error);
}

TEST_CASE("property: coKleisli round trip on enumerated homomorphisms") {
  Gen gen(41);
  for (int round = 0; round < 30; ++round) {
    auto a = gen.digraph(1, 3, 0.4);
    auto b = gen.digraph(1, 3, 0.6, true);
    auto c = materialize(a, GuardKind::Atom, Bound::of(2), 2);
    auto game = cfg(GuardKind::Atom, Bound::of(2), Bound::of(2), GameMode::Simulation);
    std::size_t seen = 0;
    for_each_homomorphism(c.carrier, b, [&](const Map& h) {
      auto st = cokleisli_to_strategy(h, c, b);
      CHECK_FALSE(check_strategy(a, b, game, st));
      CHECK(strategy_to_cokleisli(st, c, b) == h);
      return ++seen < 20;
    });
    CHECK((seen > 0) == dup(solve(a, b, game)));
  }
}

TEST_CASE("property: solver agrees with the reference game tree") {
  Gen gen(42);
  auto small = binary_structures_up_to_iso(2);
  std::vector<std::pair<Structure, Structure>> pairs;
  for (const auto& a : small) {
    for (const auto& b : small) pairs.push_back({a, b});
  }
  for (int i = 0; i < 120; ++i) pairs.push_back({gen.digraph(3, 3, 0.35, true), gen.digraph(2, 3, 0.5, true)});
  for (const auto& [a, b] : pairs) {
    for (auto kind : {GuardKind::Atom, GuardKind::Loose, GuardKind::Clique}) {
      for (auto mode : {GameMode::Simulation, GameMode::Bisimulation}) {
        for (auto overlap : {Overlap::OneSided, Overlap::TwoSided}) {
          auto r = solve(a, b, cfg(kind, Bound::of(2), Bound::of(3), mode, overlap));
          ReferenceGame ref(a, b, kind, Bound::of(2), mode, overlap);
          CHECK(r.survived == ref.survived(3));
        }
      }
    }
  }
}

TEST_CASE("property: exact Spoiler moves decide the same games as all guarded moves") {
  Gen gen(43);
  for (int i = 0; i < 80; ++i) {
    auto a = gen.mixed(3, 3, 1);
    auto b = gen.mixed(3, 4, 2);
    for (auto mode : {GameMode::Simulation, GameMode::Bisimulation}) {
      auto kind = gen.chance(0.5) ? GuardKind::Atom : GuardKind::Loose;
      ReferenceGame exact(a, b, kind, Bound::of(3), mode);
      ReferenceGame closed(a, b, kind, Bound::of(3), mode, Overlap::OneSided, true);
      CHECK(exact.survived(3) == closed.survived(3));
      CHECK(solve(a, b, cfg(kind, Bound::of(3), Bound::of(3), mode)).survived == closed.survived(3));
    }
  }
}

TEST_CASE("property: round monotonicity, symmetry and bisimulation implies simulation") {
  Gen gen(44);
  for (int i = 0; i < 120; ++i) {
    auto a = gen.digraph(1, 3, 0.4, true);
    auto b = gen.digraph(1, 3, 0.4, true);
    auto kind = gen.chance(0.5) ? GuardKind::Atom : GuardKind::Loose;
    for (int d = 1; d <= 3; ++d) {
      auto now = solve(a, b, cfg(kind, Bound::of(2), Bound::of(d), GameMode::Simulation));
      auto more = solve(a, b, cfg(kind, Bound::of(2), Bound::of(d + 1), GameMode::Simulation));
      CHECK((!dup(more) || dup(now)));
      auto ab = solve(a, b, cfg(kind, Bound::of(2), Bound::of(d), GameMode::Bisimulation));
      auto ba = solve(b, a, cfg(kind, Bound::of(2), Bound::of(d), GameMode::Bisimulation));
      CHECK(dup(ab) == dup(ba));
      if (dup(ab)) {
        CHECK(dup(now));
        CHECK(dup(solve(b, a, cfg(kind, Bound::of(2), Bound::of(d), GameMode::Simulation))));
      }
    }
    auto unbounded = solve(a, b, cfg(kind, Bound::of(2), inf, GameMode::Bisimulation));
    auto deep = solve(a, b, cfg(kind, Bound::of(2), Bound::of(12), GameMode::Bisimulation));
    CHECK(dup(unbounded) == dup(deep));
    if (unbounded.strategy) {
      CHECK_FALSE(check_strategy(a, b, cfg(kind, Bound::of(2), inf, GameMode::Bisimulation), *unbounded.strategy));
    }
  }
}

TEST_CASE("property: extracted strategies win") {
  Gen gen(45);
  for (int i = 0; i < 60; ++i) {
    auto a = gen.digraph(1, 3, 0.4);
    auto b = gen.digraph(1, 3, 0.6, true);
    for (auto mode : {GameMode::Simulation, GameMode::Bisimulation}) {
      auto c = cfg(GuardKind::Atom, Bound::of(2), Bound::of(3), mode);
      auto r = solve(a, b, c);
      CHECK(r.strategy.has_value() == dup(r));
      if (r.strategy) CHECK_FALSE(check_strategy(a, b, c, *r.strategy));
      if (!dup(r)) CHECK(check_strategy(a, b, c, r.attempt).has_value());
    }
  }
}
