#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

namespace {

const Bound two = Bound::of(2);

auto path_coalgebra() -> Coalgebra {
  return decomposition_to_coalgebra(
      Decomposition{path_a(), GuardKind::Atom, Bound::unbounded(), {{{0, 1}}, {{0, 1}}, {{0, 1}, {1, 2}}}});
}

auto all_maps(std::size_t n, std::size_t m, const std::function<void(const Map&)>& visit) {
  Map f(n, 0);
  if (n > 0 && m == 0) return;
  while (true) {
    visit(f);
    std::size_t i = 0;
    while (i < f.size() && ++f[i] == static_cast<Element>(m)) f[i++] = 0;
    if (i == f.size()) break;
  }
}

}  // namespace

TEST_CASE("cofree coalgebras") {
  auto f = cofree(path_a(), GuardKind::Atom, two, 2);
  CHECK(is_coalgebra(f.coalgebra));
  CHECK(f.coalgebra.gamma == comultiply(f.comonad));
  for (const auto& fp : f.coalgebra.gamma) CHECK(fp.play.size() <= 2);
  auto one = cofree(singleton(), GuardKind::Atom, two, 3);
  CHECK(one.coalgebra.structure.size() == 1);
  CHECK(is_coalgebra(one.coalgebra));
}

TEST_CASE("paths") {
  CHECK(is_path(path_coalgebra()));
  auto forked = decomposition_to_coalgebra(
      Decomposition{path4(), GuardKind::Atom, Bound::unbounded(), {{{1, 2}, {0, 1}}, {{1, 2}}, {{1, 2}}, {{1, 2}, {2, 3}}}});
  CHECK(is_coalgebra(forked));
  CHECK_FALSE(is_path(forked));
  auto trivial = synthesize(tri_b(), GuardKind::Loose, Bound::of(3));
  REQUIRE(trivial);
  CHECK(is_path(decomposition_to_coalgebra(*trivial)));
}

TEST_CASE("path embeddings") {
  auto f = cofree(path_a(), GuardKind::Atom, two, 2);
  auto paths = enumerate_path_embeddings(f.coalgebra, 2);
  const auto& c = f.comonad;
  Play chain{c.play_set({{0, 1}}), c.play_set({{0, 1}, {1, 2}})};
  CHECK(std::count(paths.begin(), paths.end(), chain) == 1);
  CHECK(std::count_if(paths.begin(), paths.end(), [](const Play& p) { return p.size() == 1; }) == 5);
  auto empty = cofree(binary(3, {}), GuardKind::Atom, two, 2);
  for (const auto& p : enumerate_path_embeddings(empty.coalgebra, 2)) {
    for (const auto& v : p) CHECK(v.size() == 1);
  }
  CHECK_THROWS_AS(enumerate_path_embeddings(f.coalgebra, 2, 3), Error);
}

TEST_CASE("identity morphisms are open pathwise embeddings") {
  for (const auto& co : {path_coalgebra(), cofree(tri_b(), GuardKind::Atom, two, 2).coalgebra}) {
    auto id = identity_map(co.structure.size());
    CHECK(is_coalgebra_morphism(id, co, co));
    CHECK(is_pathwise_embedding(id, co, co));
    CHECK(is_open(id, co, co));
  }
}

TEST_CASE("coalgebra morphisms into the cofree coalgebra are homomorphisms") {
  auto x = path_coalgebra();
  for (const auto& a : {path_a(), tri_b(), path4()}) {
    auto f = cofree(a, GuardKind::Atom, two, 2);
    std::size_t morphisms = 0;
    std::set<Map> via_counit;
    all_maps(x.structure.size(), f.comonad.size(), [&](const Map& m) {
      if (!is_coalgebra_morphism(m, x, f.coalgebra)) return;
      ++morphisms;
      via_counit.insert(compose(counit(f.comonad), m));
    });
    CHECK(morphisms == enumerate_homomorphisms(x.structure, a).size());
    CHECK(via_counit.size() == morphisms);
  }
}

TEST_CASE("spans from the copy strategy") {
  auto a = path_a();
  auto game = solve(a, a, {GuardKind::Atom, two, two, GameMode::Bisimulation});
  REQUIRE(game.strategy);
  auto span = build_span(a, a, *game.strategy, GuardKind::Atom, two, 2);
  CHECK_NOTHROW(verify_span(span));
  CHECK(span.apex.structure.size() == span.left_target.comonad.size());
  CHECK(std::set<Element>(span.left.begin(), span.left.end()).size() == span.left.size());
  CHECK(span.left == span.right);
  auto back = span_implies_bisim(span);
  CHECK_FALSE(check_strategy(a, a, {GuardKind::Atom, two, two, GameMode::Bisimulation}, back));
  for (const auto& m : moves_of_play({{0, 1}})) {
    auto r = back.respond({m});
    REQUIRE(r);
    CHECK(*r == PartialMap{{0, 0}, {1, 1}});
  }
}

TEST_CASE("span of the empty structures") {
  auto e = binary(0, {});
  auto game = solve(e, e, {GuardKind::Atom, two, two, GameMode::Bisimulation});
  REQUIRE(game.strategy);
  auto span = build_span(e, e, *game.strategy, GuardKind::Atom, two, 2);
  CHECK(span.apex.structure.size() == 0);
  CHECK_FALSE(check_strategy(e, e, {GuardKind::Atom, two, two, GameMode::Bisimulation}, span_implies_bisim(span)));
}

TEST_CASE("property: spans on bisimilar pairs have open pathwise legs") {
  Gen gen(61);
  int built = 0;
  for (int i = 0; i < 150 && built < 25; ++i) {
    auto a = gen.digraph(1, 3, 0.3, true);
    auto b = gen.chance(0.5) ? a : gen.digraph(a.size(), a.size(), 0.3, true);
    for (int d = 1; d <= 2; ++d) {
      GameConfig cfg{GuardKind::Atom, two, Bound::of(d), GameMode::Bisimulation, Overlap::TwoSided};
      auto game = solve(a, b, cfg);
      if (!game.strategy) continue;
      ++built;
      auto span = build_span(a, b, *game.strategy, GuardKind::Atom, two, d);
      CHECK(is_coalgebra(span.apex));
      CHECK(is_open(span.left, span.apex, span.left_target.coalgebra));
      CHECK(is_open(span.right, span.apex, span.right_target.coalgebra));
      CHECK(is_pathwise_embedding(span.left, span.apex, span.left_target.coalgebra));
      auto target_paths = enumerate_path_embeddings(span.right_target.coalgebra, static_cast<std::size_t>(d));
      std::set<Play> known(target_paths.begin(), target_paths.end());
      for (const auto& p : enumerate_path_embeddings(span.apex, static_cast<std::size_t>(d))) {
        CHECK(known.count(play_image(span.right, p)) == 1);
      }
      CHECK_FALSE(check_strategy(a, b, cfg, span_implies_bisim(span)));
    }
  }
  CHECK(built >= 10);
}
