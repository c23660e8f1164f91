#include "doctest.h"
#include "support.hpp"

using namespace testing_support;

namespace {

auto elements_of(const std::vector<GuardedSet>& sets) -> std::vector<ElemSet> {
  std::vector<ElemSet> out;
  for (const auto& g : sets) out.push_back(g.elements);
  return out;
}

const Bound inf = Bound::unbounded();

}  // namespace

TEST_CASE("exactly guarded membership") {
  CHECK(is_exactly_guarded(tri_b(), {0, 1, 2}, GuardKind::Loose, inf));
  CHECK(is_exactly_guarded(path_a(), {0}, GuardKind::Atom, Bound::of(1)));
  CHECK_FALSE(is_exactly_guarded(tri_b(), {0, 1, 2}, GuardKind::Atom, inf));
  CHECK_FALSE(is_exactly_guarded(path_a(), {0, 2}, GuardKind::Clique, Bound::of(2)));
  CHECK_THROWS_AS(is_exactly_guarded(path_a(), {7}, GuardKind::Atom, inf), Error);
}

TEST_CASE("guarded set listings") {
  const std::vector<ElemSet> path_sets{{0}, {0, 1}, {1}, {1, 2}, {2}};
  CHECK(elements_of(exactly_guarded_sets(path_a(), GuardKind::Atom, Bound::of(2))) == path_sets);
  CHECK(elements_of(guarded_sets(path_a(), GuardKind::Atom, Bound::of(2))) == path_sets);
  CHECK(elements_of(maximal_guarded_sets(path_a(), GuardKind::Atom, Bound::of(2))) ==
        std::vector<ElemSet>{{0, 1}, {1, 2}});

  auto loose = elements_of(exactly_guarded_sets(tri_b(), GuardKind::Loose, Bound::of(3)));
  CHECK(loose.size() == 7);
  CHECK(std::count(loose.begin(), loose.end(), ElemSet{0, 1, 2}) == 1);
  CHECK(guarded_sets(tri_b(), GuardKind::Loose, Bound::of(3)).size() == 7);
  CHECK(elements_of(maximal_guarded_sets(tri_b(), GuardKind::Loose, Bound::of(3))) ==
        std::vector<ElemSet>{{0, 1, 2}});
  CHECK(exactly_guarded_sets(tri_b(), GuardKind::Clique, Bound::of(2)).size() == 6);

  CHECK(elements_of(guarded_sets(singleton(), GuardKind::Atom, inf)) == std::vector<ElemSet>{{0}});
  CHECK(elements_of(maximal_guarded_sets(binary(3, {}), GuardKind::Atom, inf)) ==
        std::vector<ElemSet>{{0}, {1}, {2}});
}

TEST_CASE("witnesses describe a certifying guard") {
  for (const auto& g : exactly_guarded_sets(ternary(), GuardKind::Atom, inf)) {
    CHECK_FALSE(g.witness.empty());
  }
}

TEST_CASE("property: guards agree with the definitional oracle") {
  Gen gen(21);
  for (int round = 0; round < 80; ++round) {
    auto s = gen.mixed(4);
    for (auto kind : {GuardKind::Atom, GuardKind::Loose, GuardKind::Clique}) {
      for (auto k : {Bound::of(1), Bound::of(2), Bound::of(3), inf}) {
        CHECK(exact_sets(s, kind, k) == oracle_exact(s, kind, k));
        std::vector<ElemSet> closed;
        for (const auto& x : subsets(s.size())) {
          if (oracle_guarded(s, kind, k, x)) closed.push_back(x);
        }
        CHECK(closed_sets(s, kind, k) == closed);
      }
    }
  }
}

TEST_CASE("property: guarded sets are preserved by homomorphisms") {
  Gen gen(22);
  for (int round = 0; round < 60; ++round) {
    auto a = gen.mixed(3, 3, 1);
    auto b = gen.mixed(3, 6, 3);
    for (const auto& h : enumerate_homomorphisms(a, b)) {
      for (auto kind : {GuardKind::Atom, GuardKind::Loose, GuardKind::Clique}) {
        for (const auto& x : exact_sets(a, kind, Bound::of(3))) {
          CHECK(is_guarded(b, image(h, x), kind, Bound::of(3)));
        }
      }
    }
  }
}

TEST_CASE("property: closure, cliques and the kind hierarchy") {
  Gen gen(23);
  for (int round = 0; round < 60; ++round) {
    auto s = gen.mixed(4);
    auto g = gaifman(s);
    for (auto k : {Bound::of(2), Bound::of(3), inf}) {
      auto atom = closed_sets(s, GuardKind::Atom, k);
      auto loose = closed_sets(s, GuardKind::Loose, k);
      auto clique = closed_sets(s, GuardKind::Clique, k);
      CHECK(std::includes(loose.begin(), loose.end(), atom.begin(), atom.end()));
      CHECK(std::includes(clique.begin(), clique.end(), loose.begin(), loose.end()));
      for (const auto& x : clique) {
        CHECK(g.is_clique(x));
        for (const auto& y : subsets(x.size())) {
          ElemSet sub;
          for (Element i : y) sub.push_back(x[static_cast<std::size_t>(i)]);
          CHECK(is_guarded(s, sub, GuardKind::Clique, k));
        }
      }
      for (const auto& x : maximal_sets(s, GuardKind::Loose, k)) {
        for (const auto& y : loose) CHECK((y == x || !std::includes(y.begin(), y.end(), x.begin(), x.end())));
      }
    }
  }
}
