#include <benchmark/benchmark.h>

#include "guarded/guarded.hpp"

namespace {

using namespace guarded;

auto cycle(int n) -> Structure {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  RawStructure raw{{{"R", 2}}, names, {}};
  for (int i = 0; i < n; ++i) raw.relations["R"].push_back({names[i], names[(i + 1) % n]});
  return build_structure(raw);
}

auto path(int n) -> Structure {
  auto raw_names = cycle(n).names();
  RawStructure raw{{{"R", 2}}, raw_names, {}};
  for (int i = 0; i + 1 < n; ++i) raw.relations["R"].push_back({raw_names[i], raw_names[i + 1]});
  return build_structure(raw);
}

void materialize_cycle(benchmark::State& state) {
  const auto s = cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(materialize(s, GuardKind::Atom, Bound::of(2), 3).size());
  }
}
BENCHMARK(materialize_cycle)->Arg(3)->Arg(5)->Arg(8);

void bisim_game(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto a = path(n);
  const auto b = cycle(n);
  const GameConfig cfg{GuardKind::Loose, Bound::of(2), Bound::unbounded(), GameMode::Bisimulation};
  for (auto _ : state) benchmark::DoNotOptimize(solve(a, b, cfg).survived);
}
BENCHMARK(bisim_game)->Arg(4)->Arg(6)->Arg(8);

void clique_game(benchmark::State& state) {
  const auto a = cycle(static_cast<int>(state.range(0)));
  const auto b = cycle(3);
  const GameConfig cfg{GuardKind::Clique, Bound::of(2), Bound::of(3), GameMode::Simulation};
  for (auto _ : state) benchmark::DoNotOptimize(reduced_game(a, b, cfg).survived);
}
BENCHMARK(clique_game)->Arg(4)->Arg(6);

void synthesize_path(benchmark::State& state) {
  const auto s = path(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(s, GuardKind::Atom, Bound::unbounded()));
}
BENCHMARK(synthesize_path)->Arg(8)->Arg(32)->Arg(128);

void em_law(benchmark::State& state) {
  const auto s = cycle(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_em_law(s, GuardKind::Atom, Bound::of(2), 2).ok);
}
BENCHMARK(em_law)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
