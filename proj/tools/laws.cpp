#include "laws.hpp"

#include <numeric>

namespace guarded::tools {

auto to_string(Verdict v) -> std::string {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Skip:
      return "SKIP";
  }
  return "?";
}

namespace {

auto identity(std::size_t n) -> Map {
  Map id(n);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

// A homomorphism from the carrier back to its base, random when the search
// finds one within budget.
auto some_hom(const ComonadStructure& c, std::uint64_t seed) -> Map {
  if (auto h = random_homomorphism(c.carrier, c.base, seed, 20000)) return *h;
  return counit(c);
}

}  // namespace

auto run_laws(const std::string& name, const Structure& s, const LawOptions& options)
    -> std::vector<LawRow> {
  std::vector<LawRow> rows;
  const Bound k = Bound::of(options.width);
  for (GuardKind kind : {GuardKind::Atom, GuardKind::Loose}) {
    const std::string setting = std::string(to_string(kind)) + " k=" + k.str() +
                                " d=" + std::to_string(options.depth);
    auto row = [&](std::string law, bool ok, std::string detail = {}) {
      rows.push_back({name, setting, std::move(law), ok ? Verdict::Pass : Verdict::Fail,
                      std::move(detail)});
    };
    ComonadStructure c;
    try {
      c = materialize(s, kind, k, options.depth, {options.budget, PlayAlphabet::Exact});
    } catch (const Error& e) {
      rows.push_back({name, setting, "materialize", Verdict::Skip, e.detail()});
      continue;
    }
    try {
      row("counit coextends to identity", coextend_into(counit(c), c, c) == identity(c.size()));
      const Map f = some_hom(c, options.seed);
      const Map f_star = coextend_into(f, c, c);
      row("counit after coextension", compose(counit(c), f_star) == f);
      const Map g = some_hom(c, options.seed + 1);
      const Map lhs = coextend_into(compose(g, f_star), c, c);
      const Map rhs = compose(coextend_into(g, c, c), f_star);
      row("coextension composes", lhs == rhs);
      row("comultiplication matches its explicit form", comultiply(c) == comultiply_explicit(c));
    } catch (const Error& e) {
      row("comonad laws", false, e.detail());
    }

    try {
      auto em = check_em_law(s, kind, k, options.depth, EdgeMode::Exact, options.budget);
      row("hypergraph law", em.ok, em.mismatch);
    } catch (const Error& e) {
      row("hypergraph law", false, e.detail());
    }

    try {
      GameConfig cfg{kind, k, Bound::of(options.depth), GameMode::Simulation};
      auto game = solve(s, s, cfg);
      bool ok = game.winner == Winner::Duplicator;
      if (ok) {
        Map h = strategy_to_cokleisli(*game.strategy, c, s);
        ok = is_homomorphism(c.carrier, s, h);
        auto back = cokleisli_to_strategy(counit(c), c, s);
        ok = ok && !check_strategy(s, s, cfg, back) &&
             strategy_to_cokleisli(back, c, s) == counit(c);
      }
      row("strategy and coKleisli map", ok);
    } catch (const Error& e) {
      row("strategy and coKleisli map", false, e.detail());
    }
  }

  for (GuardKind kind : {GuardKind::Atom, GuardKind::Loose}) {
    const std::string setting = std::string(to_string(kind)) + " k=inf";
    try {
      auto dec = synthesize(s, kind, Bound::unbounded());
      if (!dec) {
        rows.push_back({name, setting, "decomposition round trip", Verdict::Skip, "none"});
        continue;
      }
      auto back = coalgebra_to_decomposition(decomposition_to_coalgebra(*dec));
      auto lemmas = decomposition_lemma_failures(*dec);
      rows.push_back({name, setting, "decomposition round trip",
                      back.tau == dec->tau && lemmas.empty() ? Verdict::Pass : Verdict::Fail,
                      lemmas.empty() ? "" : lemmas.front()});
    } catch (const Error& e) {
      rows.push_back({name, setting, "decomposition round trip", Verdict::Fail, e.detail()});
    }
  }
  return rows;
}

}  // namespace guarded::tools
