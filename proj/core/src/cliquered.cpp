#include "guarded/cliquered.hpp"

#include <algorithm>

#include "guarded/error.hpp"

namespace guarded {

auto clique_relation_name(int n) -> std::string { return "C" + std::to_string(n); }

auto clique_extend(const Structure& s, int m) -> ExtendedStructure {
  if (m < 2) throw Error(ErrorCode::ModeUnsupported, "clique arity must be at least 2");
  std::vector<Relation> rels = s.signature().relations();
  for (int n = 2; n <= m; ++n) {
    if (s.signature().find(clique_relation_name(n))) {
      throw Error(ErrorCode::UnknownRelation,
                  "relation " + clique_relation_name(n) + " already in the signature");
    }
    rels.push_back({clique_relation_name(n), n});
  }
  std::vector<std::vector<Tuple>> tables = s.tables();
  auto g = gaifman(s);
  for (int n = 2; n <= m; ++n) {
    std::vector<Tuple> table;
    Tuple cur;
    auto go = [&](auto&& self) -> void {
      if (static_cast<int>(cur.size()) == n) {
        table.push_back(cur);
        return;
      }
      for (std::size_t v = 0; v < s.size(); ++v) {
        const auto e = static_cast<Element>(v);
        if (!std::all_of(cur.begin(), cur.end(), [&](Element u) { return g.adjacent(u, e); })) {
          continue;
        }
        cur.push_back(e);
        self(self);
        cur.pop_back();
      }
    };
    go(go);
    tables.push_back(std::move(table));
  }
  ExtendedStructure out;
  out.base = s;
  out.max_arity = m;
  out.extended = Structure(Signature(std::move(rels)), s.names(), std::move(tables));
  return out;
}

auto reduction_arity(const Structure& a, const Structure& b, Bound width) -> int {
  if (width.finite()) return std::max(*width.n, 2);
  return std::max({static_cast<int>(a.size()), static_cast<int>(b.size()), 2});
}

auto reduced_game(const Structure& a, const Structure& b, const GameConfig& cfg) -> GameResult {
  if (cfg.kind != GuardKind::Clique) {
    throw Error(ErrorCode::ModeUnsupported, "the reduction applies to clique guards");
  }
  const int m = reduction_arity(a, b, cfg.width);
  GameConfig atom = cfg;
  atom.kind = GuardKind::Atom;
  return solve(clique_extend(a, m).extended, clique_extend(b, m).extended, atom);
}

}  // namespace guarded
