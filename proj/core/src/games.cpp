#include "guarded/games.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <set>

#include "guarded/error.hpp"

namespace guarded {

auto to_string(GameMode mode) -> std::string_view {
  return mode == GameMode::Simulation ? "sim" : "bisim";
}

auto domain(const PartialMap& phi) -> ElemSet {
  ElemSet out;
  out.reserve(phi.size());
  for (const auto& [a, b] : phi) out.push_back(a);
  return out;
}

auto range(const PartialMap& phi) -> ElemSet {
  ElemSet out;
  out.reserve(phi.size());
  for (const auto& [a, b] : phi) out.push_back(b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto map_at(const PartialMap& phi, Element a) -> std::optional<Element> {
  auto it = std::lower_bound(phi.begin(), phi.end(), std::pair<Element, Element>{a, INT_MIN});
  if (it == phi.end() || it->first != a) return std::nullopt;
  return it->second;
}

auto inverse_at(const PartialMap& phi, Element b) -> std::optional<Element> {
  for (const auto& [x, y] : phi) {
    if (y == b) return x;
  }
  return std::nullopt;
}

auto restrict_to(const PartialMap& phi, const ElemSet& x) -> PartialMap {
  PartialMap out;
  for (const auto& pr : phi) {
    if (contains(x, pr.first)) out.push_back(pr);
  }
  return out;
}

namespace {

auto agrees_on_domain(const PartialMap& prev, const PartialMap& next) -> bool {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < prev.size() && j < next.size()) {
    if (prev[i].first < next[j].first) {
      ++i;
    } else if (next[j].first < prev[i].first) {
      ++j;
    } else {
      if (prev[i].second != next[j].second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

auto agrees_on_range(const PartialMap& prev, const PartialMap& next) -> bool {
  for (const auto& [x, y] : next) {
    for (const auto& [x0, y0] : prev) {
      if (y0 == y && x0 != x) return false;
    }
  }
  return true;
}

}  // namespace

auto respects_overlap(const PartialMap& prev, const PartialMap& next, Side side, Overlap overlap)
    -> bool {
  if (overlap == Overlap::TwoSided) {
    return agrees_on_domain(prev, next) && agrees_on_range(prev, next);
  }
  return side == Side::A ? agrees_on_domain(prev, next) : agrees_on_range(prev, next);
}

namespace {

auto lookup(const Strategy& st, const std::vector<Move>& hist, const PartialMap& phi)
    -> const PartialMap* {
  if (!st.history.empty()) {
    auto h = st.history.find(hist);
    if (h != st.history.end()) return &h->second;
  }
  auto it = st.table.find({phi, hist.back()});
  return it == st.table.end() ? nullptr : &it->second;
}

}  // namespace

auto Strategy::respond(const std::vector<Move>& hist) const -> std::optional<PartialMap> {
  if (hist.empty()) return std::nullopt;
  PartialMap phi;
  std::vector<Move> cur;
  cur.reserve(hist.size());
  for (const auto& m : hist) {
    cur.push_back(m);
    const PartialMap* r = lookup(*this, cur, phi);
    if (!r) return std::nullopt;
    phi = *r;
  }
  return phi;
}

auto Arena::add_position(const PartialMap& phi) -> int {
  auto [it, fresh] = position_index.emplace(phi, static_cast<int>(positions.size()));
  if (fresh) positions.push_back(phi);
  return it->second;
}

namespace {

constexpr int kForever = INT_MAX;

}  // namespace

auto solve_arena(const Arena& arena, Bound rounds) -> std::vector<int> {
  const std::size_t n = arena.positions.size();
  std::vector<int> level(n, 0);
  std::vector<char> alive(n, 1);
  const int cap = rounds.finite() ? *rounds.n : INT_MAX;
  for (int i = 1; i <= cap; ++i) {
    std::vector<char> next(n, 0);
    bool changed = false;
    for (std::size_t p = 0; p < n; ++p) {
      if (!alive[p]) continue;
      bool ok = true;
      for (std::size_t m = 0; m < arena.moves.size() && ok; ++m) {
        bool found = false;
        for (int r : arena.responses[m]) {
          if (alive[static_cast<std::size_t>(r)] &&
              respects_overlap(arena.positions[p], arena.positions[static_cast<std::size_t>(r)],
                               arena.moves[m].side, arena.overlap)) {
            found = true;
            break;
          }
        }
        ok = found;
      }
      if (ok) {
        next[p] = 1;
        level[p] = i;
      } else {
        changed = true;
      }
    }
    alive.swap(next);
    if (!changed) {
      if (!rounds.finite()) {
        for (std::size_t p = 0; p < n; ++p) {
          if (alive[p]) level[p] = -1;
        }
      } else {
        // Stable before the cap: the survivors survive every bound.
        for (std::size_t p = 0; p < n; ++p) {
          if (alive[p]) level[p] = cap;
        }
      }
      break;
    }
  }
  return level;
}

auto extract_strategy(const Arena& arena, const std::vector<int>& level, Bound rounds)
    -> Strategy {
  Strategy st;
  st.mode = arena.mode;
  auto rank = [&](int r) { return level[static_cast<std::size_t>(r)] < 0 ? kForever : level[static_cast<std::size_t>(r)]; };
  const int cap = rounds.finite() ? *rounds.n : kForever;
  std::vector<int> depth(arena.positions.size(), -1);
  std::deque<int> queue{0};
  depth[0] = 0;
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    const int t = depth[static_cast<std::size_t>(p)];
    if (t >= cap) continue;
    for (std::size_t m = 0; m < arena.moves.size(); ++m) {
      int best = -1;
      for (int r : arena.responses[m]) {
        if (!respects_overlap(arena.positions[static_cast<std::size_t>(p)],
                              arena.positions[static_cast<std::size_t>(r)], arena.moves[m].side,
                              arena.overlap)) {
          continue;
        }
        if (best < 0 || rank(r) > rank(best)) best = r;
      }
      if (best < 0) continue;
      st.table[{arena.positions[static_cast<std::size_t>(p)], arena.moves[m]}] =
          arena.positions[static_cast<std::size_t>(best)];
      if (depth[static_cast<std::size_t>(best)] < 0) {
        depth[static_cast<std::size_t>(best)] = t + 1;
        queue.push_back(best);
      }
    }
  }
  return st;
}

namespace {

struct Checker {
  const Arena& arena;
  const Strategy& st;
  std::vector<std::set<int>> legal;
  std::set<std::pair<int, int>> seen;
  std::vector<Move> hist;

  Checker(const Arena& ar, const Strategy& s) : arena(ar), st(s), legal(ar.moves.size()) {
    for (std::size_t m = 0; m < ar.moves.size(); ++m) {
      legal[m].insert(ar.responses[m].begin(), ar.responses[m].end());
    }
  }

  auto describe(std::size_t m) const -> std::string {
    std::string out = std::string(arena.moves[m].side == Side::A ? "A" : "B") + "{";
    for (std::size_t i = 0; i < arena.moves[m].set.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(arena.moves[m].set[i]);
    }
    return out + "}";
  }

  // Remaining rounds; kForever for the positional closure.
  auto run(int p, int remaining) -> std::optional<std::string> {
    if (remaining == 0) return std::nullopt;
    if (st.history.empty() && !seen.insert({p, remaining}).second) return std::nullopt;
    const auto& phi = arena.positions[static_cast<std::size_t>(p)];
    for (std::size_t m = 0; m < arena.moves.size(); ++m) {
      hist.push_back(arena.moves[m]);
      const PartialMap* r = lookup(st, hist, phi);
      if (!r) {
        hist.pop_back();
        return "no response to move " + describe(m) + " at round " + std::to_string(hist.size() + 1);
      }
      auto it = arena.position_index.find(*r);
      if (it == arena.position_index.end() || legal[m].count(it->second) == 0) {
        hist.pop_back();
        return "illegal response to move " + describe(m) + " at round " +
               std::to_string(hist.size() + 1);
      }
      if (!respects_overlap(phi, *r, arena.moves[m].side, arena.overlap)) {
        hist.pop_back();
        return "response to move " + describe(m) + " at round " + std::to_string(hist.size() + 1) +
               " breaks the overlap condition";
      }
      auto sub = run(it->second, remaining == kForever ? kForever : remaining - 1);
      hist.pop_back();
      if (sub) return sub;
    }
    return std::nullopt;
  }
};

}  // namespace

auto check_arena_strategy(const Arena& arena, const Strategy& st, Bound rounds)
    -> std::optional<std::string> {
  if (!rounds.finite()) {
    // The closure is positional; history entries play no part.
    Strategy positional;
    positional.mode = st.mode;
    positional.table = st.table;
    Checker closure(arena, positional);
    return closure.run(0, kForever);
  }
  Checker checker(arena, st);
  return checker.run(0, *rounds.n);
}

namespace {

// Tuples of a with support inside x.
auto tuples_inside(const Structure& s, const ElemSet& x)
    -> std::vector<std::pair<std::size_t, const Tuple*>> {
  std::vector<std::pair<std::size_t, const Tuple*>> out;
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (const auto& t : s.tuples(r)) {
      if (std::all_of(t.begin(), t.end(), [&](Element e) { return contains(x, e); })) {
        out.push_back({r, &t});
      }
    }
  }
  return out;
}

// All maps x -> b that are partial homomorphisms (or partial isomorphisms)
// with image guarded in b.
void responses_for(const Structure& a, const Structure& b, const ElemSet& x,
                   const GuardOracle& b_guards, bool iso,
                   const std::function<void(const PartialMap&)>& emit) {
  auto inside = tuples_inside(a, x);
  // Group tuples by the position of their last-assigned element.
  std::vector<std::vector<std::size_t>> ready(x.size());
  for (std::size_t i = 0; i < inside.size(); ++i) {
    std::size_t last = 0;
    for (Element e : *inside[i].second) {
      auto pos = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), e) - x.begin());
      last = std::max(last, pos);
    }
    ready[last].push_back(i);
  }
  std::vector<Element> val(x.size());
  std::vector<char> used(b.size(), 0);
  auto value_of = [&](Element e) {
    return val[static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), e) - x.begin())];
  };
  auto finish = [&]() {
    PartialMap phi;
    phi.reserve(x.size());
    ElemSet img;
    for (std::size_t i = 0; i < x.size(); ++i) {
      phi.push_back({x[i], val[i]});
      img.push_back(val[i]);
    }
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (!b_guards.is_guarded(img)) return;
    if (iso) {
      // Reflection: every b-tuple over the image comes from an a-tuple.
      for (std::size_t r = 0; r < b.signature().size(); ++r) {
        for (const auto& t : b.tuples(r)) {
          if (!std::all_of(t.begin(), t.end(), [&](Element e) { return contains(img, e); })) {
            continue;
          }
          Tuple pre(t.size());
          for (std::size_t j = 0; j < t.size(); ++j) {
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (val[i] == t[j]) pre[j] = x[i];
            }
          }
          if (!a.holds(r, pre)) return;
        }
      }
    }
    emit(phi);
  };
  auto go = [&](auto&& self, std::size_t i) -> void {
    if (i == x.size()) {
      finish();
      return;
    }
    for (std::size_t v = 0; v < b.size(); ++v) {
      if (iso && used[v]) continue;
      val[i] = static_cast<Element>(v);
      bool ok = true;
      for (std::size_t ti : ready[i]) {
        const auto& [r, t] = inside[ti];
        Tuple lifted(t->size());
        for (std::size_t j = 0; j < t->size(); ++j) lifted[j] = value_of((*t)[j]);
        if (!b.holds(r, lifted)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[v] = 1;
      self(self, i + 1);
      used[v] = 0;
    }
  };
  go(go, 0);
}

}  // namespace

auto build_arena(const Structure& a, const Structure& b, const GameConfig& cfg) -> Arena {
  if (a.signature() != b.signature()) {
    throw Error(ErrorCode::UnknownRelation, "game structures have different signatures");
  }
  Arena arena;
  arena.mode = cfg.mode;
  arena.overlap = cfg.overlap;
  arena.add_position({});
  GuardOracle a_guards(a, cfg.kind, cfg.width);
  GuardOracle b_guards(b, cfg.kind, cfg.width);
  const bool iso = cfg.mode == GameMode::Bisimulation;
  for (const auto& x : a_guards.exact_sets()) {
    std::vector<int> resp;
    responses_for(a, b, x, b_guards, iso,
                  [&](const PartialMap& phi) { resp.push_back(arena.add_position(phi)); });
    arena.moves.push_back({Side::A, x});
    arena.responses.push_back(std::move(resp));
  }
  if (iso) {
    for (const auto& y : b_guards.exact_sets()) {
      std::vector<int> resp;
      responses_for(b, a, y, a_guards, true, [&](const PartialMap& psi) {
        PartialMap phi;
        phi.reserve(psi.size());
        for (const auto& [u, v] : psi) phi.push_back({v, u});
        std::sort(phi.begin(), phi.end());
        resp.push_back(arena.add_position(phi));
      });
      arena.moves.push_back({Side::B, y});
      arena.responses.push_back(std::move(resp));
    }
  }
  return arena;
}

auto solve(const Structure& a, const Structure& b, const GameConfig& cfg) -> GameResult {
  auto arena = build_arena(a, b, cfg);
  auto level = solve_arena(arena, cfg.rounds);
  GameResult out;
  out.positions = arena.positions.size();
  out.survived = level[0];
  const bool wins = cfg.rounds.finite() ? level[0] == *cfg.rounds.n : level[0] < 0;
  out.winner = wins ? Winner::Duplicator : Winner::Spoiler;
  out.attempt = extract_strategy(arena, level, cfg.rounds);
  if (wins) out.strategy = out.attempt;
  return out;
}

auto check_strategy(const Structure& a, const Structure& b, const GameConfig& cfg,
                    const Strategy& st) -> std::optional<std::string> {
  if (st.mode != cfg.mode) return std::string("strategy is for a different game mode");
  auto arena = build_arena(a, b, cfg);
  return check_arena_strategy(arena, st, cfg.rounds);
}

auto moves_of_play(const Play& p, Side side) -> std::vector<Move> {
  std::vector<Move> out;
  out.reserve(p.size());
  for (const auto& u : p) out.push_back({side, u});
  return out;
}

auto cokleisli_to_strategy(const Map& h, const ComonadStructure& c, const Structure& b)
    -> Strategy {
  if (!is_homomorphism(c.carrier, b, h)) {
    throw Error(ErrorCode::NotAHomomorphism, "coKleisli map is not a homomorphism");
  }
  Strategy st;
  st.mode = GameMode::Simulation;
  Play cur;
  auto walk = [&](auto&& self) -> void {
    for (const auto& u : c.moves) {
      cur.push_back(u);
      PartialMap phi;
      phi.reserve(u.size());
      for (Element x : u) phi.push_back({x, h[static_cast<std::size_t>(c.element_of({cur, x}))]});
      st.history.emplace(moves_of_play(cur), std::move(phi));
      if (static_cast<int>(cur.size()) < c.depth) self(self);
      cur.pop_back();
    }
  };
  walk(walk);
  return st;
}

auto strategy_to_cokleisli(const Strategy& st, const ComonadStructure& c, const Structure& b)
    -> Map {
  Map out(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const auto& rep = c.reps[x];
    auto r = st.respond(moves_of_play(rep.play));
    std::optional<Element> v = r ? map_at(*r, rep.focus) : std::nullopt;
    if (!v || static_cast<std::size_t>(*v) >= b.size()) {
      throw Error(ErrorCode::StrategyIncomplete,
                  "no response at " + c.label(static_cast<Element>(x)));
    }
    out[x] = *v;
  }
  return out;
}

}  // namespace guarded
