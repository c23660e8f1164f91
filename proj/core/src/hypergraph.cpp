#include "guarded/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "guarded/error.hpp"

namespace guarded {

Hypergraph::Hypergraph(std::vector<std::string> vertices, std::vector<ElemSet> edges)
    : names_(std::move(vertices)) {
  for (auto& e : edges) {
    if (e.empty()) throw Error(ErrorCode::Parse, "empty hyperedge");
    for (Element v : e) {
      if (v < 0 || static_cast<std::size_t>(v) >= names_.size()) {
        throw Error(ErrorCode::UnknownElement, "hyperedge vertex " + std::to_string(v));
      }
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

auto Hypergraph::has_edge(const ElemSet& x) const -> bool {
  return std::binary_search(edges_.begin(), edges_.end(), x);
}

auto Hypergraph::edges_within(Bound k) const -> std::vector<ElemSet> {
  std::vector<ElemSet> out;
  for (const auto& e : edges_) {
    if (k.admits(e.size())) out.push_back(e);
  }
  return out;
}

auto is_hypergraph_morphism(const Hypergraph& g, const Hypergraph& h, const Map& f) -> bool {
  if (f.size() != g.size()) return false;
  for (Element y : f) {
    if (y < 0 || static_cast<std::size_t>(y) >= h.size()) return false;
  }
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const ElemSet& e) { return h.has_edge(image(f, e)); });
}

auto hgraph_of(const Structure& s, GuardKind kind, Bound k, EdgeMode mode) -> Hypergraph {
  auto edges = mode == EdgeMode::Exact ? exact_sets(s, kind, k) : closed_sets(s, kind, k);
  return Hypergraph(s.names(), std::move(edges));
}

auto HComonad::class_of(const FocussedPlay& fp) const -> std::optional<Element> {
  if (fp.play.empty() || !contains(fp.play.back(), fp.focus)) return std::nullopt;
  auto it = index.find(canonicalize(fp));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

auto HComonad::element_of(const FocussedPlay& fp) const -> Element {
  auto x = class_of(fp);
  if (!x) {
    throw Error(ErrorCode::GuardViolation,
                "focussed play outside the carrier: " +
                    format_focussed(fp, [&](Element e) { return base.name(e); }));
  }
  return *x;
}

auto HComonad::play_set(const Play& p) const -> ElemSet {
  ElemSet out;
  for (Element a : p.back()) out.push_back(element_of({p, a}));
  std::sort(out.begin(), out.end());
  return out;
}

auto hmaterialize(const Hypergraph& g, Bound k, int d, std::size_t budget) -> HComonad {
  if (d < 1) throw Error(ErrorCode::ModeUnsupported, "depth must be at least 1");
  HComonad c;
  c.base = g;
  c.width = k;
  c.depth = d;
  c.moves = g.edges_within(k);
  const std::size_t m = c.moves.size();

  std::unordered_set<FocussedPlay, FocussedPlayHash> classes;
  std::size_t plays = 0;
  Play cur;
  auto collect = [&](auto&& self) -> void {
    for (std::size_t i = 0; i < m; ++i) {
      if (++plays > budget * 4) throw Error(ErrorCode::BudgetExceeded, "play budget");
      cur.push_back(c.moves[i]);
      for (Element a : c.moves[i]) {
        classes.insert(canonicalize({cur, a}));
        if (classes.size() > budget) {
          throw Error(ErrorCode::BudgetExceeded,
                      "carrier exceeds " + std::to_string(budget) + " vertices");
        }
      }
      if (static_cast<int>(cur.size()) < d) self(self);
      cur.pop_back();
    }
  };
  collect(collect);

  c.reps.assign(classes.begin(), classes.end());
  std::sort(c.reps.begin(), c.reps.end());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < c.reps.size(); ++i) {
    c.index.emplace(c.reps[i], static_cast<Element>(i));
    c.counit_table.push_back(c.reps[i].focus);
    names.push_back("c" + std::to_string(i));
  }

  // Moves inside each move, for the lifted hyperedges.
  std::vector<std::vector<std::size_t>> below(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (is_subset(c.moves[j], c.moves[i])) below[i].push_back(j);
    }
  }
  std::set<ElemSet> edges;
  auto lift = [&](auto&& self) -> void {
    for (std::size_t i = 0; i < m; ++i) {
      cur.push_back(c.moves[i]);
      for (std::size_t j : below[i]) {
        ElemSet e;
        for (Element a : c.moves[j]) e.push_back(c.index.at(canonicalize({cur, a})));
        std::sort(e.begin(), e.end());
        edges.insert(std::move(e));
      }
      if (static_cast<int>(cur.size()) < d) self(self);
      cur.pop_back();
    }
  };
  lift(lift);
  c.carrier = Hypergraph(std::move(names), {edges.begin(), edges.end()});
  return c;
}

auto hcounit(const HComonad& c) -> Map { return c.counit_table; }

auto hcoextend(const Map& h, const HComonad& c, const Hypergraph& target)
    -> std::vector<FocussedPlay> {
  if (!is_hypergraph_morphism(c.carrier, target, h)) {
    throw Error(ErrorCode::NotAHomomorphism, "coextension argument is not a hypergraph morphism");
  }
  std::vector<FocussedPlay> out;
  out.reserve(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const auto& rep = c.reps[x];
    FocussedPlay fp;
    for (std::size_t j = 1; j <= rep.play.size(); ++j) {
      auto v = image(h, c.play_set(prefix(rep.play, j)));
      if (!target.has_edge(v) || !c.width.admits(v.size())) {
        throw Error(ErrorCode::GuardViolation,
                    "V_" + std::to_string(j) + " is not a hyperedge of the target");
      }
      fp.play.push_back(std::move(v));
    }
    fp.focus = h[x];
    out.push_back(canonicalize(fp));
  }
  return out;
}

auto hcoextend_into(const Map& h, const HComonad& c, const HComonad& target) -> Map {
  auto plays = hcoextend(h, c, target.base);
  Map out(plays.size());
  for (std::size_t i = 0; i < plays.size(); ++i) out[i] = target.element_of(plays[i]);
  return out;
}

auto hcomultiply(const HComonad& c) -> std::vector<FocussedPlay> {
  Map id(c.size());
  std::iota(id.begin(), id.end(), 0);
  return hcoextend(id, c, c.carrier);
}

auto build_harena(const Hypergraph& g, const Hypergraph& h, const HGameConfig& cfg) -> Arena {
  Arena arena;
  arena.mode = cfg.mode;
  arena.overlap = cfg.overlap;
  arena.add_position({});
  const bool bij = cfg.mode == GameMode::Bisimulation;
  const auto left = g.edges_within(cfg.width);
  const auto right = h.edges_within(cfg.width);

  // Maps x -> some edge in targets: all functions, or bijections.
  auto responses = [&](const ElemSet& x, const std::vector<ElemSet>& targets, bool flip) {
    std::set<int> out;
    std::vector<Element> val(x.size());
    for (const auto& y : targets) {
      if (bij && y.size() != x.size()) continue;
      auto emit = [&]() {
        PartialMap phi;
        for (std::size_t i = 0; i < x.size(); ++i) {
          phi.push_back(flip ? std::pair{val[i], x[i]} : std::pair{x[i], val[i]});
        }
        std::sort(phi.begin(), phi.end());
        out.insert(arena.add_position(phi));
      };
      if (bij) {
        std::vector<Element> perm = y;
        do {
          std::copy(perm.begin(), perm.end(), val.begin());
          emit();
        } while (std::next_permutation(perm.begin(), perm.end()));
      } else {
        std::vector<std::size_t> idx(x.size(), 0);
        while (true) {
          for (std::size_t i = 0; i < x.size(); ++i) val[i] = y[idx[i]];
          emit();
          std::size_t i = 0;
          while (i < idx.size() && ++idx[i] == y.size()) idx[i++] = 0;
          if (i == idx.size()) break;
        }
      }
    }
    return std::vector<int>(out.begin(), out.end());
  };
  for (const auto& x : left) {
    arena.moves.push_back({Side::A, x});
    arena.responses.push_back(responses(x, right, false));
  }
  if (bij) {
    for (const auto& y : right) {
      arena.moves.push_back({Side::B, y});
      arena.responses.push_back(responses(y, left, true));
    }
  }
  return arena;
}

auto hgame_solve(const Hypergraph& g, const Hypergraph& h, const HGameConfig& cfg) -> GameResult {
  auto arena = build_harena(g, h, cfg);
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

auto check_em_law(const Structure& s, GuardKind kind, Bound k, int d, EdgeMode mode,
                  std::size_t budget) -> EmLawReport {
  if (mode != EdgeMode::Exact) {
    throw Error(ErrorCode::ModeUnsupported,
                "the hypergraph comonad does not close hyperedges under subsets");
  }
  EmLawReport report;
  auto c = materialize(s, kind, k, d, {budget, PlayAlphabet::Exact});
  auto lhs = hgraph_of(c.carrier, kind, k, EdgeMode::Exact);
  auto hc = hmaterialize(hgraph_of(s, kind, k, EdgeMode::Exact), k, d, budget);
  report.vertices = c.size();
  report.edges = lhs.edges().size();
  auto name = [&](Element e) { return s.name(e); };
  auto mismatch = [&](std::string why) {
    report.ok = false;
    report.mismatch = std::move(why);
    return report;
  };

  if (c.size() != hc.size()) {
    return mismatch("vertex counts differ: " + std::to_string(c.size()) + " vs " +
                    std::to_string(hc.size()));
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.reps[i] != hc.reps[i]) {
      return mismatch("vertex " + std::to_string(i) + ": " + format_focussed(c.reps[i], name) +
                      " vs " + format_focussed(hc.reps[i], name));
    }
  }
  const auto& le = lhs.edges();
  const auto& re = hc.carrier.edges();
  for (const auto& e : le) {
    if (!hc.carrier.has_edge(e)) return mismatch("edge " + c.carrier.format_set(e) + " only on the structure side");
  }
  for (const auto& e : re) {
    if (!lhs.has_edge(e)) return mismatch("edge " + c.carrier.format_set(e) + " only on the hypergraph side");
  }
  if (c.counit_table != hc.counit_table) return mismatch("counits differ");
  auto ld = comultiply(c);
  auto rd = hcomultiply(hc);
  for (std::size_t i = 0; i < ld.size(); ++i) {
    if (ld[i] != rd[i]) {
      return mismatch("comultiplication differs at vertex " + std::to_string(i));
    }
  }
  return report;
}

}  // namespace guarded
