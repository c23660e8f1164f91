#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guarded/comonad.hpp"
#include "guarded/guards.hpp"
#include "guarded/structures.hpp"

namespace guarded {

enum class GameMode { Simulation, Bisimulation };

// OneSided follows the stated rules: an A-move is checked against the old
// map on the domain overlap, a B-move against the old inverse on the image
// overlap. TwoSided checks both overlaps for every move.
enum class Overlap { OneSided, TwoSided };

struct GameConfig {
  GuardKind kind = GuardKind::Atom;
  Bound width;
  Bound rounds;
  GameMode mode = GameMode::Simulation;
  Overlap overlap = Overlap::OneSided;
};

auto to_string(GameMode mode) -> std::string_view;

enum class Side { A, B };

struct Move {
  Side side = Side::A;
  ElemSet set;

  friend auto operator<=>(const Move&, const Move&) = default;
  friend auto operator==(const Move&, const Move&) -> bool = default;
};

// Pairs (a, b) sorted by a; always read as a map from the A side to the B
// side, also after a B-move.
using PartialMap = std::vector<std::pair<Element, Element>>;

auto domain(const PartialMap& phi) -> ElemSet;
auto range(const PartialMap& phi) -> ElemSet;
auto map_at(const PartialMap& phi, Element a) -> std::optional<Element>;
auto inverse_at(const PartialMap& phi, Element b) -> std::optional<Element>;
auto restrict_to(const PartialMap& phi, const ElemSet& x) -> PartialMap;
// The overlap condition for a response psi to a move on the given side.
auto respects_overlap(const PartialMap& prev, const PartialMap& next, Side side, Overlap overlap)
    -> bool;

struct Strategy {
  GameMode mode = GameMode::Simulation;
  // Positional part: (position, spoiler move) -> response.
  std::map<std::pair<PartialMap, Move>, PartialMap> table;
  // History-indexed part, consulted first.
  std::map<std::vector<Move>, PartialMap> history;

  // Response to the last move of hist after replaying the earlier moves.
  auto respond(const std::vector<Move>& hist) const -> std::optional<PartialMap>;
  auto size() const -> std::size_t { return table.size() + history.size(); }
};

enum class Winner { Duplicator, Spoiler };

struct GameResult {
  Winner winner = Winner::Spoiler;
  std::optional<Strategy> strategy;  // present iff Duplicator wins
  Strategy attempt;                  // best responses wherever one exists
  std::size_t positions = 0;
  // Rounds Duplicator survives from the empty position; -1 for unbounded.
  int survived = 0;
};

// Finite game arena shared by the structure and hypergraph solvers.
struct Arena {
  GameMode mode = GameMode::Simulation;
  Overlap overlap = Overlap::OneSided;
  std::vector<Move> moves;
  std::vector<PartialMap> positions;        // positions[0] is the empty map
  std::vector<std::vector<int>> responses;  // per move, legal response positions
  std::map<PartialMap, int> position_index;

  auto add_position(const PartialMap& phi) -> int;
};

// Levels: level[p] = number of further rounds Duplicator survives from p,
// capped at the round bound; unbounded survival is reported as -1.
auto solve_arena(const Arena& arena, Bound rounds) -> std::vector<int>;
auto extract_strategy(const Arena& arena, const std::vector<int>& level, Bound rounds) -> Strategy;
// Checks every history up to the round bound (or the positional closure
// when unbounded); returns a description of the first failure.
auto check_arena_strategy(const Arena& arena, const Strategy& st, Bound rounds)
    -> std::optional<std::string>;

auto build_arena(const Structure& a, const Structure& b, const GameConfig& cfg) -> Arena;
auto solve(const Structure& a, const Structure& b, const GameConfig& cfg) -> GameResult;
auto check_strategy(const Structure& a, const Structure& b, const GameConfig& cfg,
                    const Strategy& st) -> std::optional<std::string>;

// Histories are plays of c; the response to [U1..Un] is u -> h([[U1..Un], u]).
auto cokleisli_to_strategy(const Map& h, const ComonadStructure& c, const Structure& b) -> Strategy;
// [[p, u]] -> response(p)(u). Throws StrategyIncomplete.
auto strategy_to_cokleisli(const Strategy& st, const ComonadStructure& c, const Structure& b)
    -> Map;

auto moves_of_play(const Play& p, Side side = Side::A) -> std::vector<Move>;

}  // namespace guarded
