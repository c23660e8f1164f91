#pragma once

#include "guarded/games.hpp"
#include "guarded/structures.hpp"

namespace guarded {

// The base structure with relations C2..Cm holding on every tuple of
// pairwise Gaifman-adjacent elements, repeats included.
struct ExtendedStructure {
  Structure base;
  int max_arity = 2;
  Structure extended;
};

// Throws ModeUnsupported for m < 2 and UnknownRelation if a clique relation
// name is already taken.
auto clique_extend(const Structure& s, int m) -> ExtendedStructure;
auto clique_relation_name(int n) -> std::string;

// Arity used by the reduction: the width (at least 2), or the larger
// universe when the width is unbounded.
auto reduction_arity(const Structure& a, const Structure& b, Bound width) -> int;
// Solves the clique game as an atom game on the extensions.
auto reduced_game(const Structure& a, const Structure& b, const GameConfig& cfg) -> GameResult;

}  // namespace guarded
