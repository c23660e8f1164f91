#pragma once

#include <optional>
#include <vector>

#include "guarded/comonad.hpp"
#include "guarded/decomposition.hpp"
#include "guarded/games.hpp"

namespace guarded {

// The depth-bounded cofree coalgebra (carrier, delta) together with the
// comonad tables it was built from.
struct Cofree {
  ComonadStructure comonad;
  Coalgebra coalgebra;
};

auto cofree(const Structure& s, GuardKind kind, Bound k, int d, MaterializeOptions options = {})
    -> Cofree;

// Image of gamma as plays, sorted and deduplicated.
auto coalgebra_plays(const Coalgebra& co) -> std::vector<Play>;

// The image of gamma is a covering chain under the prefix order.
auto is_path(const Coalgebra& co) -> bool;

// A path embedding, identified with the chain of bags it lands on: every
// prefix of the chain is a play of the target coalgebra.
using PathEmbedding = Play;

auto enumerate_path_embeddings(const Coalgebra& co, std::size_t max_len,
                               std::size_t budget = 1000000) -> std::vector<PathEmbedding>;

auto is_coalgebra_morphism(const Map& f, const Coalgebra& src, const Coalgebra& dst) -> bool;
// f sends every path embedding to a path embedding: injective and strong on
// the path, with every prefix of the image chain a play of dst.
auto is_pathwise_embedding(const Map& f, const Coalgebra& src, const Coalgebra& dst) -> bool;
// Path lifting for one covering step at a time, from every path including
// the empty one.
auto is_open(const Map& f, const Coalgebra& src, const Coalgebra& dst) -> bool;

struct BisimSpan {
  Coalgebra apex;
  Cofree left_target;
  Cofree right_target;
  Map left;
  Map right;
  // Representatives of the apex elements: a sequence of strategy positions
  // and the focus pair.
  std::vector<std::pair<std::vector<PartialMap>, std::pair<Element, Element>>> reps;
};

// Builds the diagonal coalgebra from a winning d-round bisimulation
// strategy. Throws StrategyIncomplete or SpanInvalid.
auto build_span(const Structure& a, const Structure& b, const Strategy& st, GuardKind kind,
                Bound k, int d, MaterializeOptions options = {}) -> BisimSpan;
// Throws SpanInvalid naming the failed condition.
void verify_span(const BisimSpan& span);
// Lifts Spoiler histories along the legs. Throws SpanInvalid.
auto span_implies_bisim(const BisimSpan& span) -> Strategy;

}  // namespace guarded
