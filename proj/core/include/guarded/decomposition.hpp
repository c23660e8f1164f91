#pragma once

#include <optional>
#include <string>
#include <vector>

#include "guarded/comonad.hpp"
#include "guarded/guards.hpp"
#include "guarded/plays.hpp"
#include "guarded/structures.hpp"

namespace guarded {

struct Decomposition {
  Structure structure;
  GuardKind kind = GuardKind::Atom;
  Bound width;
  std::vector<Play> tau;  // indexed by element
  PlayAlphabet alphabet = PlayAlphabet::Exact;
};

// gamma[a] is the canonical focussed play of a; depth empty = unbounded.
struct Coalgebra {
  Structure structure;
  GuardKind kind = GuardKind::Atom;
  Bound width;
  Bound depth;
  PlayAlphabet alphabet = PlayAlphabet::Exact;
  std::vector<FocussedPlay> gamma;
};

// Image of tau, deduplicated and sorted.
auto image_plays(const Decomposition& dec) -> std::vector<Play>;
// Every prefix of a play in the image.
auto downset(const std::vector<Play>& plays) -> std::vector<Play>;

// Throws GuardViolation on an illegal play, then NotReflexive,
// EdgeUncovered, NotMinimal or NotVertexConnected for the first failed axiom.
void validate_decomposition(const Decomposition& dec);
auto is_valid_decomposition(const Decomposition& dec) -> bool;

// Throws NotACoalgebra naming the failed condition.
void check_coalgebra(const Coalgebra& co);
auto is_coalgebra(const Coalgebra& co) -> bool;

auto decomposition_to_coalgebra(const Decomposition& dec) -> Coalgebra;
auto coalgebra_to_decomposition(const Coalgebra& co) -> Decomposition;

struct SynthesisOptions {
  bool fallback = true;           // exhaustive search when the join forest fails
  std::size_t fallback_limit = 5;  // largest universe for the fallback
  std::size_t budget = 2000000;   // search nodes
};

// Join forest over the maximal exactly guarded sets; nullopt if none.
auto synthesize(const Structure& s, GuardKind kind, Bound k, SynthesisOptions options = {})
    -> std::optional<Decomposition>;
// Exhaustive search for a coalgebra structure of width k (plays of length at
// most |A| suffice). Throws BudgetExceeded.
auto search_coalgebra(const Structure& s, GuardKind kind, Bound k,
                      std::size_t budget = 2000000) -> std::optional<Coalgebra>;

// Least k admitting a decomposition; throws NoDecomposition.
auto guarded_treewidth(const Structure& s, GuardKind kind, SynthesisOptions options = {}) -> int;
// Least k admitting a coalgebra, by exhaustive search; throws NoDecomposition.
auto coalgebra_number(const Structure& s, GuardKind kind, std::size_t budget = 2000000) -> int;

auto check_decomposition_morphism(const Map& h, const Decomposition& dec_a,
                                  const Decomposition& dec_b, bool strict) -> bool;

// Derived properties of a valid decomposition; returns the failures.
auto decomposition_lemma_failures(const Decomposition& dec) -> std::vector<std::string>;

}  // namespace guarded
