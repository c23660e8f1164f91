#pragma once

#include <string>

#include "guarded/comonad.hpp"
#include "guarded/decomposition.hpp"
#include "guarded/games.hpp"
#include "guarded/hypergraph.hpp"
#include "guarded/structures.hpp"

namespace guarded {

// All readers throw Parse on malformed JSON or unknown keys.
auto read_text(const std::string& path) -> std::string;

auto parse_raw_structure(const std::string& text) -> RawStructure;
auto parse_structure(const std::string& text) -> Structure;
auto load_structure(const std::string& path) -> Structure;
auto structure_to_json(const Structure& s) -> std::string;

auto parse_hypergraph(const std::string& text) -> Hypergraph;
auto hypergraph_to_json(const Hypergraph& h) -> std::string;

// Element name -> list of element-name sets.
auto parse_decomposition(const std::string& text, const Structure& s, GuardKind kind, Bound k)
    -> Decomposition;
auto decomposition_to_json(const Decomposition& dec) -> std::string;

// List of {position, move, response} triples; history-indexed entries use
// {history, response}.
auto parse_strategy(const std::string& text, const Structure& a, const Structure& b,
                    GameMode mode) -> Strategy;
auto strategy_to_json(const Strategy& st, const Structure& a, const Structure& b)
    -> std::string;

// class-id -> {play, focus}.
auto comonad_sidecar_json(const ComonadStructure& c) -> std::string;

}  // namespace guarded
