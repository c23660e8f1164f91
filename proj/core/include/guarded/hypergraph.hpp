#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "guarded/comonad.hpp"
#include "guarded/games.hpp"
#include "guarded/guards.hpp"
#include "guarded/plays.hpp"

namespace guarded {

// Hyperedges are nonempty, sorted, deduplicated and listed in lexicographic
// order.
class Hypergraph {
 public:
  Hypergraph() = default;
  // Throws UnknownElement for a vertex out of range, Parse for an empty edge.
  Hypergraph(std::vector<std::string> vertices, std::vector<ElemSet> edges);

  auto size() const -> std::size_t { return names_.size(); }
  auto name(Element v) const -> const std::string& { return names_[static_cast<std::size_t>(v)]; }
  auto names() const -> const std::vector<std::string>& { return names_; }
  auto edges() const -> const std::vector<ElemSet>& { return edges_; }
  auto has_edge(const ElemSet& x) const -> bool;
  // Hyperedges with at most k vertices.
  auto edges_within(Bound k) const -> std::vector<ElemSet>;

  friend auto operator==(const Hypergraph& a, const Hypergraph& b) -> bool {
    return a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<ElemSet> edges_;
};

auto is_hypergraph_morphism(const Hypergraph& g, const Hypergraph& h, const Map& f) -> bool;

enum class EdgeMode { Exact, Closed };

// Vertices = universe; hyperedges = the (exactly) guarded sets of width k.
auto hgraph_of(const Structure& s, GuardKind kind, Bound k, EdgeMode mode = EdgeMode::Exact)
    -> Hypergraph;

// The depth-bounded hypergraph comonad applied to a hypergraph; classes
// numbered as in the structure comonad.
struct HComonad {
  Hypergraph base;
  Bound width;
  int depth = 1;
  std::vector<ElemSet> moves;
  Hypergraph carrier;
  std::vector<FocussedPlay> reps;
  Map counit_table;
  std::unordered_map<FocussedPlay, Element, FocussedPlayHash> index;

  auto size() const -> std::size_t { return reps.size(); }
  auto class_of(const FocussedPlay& fp) const -> std::optional<Element>;
  auto element_of(const FocussedPlay& fp) const -> Element;  // throws GuardViolation
  auto play_set(const Play& p) const -> ElemSet;
};

auto hmaterialize(const Hypergraph& g, Bound k, int d, std::size_t budget = kDefaultBudget)
    -> HComonad;
auto hcounit(const HComonad& c) -> Map;
// Throws NotAHomomorphism when h is not a hypergraph morphism, GuardViolation
// when some V_j is not a hyperedge of width k in the target.
auto hcoextend(const Map& h, const HComonad& c, const Hypergraph& target)
    -> std::vector<FocussedPlay>;
auto hcoextend_into(const Map& h, const HComonad& c, const HComonad& target) -> Map;
auto hcomultiply(const HComonad& c) -> std::vector<FocussedPlay>;

struct HGameConfig {
  Bound width;
  Bound rounds;
  GameMode mode = GameMode::Simulation;
  Overlap overlap = Overlap::OneSided;
};

auto build_harena(const Hypergraph& g, const Hypergraph& h, const HGameConfig& cfg) -> Arena;
auto hgame_solve(const Hypergraph& g, const Hypergraph& h, const HGameConfig& cfg) -> GameResult;

struct EmLawReport {
  bool ok = true;
  std::string mismatch;
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

// Compares both sides of the law under the identity on classes. Throws
// ModeUnsupported in closed mode.
auto check_em_law(const Structure& s, GuardKind kind, Bound k, int d,
                  EdgeMode mode = EdgeMode::Exact, std::size_t budget = kDefaultBudget)
    -> EmLawReport;

}  // namespace guarded
