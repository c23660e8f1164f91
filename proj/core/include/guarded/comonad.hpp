#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "guarded/guards.hpp"
#include "guarded/plays.hpp"
#include "guarded/structures.hpp"

namespace guarded {

// Exact: plays use exactly guarded sets only. Closed: any guarded set; this
// is the width-only comonad and refuses depth-bounded comultiplication.
enum class PlayAlphabet { Exact, Closed };

inline constexpr std::size_t kDefaultBudget = 200000;

struct MaterializeOptions {
  std::size_t budget = kDefaultBudget;
  PlayAlphabet alphabet = PlayAlphabet::Exact;
};

// The depth-bounded comonad applied to a base structure. Carrier element i
// is the class whose least representative is reps[i]; classes are numbered
// in lexicographic order of their representatives.
struct ComonadStructure {
  Structure base;
  GuardKind kind = GuardKind::Atom;
  Bound width;
  int depth = 1;
  PlayAlphabet alphabet = PlayAlphabet::Exact;
  std::vector<ElemSet> moves;
  Structure carrier;
  std::vector<FocussedPlay> reps;
  Map counit_table;
  std::unordered_map<FocussedPlay, Element, FocussedPlayHash> index;

  auto size() const -> std::size_t { return reps.size(); }
  // Canonicalises and looks the class up; nullopt if the play is too long
  // or uses a set outside the alphabet.
  auto class_of(const FocussedPlay& fp) const -> std::optional<Element>;
  auto element_of(const FocussedPlay& fp) const -> Element;  // throws GuardViolation
  // S_p as carrier elements, one per member of last(p), sorted.
  auto play_set(const Play& p) const -> ElemSet;
  auto label(Element x) const -> std::string;
};

// Throws CliqueWidthUnsupported for clique guards at finite width and
// BudgetExceeded when the carrier outgrows options.budget.
auto materialize(const Structure& s, GuardKind kind, Bound k, int d,
                 MaterializeOptions options = {}) -> ComonadStructure;

auto counit(const ComonadStructure& c) -> Map;

// h* with values as canonical focussed plays over b. Throws
// NotAHomomorphism when h is not a homomorphism carrier -> b, and
// GuardViolation when some V_j fails to be guarded in b.
auto coextend(const Map& h, const ComonadStructure& c, const Structure& b)
    -> std::vector<FocussedPlay>;
// The raw formula at an arbitrary representative (not necessarily least).
auto coextend_at(const Map& h, const ComonadStructure& c, const GuardOracle& b_guards,
                 PlayAlphabet alphabet, const FocussedPlay& rep) -> FocussedPlay;
// h* as a map into the materialised comonad over b.
auto coextend_into(const Map& h, const ComonadStructure& c, const ComonadStructure& cb) -> Map;

// delta as coextend(id): plays over carrier elements. Throws
// ModeUnsupported in closed mode.
auto comultiply(const ComonadStructure& c) -> std::vector<FocussedPlay>;
// T_j = { [[U_1..U_j], a_j] | a_j in U_j }, kept as a differential oracle.
auto comultiply_explicit(const ComonadStructure& c) -> std::vector<FocussedPlay>;

// Operations on canonical elements of the unbounded comonads, without any
// materialisation. h is evaluated on canonical focussed plays only.
using ClassFunction = std::function<Element(const FocussedPlay&)>;
using SetCheck = std::function<bool(const ElemSet&)>;

auto lazy_counit(const FocussedPlay& fp) -> Element;
auto lazy_coextend(const ClassFunction& h, const FocussedPlay& fp, const SetCheck& guarded = {})
    -> FocussedPlay;

// A focussed play whose sets consist of classes of the base comonad; the
// value type of delta in the unbounded case.
struct NestedPlay {
  std::vector<std::vector<FocussedPlay>> play;
  FocussedPlay focus;

  friend auto operator==(const NestedPlay&, const NestedPlay&) -> bool = default;
};

auto lazy_comultiply(const FocussedPlay& fp) -> NestedPlay;

}  // namespace guarded
