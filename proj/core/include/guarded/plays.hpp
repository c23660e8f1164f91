#pragma once

#include <compare>
#include <functional>
#include <string>
#include <vector>

#include "guarded/hashing.hpp"
#include "guarded/structures.hpp"

namespace guarded {

// Nonempty sequence of element sets; the element type is whatever universe
// the sets are drawn from (a base structure, a carrier, a hypergraph).
using Play = std::vector<ElemSet>;

struct FocussedPlay {
  Play play;
  Element focus = 0;

  friend auto operator<=>(const FocussedPlay&, const FocussedPlay&) = default;
  friend auto operator==(const FocussedPlay&, const FocussedPlay&) -> bool = default;
};

struct FocussedPlayHash {
  auto operator()(const FocussedPlay& fp) const noexcept -> std::size_t {
    return hash_mix(IntVecVecHash{}(fp.play), static_cast<std::size_t>(fp.focus));
  }
};

auto is_prefix(const Play& p, const Play& q) -> bool;
// Length of the greatest common prefix.
auto meet_length(const Play& p, const Play& q) -> std::size_t;
auto prefix(const Play& p, std::size_t n) -> Play;

// Length of the shortest prefix whose trailing run contains the focus.
auto canonical_length(const Play& p, Element focus) -> std::size_t;
auto canonicalize(const FocussedPlay& fp) -> FocussedPlay;
auto is_canonical(const FocussedPlay& fp) -> bool;

// The three-clause relation on focussed plays, taken literally: same focus,
// nonempty meet, focus present at every play on both paths up from the meet.
auto overlap_related(const FocussedPlay& x, const FocussedPlay& y) -> bool;

// Pointwise image of a play under a map.
auto play_image(const Map& h, const Play& p) -> Play;

auto format_play(const Play& p, const std::function<std::string(Element)>& name) -> std::string;
auto format_focussed(const FocussedPlay& fp, const std::function<std::string(Element)>& name)
    -> std::string;

}  // namespace guarded
