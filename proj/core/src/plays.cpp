#include "guarded/plays.hpp"

#include <algorithm>

namespace guarded {

auto is_prefix(const Play& p, const Play& q) -> bool {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

auto meet_length(const Play& p, const Play& q) -> std::size_t {
  std::size_t n = 0;
  while (n < p.size() && n < q.size() && p[n] == q[n]) ++n;
  return n;
}

auto prefix(const Play& p, std::size_t n) -> Play {
  return Play(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(std::min(n, p.size())));
}

auto canonical_length(const Play& p, Element focus) -> std::size_t {
  std::size_t n = p.size();
  while (n > 1 && contains(p[n - 2], focus)) --n;
  return n;
}

auto canonicalize(const FocussedPlay& fp) -> FocussedPlay {
  return {prefix(fp.play, canonical_length(fp.play, fp.focus)), fp.focus};
}

auto is_canonical(const FocussedPlay& fp) -> bool {
  return canonical_length(fp.play, fp.focus) == fp.play.size();
}

auto overlap_related(const FocussedPlay& x, const FocussedPlay& y) -> bool {
  if (x.focus != y.focus) return false;
  const std::size_t m = meet_length(x.play, y.play);
  if (m == 0) return false;
  // The plays on the path from the meet to p are the prefixes of lengths
  // m..|p|; their last sets are p[m-1..].
  for (std::size_t i = m - 1; i < x.play.size(); ++i) {
    if (!contains(x.play[i], x.focus)) return false;
  }
  for (std::size_t i = m - 1; i < y.play.size(); ++i) {
    if (!contains(y.play[i], y.focus)) return false;
  }
  return true;
}

auto play_image(const Map& h, const Play& p) -> Play {
  Play out;
  out.reserve(p.size());
  for (const auto& u : p) out.push_back(image(h, u));
  return out;
}

auto format_play(const Play& p, const std::function<std::string(Element)>& name) -> std::string {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += "{";
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (j) out += ",";
      out += name(p[i][j]);
    }
    out += "}";
  }
  return out + "]";
}

auto format_focussed(const FocussedPlay& fp, const std::function<std::string(Element)>& name)
    -> std::string {
  return "<" + format_play(fp.play, name) + "," + name(fp.focus) + ">";
}

}  // namespace guarded
