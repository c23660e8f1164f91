#include "guarded/comonad.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "guarded/error.hpp"

namespace guarded {

auto ComonadStructure::class_of(const FocussedPlay& fp) const -> std::optional<Element> {
  if (fp.play.empty() || !contains(fp.play.back(), fp.focus)) return std::nullopt;
  auto it = index.find(canonicalize(fp));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

auto ComonadStructure::element_of(const FocussedPlay& fp) const -> Element {
  auto x = class_of(fp);
  if (!x) {
    throw Error(ErrorCode::GuardViolation,
                "focussed play outside the carrier: " +
                    format_focussed(fp, [&](Element e) { return base.name(e); }));
  }
  return *x;
}

auto ComonadStructure::play_set(const Play& p) const -> ElemSet {
  ElemSet out;
  out.reserve(p.back().size());
  for (Element a : p.back()) out.push_back(element_of({p, a}));
  std::sort(out.begin(), out.end());
  return out;
}

auto ComonadStructure::label(Element x) const -> std::string {
  return format_focussed(reps[static_cast<std::size_t>(x)],
                         [&](Element e) { return base.name(e); });
}

namespace {

auto saturating_play_count(std::size_t m, int d, std::size_t cap) -> std::size_t {
  std::size_t total = 0;
  std::size_t level = 1;
  for (int n = 1; n <= d; ++n) {
    if (m != 0 && level > cap / m) return cap + 1;
    level *= m;
    total += level;
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

auto materialize(const Structure& s, GuardKind kind, Bound k, int d, MaterializeOptions options)
    -> ComonadStructure {
  if (kind == GuardKind::Clique && k.finite()) {
    throw Error(ErrorCode::CliqueWidthUnsupported,
                "clique guards have no width-bounded comonad; use clique_extend and atom guards");
  }
  if (d < 1) throw Error(ErrorCode::ModeUnsupported, "depth must be at least 1");

  ComonadStructure c;
  c.base = s;
  c.kind = kind;
  c.width = k;
  c.depth = d;
  c.alphabet = options.alphabet;
  c.moves = options.alphabet == PlayAlphabet::Exact ? exact_sets(s, kind, k)
                                                    : closed_sets(s, kind, k);
  const std::size_t m = c.moves.size();
  const std::size_t play_cap = options.budget * 4;
  if (saturating_play_count(m, d, play_cap) > play_cap) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(m) + " moves at depth " + std::to_string(d) +
                    " exceed the play budget");
  }

  std::unordered_set<FocussedPlay, FocussedPlayHash> classes;
  Play cur;
  auto collect = [&](auto&& self) -> void {
    for (std::size_t i = 0; i < m; ++i) {
      cur.push_back(c.moves[i]);
      for (Element a : c.moves[i]) {
        classes.insert(canonicalize({cur, a}));
        if (classes.size() > options.budget) {
          throw Error(ErrorCode::BudgetExceeded,
                      "carrier exceeds " + std::to_string(options.budget) + " elements");
        }
      }
      if (static_cast<int>(cur.size()) < d) self(self);
      cur.pop_back();
    }
  };
  collect(collect);

  c.reps.assign(classes.begin(), classes.end());
  std::sort(c.reps.begin(), c.reps.end());
  c.index.reserve(c.reps.size());
  c.counit_table.resize(c.reps.size());
  std::vector<std::string> names;
  names.reserve(c.reps.size());
  for (std::size_t i = 0; i < c.reps.size(); ++i) {
    c.index.emplace(c.reps[i], static_cast<Element>(i));
    c.counit_table[i] = c.reps[i].focus;
    names.push_back("c" + std::to_string(i));
  }

  // Facts of the base supported inside each move.
  const auto& sig = s.signature();
  std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> inside(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < sig.size(); ++r) {
      for (const auto& t : s.tuples(r)) {
        if (is_subset(support(t), c.moves[i])) inside[i].push_back({r, &t});
      }
    }
  }
  std::vector<std::vector<Tuple>> tables(sig.size());
  std::vector<Element> local(s.size(), -1);
  auto relate = [&](auto&& self) -> void {
    for (std::size_t i = 0; i < m; ++i) {
      cur.push_back(c.moves[i]);
      if (!inside[i].empty()) {
        for (Element a : c.moves[i]) {
          local[static_cast<std::size_t>(a)] = c.index.at(canonicalize({cur, a}));
        }
        for (const auto& [r, t] : inside[i]) {
          Tuple lifted(t->size());
          for (std::size_t j = 0; j < t->size(); ++j) {
            lifted[j] = local[static_cast<std::size_t>((*t)[j])];
          }
          tables[r].push_back(std::move(lifted));
        }
      }
      if (static_cast<int>(cur.size()) < d) self(self);
      cur.pop_back();
    }
  };
  relate(relate);
  c.carrier = Structure(sig, std::move(names), std::move(tables));
  return c;
}

auto counit(const ComonadStructure& c) -> Map { return c.counit_table; }

auto coextend_at(const Map& h, const ComonadStructure& c, const GuardOracle& b_guards,
                 PlayAlphabet alphabet, const FocussedPlay& rep) -> FocussedPlay {
  FocussedPlay out;
  out.play.reserve(rep.play.size());
  for (std::size_t j = 1; j <= rep.play.size(); ++j) {
    auto v = image(h, c.play_set(prefix(rep.play, j)));
    bool ok = alphabet == PlayAlphabet::Exact ? b_guards.is_exact(v) : b_guards.is_guarded(v);
    if (!ok) {
      throw Error(ErrorCode::GuardViolation,
                  "V_" + std::to_string(j) + " is not guarded in the target");
    }
    out.play.push_back(std::move(v));
  }
  out.focus = h[static_cast<std::size_t>(c.element_of(rep))];
  return canonicalize(out);
}

auto coextend(const Map& h, const ComonadStructure& c, const Structure& b)
    -> std::vector<FocussedPlay> {
  if (!is_homomorphism(c.carrier, b, h)) {
    throw Error(ErrorCode::NotAHomomorphism, "coextension argument is not a homomorphism");
  }
  GuardOracle guards(b, c.kind, c.width);
  std::vector<FocussedPlay> out;
  out.reserve(c.size());
  for (const auto& rep : c.reps) out.push_back(coextend_at(h, c, guards, c.alphabet, rep));
  return out;
}

auto coextend_into(const Map& h, const ComonadStructure& c, const ComonadStructure& cb) -> Map {
  auto plays = coextend(h, c, cb.base);
  Map out(plays.size());
  for (std::size_t i = 0; i < plays.size(); ++i) out[i] = cb.element_of(plays[i]);
  return out;
}

auto comultiply(const ComonadStructure& c) -> std::vector<FocussedPlay> {
  if (c.alphabet != PlayAlphabet::Exact) {
    throw Error(ErrorCode::ModeUnsupported,
                "depth-bounded comultiplication needs the exact-guard alphabet");
  }
  Map id(c.size());
  std::iota(id.begin(), id.end(), 0);
  return coextend(id, c, c.carrier);
}

auto comultiply_explicit(const ComonadStructure& c) -> std::vector<FocussedPlay> {
  std::vector<FocussedPlay> out;
  out.reserve(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const auto& rep = c.reps[x];
    FocussedPlay t;
    for (std::size_t j = 1; j <= rep.play.size(); ++j) t.play.push_back(c.play_set(prefix(rep.play, j)));
    t.focus = static_cast<Element>(x);
    out.push_back(canonicalize(t));
  }
  return out;
}

auto lazy_counit(const FocussedPlay& fp) -> Element { return fp.focus; }

auto lazy_coextend(const ClassFunction& h, const FocussedPlay& fp, const SetCheck& guarded)
    -> FocussedPlay {
  FocussedPlay out;
  for (std::size_t j = 1; j <= fp.play.size(); ++j) {
    auto pj = prefix(fp.play, j);
    ElemSet v;
    for (Element a : pj.back()) v.push_back(h(canonicalize({pj, a})));
    v = support(v);
    if (guarded && !guarded(v)) {
      throw Error(ErrorCode::GuardViolation,
                  "V_" + std::to_string(j) + " is not guarded in the target");
    }
    out.play.push_back(std::move(v));
  }
  out.focus = h(canonicalize(fp));
  return canonicalize(out);
}

auto lazy_comultiply(const FocussedPlay& fp) -> NestedPlay {
  NestedPlay out;
  out.focus = canonicalize(fp);
  for (std::size_t j = 1; j <= fp.play.size(); ++j) {
    auto pj = prefix(fp.play, j);
    std::vector<FocussedPlay> t;
    for (Element a : pj.back()) t.push_back(canonicalize({pj, a}));
    std::sort(t.begin(), t.end());
    out.play.push_back(std::move(t));
  }
  // Trailing-run rule on the nested play.
  std::size_t n = out.play.size();
  auto in = [&](std::size_t i) {
    return std::binary_search(out.play[i].begin(), out.play[i].end(), out.focus);
  };
  while (n > 1 && in(n - 2)) --n;
  out.play.resize(n);
  return out;
}

}  // namespace guarded
