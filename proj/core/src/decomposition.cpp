#include "guarded/decomposition.hpp"

#include <algorithm>
#include <set>

#include "guarded/error.hpp"

namespace guarded {

namespace {

auto fmt_play(const Structure& s, const Play& p) -> std::string {
  return format_play(p, [&](Element e) { return s.name(e); });
}

auto legal_play(const GuardOracle& guards, PlayAlphabet alphabet, const Play& p) -> bool {
  if (p.empty()) return false;
  return std::all_of(p.begin(), p.end(), [&](const ElemSet& u) {
    return alphabet == PlayAlphabet::Exact ? guards.is_exact(u) : guards.is_guarded(u);
  });
}

auto fail(const Decomposition& dec) -> std::optional<Error> {
  const Structure& s = dec.structure;
  if (dec.tau.size() != s.size()) {
    return Error(ErrorCode::UnknownElement, "decomposition does not cover the universe");
  }
  GuardOracle guards(s, dec.kind, dec.width);
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (!legal_play(guards, dec.alphabet, dec.tau[a])) {
      return Error(ErrorCode::GuardViolation,
                   "tau(" + s.name(static_cast<Element>(a)) + ") = " + fmt_play(s, dec.tau[a]) +
                       " is not a guarded play");
    }
  }
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (!contains(dec.tau[a].back(), static_cast<Element>(a))) {
      return Error(ErrorCode::NotReflexive, s.name(static_cast<Element>(a)));
    }
  }
  auto plays = image_plays(dec);
  auto g = gaifman(s);
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (Element b : g.neighbours(static_cast<Element>(a))) {
      if (b <= static_cast<Element>(a)) continue;
      ElemSet pair{static_cast<Element>(a), b};
      bool covered = std::any_of(plays.begin(), plays.end(),
                                 [&](const Play& p) { return is_subset(pair, p.back()); });
      if (!covered) {
        return Error(ErrorCode::EdgeUncovered, s.name(static_cast<Element>(a)) + "," + s.name(b));
      }
    }
  }
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (!is_canonical({dec.tau[a], static_cast<Element>(a)})) {
      return Error(ErrorCode::NotMinimal, s.name(static_cast<Element>(a)));
    }
  }
  for (const auto& q : downset(plays)) {
    for (Element a : q.back()) {
      if (canonicalize({q, a}).play != dec.tau[static_cast<std::size_t>(a)]) {
        return Error(ErrorCode::NotVertexConnected, fmt_play(s, q) + "," + s.name(a));
      }
    }
  }
  return std::nullopt;
}

// R(t) lifts along gamma: the plays of t form a chain whose maximum sees
// every entry with the same class.
auto fact_lifts(const std::vector<const Play*>& plays, const Tuple& t) -> bool {
  const Play* top = nullptr;
  for (Element e : t) {
    const Play* p = plays[static_cast<std::size_t>(e)];
    if (!top || p->size() > top->size()) top = p;
  }
  for (Element e : t) {
    const Play* p = plays[static_cast<std::size_t>(e)];
    if (!is_prefix(*p, *top)) return false;
    if (!contains(top->back(), e)) return false;
    if (canonical_length(*top, e) != p->size()) return false;
  }
  return true;
}

}  // namespace

auto image_plays(const Decomposition& dec) -> std::vector<Play> {
  std::vector<Play> out(dec.tau.begin(), dec.tau.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto downset(const std::vector<Play>& plays) -> std::vector<Play> {
  std::set<Play> out;
  for (const auto& p : plays) {
    for (std::size_t n = 1; n <= p.size(); ++n) out.insert(prefix(p, n));
  }
  return {out.begin(), out.end()};
}

void validate_decomposition(const Decomposition& dec) {
  if (auto e = fail(dec)) throw *e;
}

auto is_valid_decomposition(const Decomposition& dec) -> bool { return !fail(dec).has_value(); }

void check_coalgebra(const Coalgebra& co) {
  const Structure& s = co.structure;
  auto bad = [&](const std::string& why) { throw Error(ErrorCode::NotACoalgebra, why); };
  if (co.gamma.size() != s.size()) bad("gamma does not cover the universe");
  GuardOracle guards(s, co.kind, co.width);
  for (std::size_t a = 0; a < s.size(); ++a) {
    const auto& fp = co.gamma[a];
    const std::string who = "gamma(" + s.name(static_cast<Element>(a)) + ")";
    if (!legal_play(guards, co.alphabet, fp.play)) bad(who + " is not a guarded play");
    if (!co.depth.admits(fp.play.size())) bad(who + " is longer than the depth bound");
    if (fp.focus != static_cast<Element>(a)) bad("counit: focus of " + who + " is not its argument");
    if (!contains(fp.play.back(), fp.focus) || !is_canonical(fp)) {
      bad(who + " is not a canonical focussed play");
    }
  }
  for (std::size_t a = 0; a < s.size(); ++a) {
    const auto& p = co.gamma[a].play;
    for (std::size_t i = 1; i <= p.size(); ++i) {
      for (Element u : p[i - 1]) {
        auto want = canonicalize({prefix(p, i), u});
        if (co.gamma[static_cast<std::size_t>(u)] != want) {
          bad("comultiplication: gamma(" + s.name(u) + ") differs from its class in gamma(" +
              s.name(static_cast<Element>(a)) + ") at step " + std::to_string(i));
        }
      }
    }
  }
  std::vector<const Play*> plays(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) plays[a] = &co.gamma[a].play;
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (const auto& t : s.tuples(r)) {
      if (!fact_lifts(plays, t)) {
        bad("gamma is not a homomorphism at " + s.signature()[r].name + s.format_tuple(t));
      }
    }
  }
}

auto is_coalgebra(const Coalgebra& co) -> bool {
  try {
    check_coalgebra(co);
    return true;
  } catch (const Error&) {
    return false;
  }
}

auto decomposition_to_coalgebra(const Decomposition& dec) -> Coalgebra {
  validate_decomposition(dec);
  Coalgebra co;
  co.structure = dec.structure;
  co.kind = dec.kind;
  co.width = dec.width;
  co.alphabet = dec.alphabet;
  co.gamma.reserve(dec.tau.size());
  for (std::size_t a = 0; a < dec.tau.size(); ++a) {
    co.gamma.push_back({dec.tau[a], static_cast<Element>(a)});
  }
  return co;
}

auto coalgebra_to_decomposition(const Coalgebra& co) -> Decomposition {
  check_coalgebra(co);
  Decomposition dec;
  dec.structure = co.structure;
  dec.kind = co.kind;
  dec.width = co.width;
  dec.alphabet = co.alphabet;
  dec.tau.reserve(co.gamma.size());
  for (const auto& fp : co.gamma) dec.tau.push_back(fp.play);
  validate_decomposition(dec);
  return dec;
}

namespace {

auto join_forest(const Structure& s, GuardKind kind, Bound k) -> std::optional<Decomposition> {
  Decomposition dec;
  dec.structure = s;
  dec.kind = kind;
  dec.width = k;
  if (s.empty()) return dec;

  const auto edges = maximal_sets(s, kind, k);
  auto g = gaifman(s);
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (Element b : g.neighbours(static_cast<Element>(a))) {
      ElemSet pair{std::min(static_cast<Element>(a), b), std::max(static_cast<Element>(a), b)};
      bool covered = std::any_of(edges.begin(), edges.end(),
                                 [&](const ElemSet& e) { return is_subset(pair, e); });
      if (!covered) return std::nullopt;
    }
  }

  // GYO reduction; an edge absorbed into another becomes its child.
  const std::size_t n = edges.size();
  std::vector<ElemSet> work = edges;
  std::vector<char> alive(n, 1);
  std::vector<int> parent(n, -1);
  std::size_t remaining = n;
  bool changed = true;
  while (changed && remaining > 0) {
    changed = false;
    std::vector<int> count(s.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (Element v : work[i]) ++count[static_cast<std::size_t>(v)];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      auto before = work[i].size();
      std::erase_if(work[i], [&](Element v) { return count[static_cast<std::size_t>(v)] == 1; });
      if (work[i].size() != before) changed = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      if (work[i].empty()) {
        alive[i] = 0;
        --remaining;
        changed = true;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && alive[j] && is_subset(work[i], work[j])) {
          parent[i] = static_cast<int>(j);
          alive[i] = 0;
          --remaining;
          changed = true;
          break;
        }
      }
    }
  }
  if (remaining > 0) return std::nullopt;

  std::vector<Play> path(n);
  std::vector<std::size_t> depth(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> chain;
    for (int j = static_cast<int>(i); j >= 0; j = parent[static_cast<std::size_t>(j)]) {
      chain.push_back(static_cast<std::size_t>(j));
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) path[i].push_back(edges[*it]);
    depth[i] = chain.size();
  }
  dec.tau.resize(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < n; ++i) {
      if (contains(edges[i], static_cast<Element>(a)) && (!best || depth[i] < depth[*best])) best = i;
    }
    dec.tau[a] = path[*best];
  }
  if (!is_valid_decomposition(dec)) return std::nullopt;
  return dec;
}

struct GammaSearch {
  const Structure& s;
  std::vector<ElemSet> moves;
  std::size_t max_len;
  std::size_t budget;
  std::size_t nodes = 0;
  std::vector<std::optional<Play>> gamma;
  std::vector<const Play*> view;
  // Facts by element, for early homomorphism checks.
  std::vector<std::vector<const Tuple*>> facts_of;

  GammaSearch(const Structure& st, GuardKind kind, Bound k, std::size_t b)
      : s(st), moves(exact_sets(st, kind, k)), max_len(std::max<std::size_t>(st.size(), 1)),
        budget(b), gamma(st.size()), view(st.size(), nullptr), facts_of(st.size()) {
    for (std::size_t r = 0; r < st.signature().size(); ++r) {
      for (const auto& t : st.tuples(r)) {
        for (Element e : support(t)) facts_of[static_cast<std::size_t>(e)].push_back(&t);
      }
    }
  }

  auto facts_ok(Element u) const -> bool {
    for (const Tuple* t : facts_of[static_cast<std::size_t>(u)]) {
      if (std::all_of(t->begin(), t->end(),
                      [&](Element e) { return view[static_cast<std::size_t>(e)] != nullptr; }) &&
          !fact_lifts(view, *t)) {
        return false;
      }
    }
    return true;
  }

  auto assign(Element u, Play p, std::vector<Element>& trail) -> bool {
    auto& slot = gamma[static_cast<std::size_t>(u)];
    if (slot) return *slot == p;
    slot = std::move(p);
    view[static_cast<std::size_t>(u)] = &*slot;
    trail.push_back(u);
    return facts_ok(u);
  }

  void undo(std::vector<Element>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      auto u = static_cast<std::size_t>(trail.back());
      gamma[u].reset();
      view[u] = nullptr;
      trail.pop_back();
    }
  }

  auto solve() -> bool {
    auto it = std::find_if(gamma.begin(), gamma.end(), [](const auto& g) { return !g; });
    if (it == gamma.end()) return true;
    const auto a = static_cast<Element>(it - gamma.begin());
    Play cur;
    std::vector<Element> trail;
    return extend(a, cur, trail);
  }

  auto extend(Element a, Play& cur, std::vector<Element>& trail) -> bool {
    for (const auto& u : moves) {
      if (++nodes > budget) throw Error(ErrorCode::BudgetExceeded, "coalgebra search budget");
      // Every step introduces an element, so the new set is not inside the old.
      if (!cur.empty() && is_subset(u, cur.back())) continue;
      cur.push_back(u);
      const std::size_t mark = trail.size();
      bool ok = true;
      for (Element x : u) {
        if (!assign(x, canonicalize({cur, x}).play, trail)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (contains(u, a)) {
          if (solve()) return true;
        } else if (cur.size() < max_len && extend(a, cur, trail)) {
          return true;
        }
      }
      undo(trail, mark);
      cur.pop_back();
    }
    return false;
  }
};

}  // namespace

auto search_coalgebra(const Structure& s, GuardKind kind, Bound k, std::size_t budget)
    -> std::optional<Coalgebra> {
  GammaSearch search(s, kind, k, budget);
  if (!search.solve()) return std::nullopt;
  Coalgebra co;
  co.structure = s;
  co.kind = kind;
  co.width = k;
  for (std::size_t a = 0; a < s.size(); ++a) {
    co.gamma.push_back({*search.gamma[a], static_cast<Element>(a)});
  }
  if (!is_coalgebra(co)) return std::nullopt;
  return co;
}

auto synthesize(const Structure& s, GuardKind kind, Bound k, SynthesisOptions options)
    -> std::optional<Decomposition> {
  if (auto dec = join_forest(s, kind, k)) return dec;
  if (!options.fallback || s.size() > options.fallback_limit) return std::nullopt;
  auto co = search_coalgebra(s, kind, k, options.budget);
  if (!co) return std::nullopt;
  return coalgebra_to_decomposition(*co);
}

auto guarded_treewidth(const Structure& s, GuardKind kind, SynthesisOptions options) -> int {
  if (s.empty()) return 1;
  for (int k = 1; k <= static_cast<int>(s.size()); ++k) {
    if (synthesize(s, kind, Bound::of(k), options)) return k;
  }
  throw Error(ErrorCode::NoDecomposition,
              std::string("no ") + std::string(to_string(kind)) + "-guarded decomposition");
}

auto coalgebra_number(const Structure& s, GuardKind kind, std::size_t budget) -> int {
  if (s.empty()) return 1;
  for (int k = 1; k <= static_cast<int>(s.size()); ++k) {
    if (search_coalgebra(s, kind, Bound::of(k), budget)) return k;
  }
  throw Error(ErrorCode::NoDecomposition,
              std::string("no ") + std::string(to_string(kind)) + "-guarded coalgebra");
}

auto check_decomposition_morphism(const Map& h, const Decomposition& dec_a,
                                  const Decomposition& dec_b, bool strict) -> bool {
  if (h.size() != dec_a.structure.size()) return false;
  if (!is_homomorphism(dec_a.structure, dec_b.structure, h)) return false;
  for (std::size_t a = 0; a < h.size(); ++a) {
    const Element b = h[a];
    auto lifted = play_image(h, dec_a.tau[a]);
    const auto& target = dec_b.tau[static_cast<std::size_t>(b)];
    if (strict) {
      if (lifted != target) return false;
    } else if (!contains(lifted.back(), b) ||
               canonicalize({lifted, b}) != canonicalize({target, b})) {
      return false;
    }
  }
  return true;
}

auto decomposition_lemma_failures(const Decomposition& dec) -> std::vector<std::string> {
  std::vector<std::string> out;
  const Structure& s = dec.structure;
  auto plays = image_plays(dec);
  for (std::size_t i = 0; i < plays.size(); ++i) {
    for (std::size_t j = i + 1; j < plays.size(); ++j) {
      if (plays[i].back() == plays[j].back()) {
        out.push_back("last is not injective on the image: " + fmt_play(s, plays[i]) + " and " +
                      fmt_play(s, plays[j]));
      }
      for (Element a : plays[i].back()) {
        if (!contains(plays[j].back(), a)) continue;
        auto m = meet_length(plays[i], plays[j]);
        if (m == 0 || !contains(plays[i][m - 1], a)) {
          out.push_back("meet of " + fmt_play(s, plays[i]) + " and " + fmt_play(s, plays[j]) +
                        " misses " + s.name(a));
        }
      }
    }
  }
  auto cliques = bounded_cliques(gaifman(s), Bound::unbounded());
  for (const auto& c : cliques) {
    bool inside = std::any_of(plays.begin(), plays.end(),
                              [&](const Play& p) { return is_subset(c, p.back()); });
    if (!inside) out.push_back("clique " + s.format_set(c) + " lies in no bag");
    if (!is_guarded(s, c, dec.kind, dec.width)) {
      out.push_back("clique " + s.format_set(c) + " is not guarded");
    }
  }
  auto maximal = maximal_sets(s, dec.kind, dec.width);
  for (const auto& m : maximal) {
    bool found = std::any_of(plays.begin(), plays.end(),
                             [&](const Play& p) { return p.back() == m; });
    if (!found) out.push_back("maximal guarded set " + s.format_set(m) + " is no bag");
  }
  if (s.size() < maximal.size()) out.push_back("more maximal guarded sets than elements");
  return out;
}

}  // namespace guarded
