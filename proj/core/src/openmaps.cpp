#include "guarded/openmaps.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "guarded/error.hpp"

namespace guarded {

auto cofree(const Structure& s, GuardKind kind, Bound k, int d, MaterializeOptions options)
    -> Cofree {
  Cofree out;
  out.comonad = materialize(s, kind, k, d, options);
  out.coalgebra.structure = out.comonad.carrier;
  out.coalgebra.kind = kind;
  out.coalgebra.width = k;
  out.coalgebra.depth = Bound::of(d);
  out.coalgebra.alphabet = options.alphabet;
  out.coalgebra.gamma = comultiply_explicit(out.comonad);
  return out;
}

auto coalgebra_plays(const Coalgebra& co) -> std::vector<Play> {
  std::vector<Play> out;
  out.reserve(co.gamma.size());
  for (const auto& fp : co.gamma) out.push_back(fp.play);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto is_path(const Coalgebra& co) -> bool {
  auto plays = coalgebra_plays(co);
  std::sort(plays.begin(), plays.end(),
            [](const Play& x, const Play& y) { return x.size() < y.size(); });
  for (std::size_t i = 0; i < plays.size(); ++i) {
    if (plays[i].size() != i + 1) return false;
    if (i > 0 && !is_prefix(plays[i - 1], plays[i])) return false;
  }
  return true;
}

namespace {

// Plays of a coalgebra arranged as a forest: children[p] are the plays one
// set longer with prefix p; the empty play is the root.
struct PlayForest {
  std::set<Play> plays;
  std::map<Play, std::vector<ElemSet>> children;

  explicit PlayForest(const std::vector<Play>& ps) : plays(ps.begin(), ps.end()) {
    for (const auto& p : plays) {
      auto parent = prefix(p, p.size() - 1);
      if (parent.empty() || plays.count(parent)) children[parent].push_back(p.back());
    }
  }

  auto next(const Play& p) const -> const std::vector<ElemSet>& {
    static const std::vector<ElemSet> none;
    auto it = children.find(p);
    return it == children.end() ? none : it->second;
  }
};

void walk_paths(const PlayForest& forest, std::size_t max_len, std::size_t budget,
                const std::function<void(const Play&)>& visit) {
  std::size_t count = 0;
  Play cur;
  auto go = [&](auto&& self) -> void {
    if (cur.size() >= max_len) return;
    for (const auto& v : forest.next(cur)) {
      if (++count > budget) throw Error(ErrorCode::BudgetExceeded, "path enumeration budget");
      cur.push_back(v);
      visit(cur);
      self(self);
      cur.pop_back();
    }
  };
  go(go);
}

auto max_play_length(const Coalgebra& co) -> std::size_t {
  std::size_t n = 0;
  for (const auto& fp : co.gamma) n = std::max(n, fp.play.size());
  return n;
}

auto chain_elements(const Play& q) -> ElemSet {
  ElemSet out;
  for (const auto& v : q) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// f is injective on x and reflects every relation of dst inside f(x).
auto strong_on(const Map& f, const Structure& src, const Structure& dst, const ElemSet& x)
    -> bool {
  std::map<Element, Element> back;
  for (Element e : x) {
    if (!back.emplace(f[static_cast<std::size_t>(e)], e).second) return false;
  }
  for (std::size_t r = 0; r < dst.signature().size(); ++r) {
    for (const auto& t : dst.tuples(r)) {
      Tuple pre(t.size());
      bool inside = true;
      for (std::size_t j = 0; j < t.size() && inside; ++j) {
        auto it = back.find(t[j]);
        if (it == back.end()) {
          inside = false;
        } else {
          pre[j] = it->second;
        }
      }
      if (inside && !src.holds(r, pre)) return false;
    }
  }
  return true;
}

}  // namespace

auto enumerate_path_embeddings(const Coalgebra& co, std::size_t max_len, std::size_t budget)
    -> std::vector<PathEmbedding> {
  PlayForest forest(coalgebra_plays(co));
  std::vector<PathEmbedding> out;
  walk_paths(forest, max_len, budget, [&](const Play& q) { out.push_back(q); });
  return out;
}

auto is_coalgebra_morphism(const Map& f, const Coalgebra& src, const Coalgebra& dst) -> bool {
  if (f.size() != src.structure.size()) return false;
  if (!is_homomorphism(src.structure, dst.structure, f)) return false;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const Element y = f[x];
    FocussedPlay pushed{play_image(f, src.gamma[x].play), y};
    if (canonicalize(pushed) != dst.gamma[static_cast<std::size_t>(y)]) return false;
  }
  return true;
}

auto is_pathwise_embedding(const Map& f, const Coalgebra& src, const Coalgebra& dst) -> bool {
  if (f.size() != src.structure.size()) return false;
  if (!is_homomorphism(src.structure, dst.structure, f)) return false;
  PlayForest src_forest(coalgebra_plays(src));
  std::set<Play> dst_plays;
  for (const auto& p : coalgebra_plays(dst)) dst_plays.insert(p);
  bool ok = true;
  walk_paths(src_forest, max_play_length(src), 1000000, [&](const Play& q) {
    if (!ok) return;
    if (!strong_on(f, src.structure, dst.structure, chain_elements(q))) {
      ok = false;
      return;
    }
    // Prefixes of q were visited already; only the full chain is new.
    if (!dst_plays.count(play_image(f, q))) ok = false;
  });
  return ok;
}

auto is_open(const Map& f, const Coalgebra& src, const Coalgebra& dst) -> bool {
  if (f.size() != src.structure.size()) return false;
  PlayForest src_forest(coalgebra_plays(src));
  PlayForest dst_forest(coalgebra_plays(dst));
  auto lifts = [&](const Play& q) {
    const Play t = play_image(f, q);
    if (!t.empty() && !dst_forest.plays.count(t)) return true;  // no square over q
    for (const auto& w : dst_forest.next(t)) {
      bool found = false;
      for (const auto& v : src_forest.next(q)) {
        if (v.size() != w.size() || image(f, v) != w) continue;
        bool consistent = true;
        if (!q.empty()) {
          for (Element x : v) {
            if (contains(t.back(), f[static_cast<std::size_t>(x)]) && !contains(q.back(), x)) {
              consistent = false;
              break;
            }
          }
        }
        if (consistent) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  if (!lifts({})) return false;
  bool ok = true;
  walk_paths(src_forest, max_play_length(src), 1000000, [&](const Play& q) {
    if (ok && !lifts(q)) ok = false;
  });
  return ok;
}

namespace {

using Seq = std::vector<PartialMap>;
using FocusPair = std::pair<Element, Element>;

auto holds_pair(const PartialMap& phi, const FocusPair& ab) -> bool {
  return std::binary_search(phi.begin(), phi.end(), ab);
}

auto canonical_seq_length(const Seq& seq, const FocusPair& ab) -> std::size_t {
  std::size_t n = seq.size();
  while (n > 1 && holds_pair(seq[n - 2], ab)) --n;
  return n;
}

auto invalid(const std::string& why) -> Error { return Error(ErrorCode::SpanInvalid, why); }

}  // namespace

auto build_span(const Structure& a, const Structure& b, const Strategy& st, GuardKind kind,
                Bound k, int d, MaterializeOptions options) -> BisimSpan {
  BisimSpan span;
  span.left_target = cofree(a, kind, k, d, options);
  span.right_target = cofree(b, kind, k, d, options);

  std::vector<Move> moves;
  for (const auto& u : span.left_target.comonad.moves) moves.push_back({Side::A, u});
  for (const auto& v : span.right_target.comonad.moves) moves.push_back({Side::B, v});

  std::set<Seq> seqs;
  std::vector<Move> hist;
  Seq seq;
  auto explore = [&](auto&& self) -> void {
    for (const auto& m : moves) {
      hist.push_back(m);
      auto r = st.respond(hist);
      if (!r) {
        throw Error(ErrorCode::StrategyIncomplete,
                    "no response after " + std::to_string(hist.size()) + " moves");
      }
      seq.push_back(*r);
      seqs.insert(seq);
      if (static_cast<int>(hist.size()) < d) self(self);
      seq.pop_back();
      hist.pop_back();
    }
  };
  explore(explore);

  std::set<std::pair<Seq, FocusPair>> classes;
  for (const auto& s : seqs) {
    for (const auto& ab : s.back()) {
      Seq rep(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(canonical_seq_length(s, ab)));
      classes.insert({std::move(rep), ab});
    }
  }
  span.reps.assign(classes.begin(), classes.end());
  std::map<std::pair<Seq, FocusPair>, Element> index;
  for (std::size_t i = 0; i < span.reps.size(); ++i) {
    index.emplace(span.reps[i], static_cast<Element>(i));
  }
  auto class_of = [&](const Seq& s, std::size_t n, const FocusPair& ab) {
    const std::size_t m = canonical_seq_length(Seq(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n)), ab);
    return index.at({Seq(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(m)), ab});
  };

  const auto& sig = a.signature();
  std::vector<std::vector<Tuple>> tables(sig.size());
  for (const auto& s : seqs) {
    const auto& phi = s.back();
    auto dom = domain(phi);
    for (std::size_t r = 0; r < sig.size(); ++r) {
      for (const auto& t : a.tuples(r)) {
        if (!is_subset(support(t), dom)) continue;
        Tuple lifted(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
          lifted[j] = class_of(s, s.size(), {t[j], *map_at(phi, t[j])});
        }
        tables[r].push_back(std::move(lifted));
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < span.reps.size(); ++i) names.push_back("r" + std::to_string(i));

  Coalgebra& apex = span.apex;
  apex.structure = Structure(sig, std::move(names), std::move(tables));
  apex.kind = kind;
  apex.width = k;
  apex.depth = Bound::of(d);
  apex.alphabet = options.alphabet;
  span.left.resize(span.reps.size());
  span.right.resize(span.reps.size());
  for (std::size_t x = 0; x < span.reps.size(); ++x) {
    const auto& [s, ab] = span.reps[x];
    FocussedPlay rho;
    Play pa;
    Play pb;
    for (std::size_t j = 1; j <= s.size(); ++j) {
      ElemSet w;
      for (const auto& pr : s[j - 1]) w.push_back(class_of(s, j, pr));
      std::sort(w.begin(), w.end());
      rho.play.push_back(std::move(w));
      pa.push_back(domain(s[j - 1]));
      pb.push_back(range(s[j - 1]));
    }
    rho.focus = static_cast<Element>(x);
    apex.gamma.push_back(canonicalize(rho));
    auto l = span.left_target.comonad.class_of({pa, ab.first});
    auto r = span.right_target.comonad.class_of({pb, ab.second});
    if (!l || !r) throw invalid("a strategy position leaves the guarded plays");
    span.left[x] = *l;
    span.right[x] = *r;
  }
  verify_span(span);
  return span;
}

void verify_span(const BisimSpan& span) {
  try {
    check_coalgebra(span.apex);
  } catch (const Error& e) {
    throw invalid(std::string("apex: ") + e.detail());
  }
  const std::pair<const Map*, const Cofree*> legs[] = {{&span.left, &span.left_target},
                                                       {&span.right, &span.right_target}};
  const char* label[] = {"left", "right"};
  for (int i = 0; i < 2; ++i) {
    const Map& f = *legs[i].first;
    const Coalgebra& target = legs[i].second->coalgebra;
    if (!is_coalgebra_morphism(f, span.apex, target)) {
      throw invalid(std::string(label[i]) + " leg is not a coalgebra morphism");
    }
    if (!is_pathwise_embedding(f, span.apex, target)) {
      throw invalid(std::string(label[i]) + " leg is not a pathwise embedding");
    }
    if (!is_open(f, span.apex, target)) throw invalid(std::string(label[i]) + " leg is not open");
  }
}

auto span_implies_bisim(const BisimSpan& span) -> Strategy {
  const auto& ca = span.left_target.comonad;
  const auto& cb = span.right_target.comonad;
  const int d = *span.apex.depth.n;
  // Chains in the downset of the apex plays.
  std::set<Play> apex_prefixes;
  for (const auto& p : coalgebra_plays(span.apex)) {
    for (std::size_t n = 1; n <= p.size(); ++n) apex_prefixes.insert(prefix(p, n));
  }
  std::map<Play, std::vector<ElemSet>> next;
  for (const auto& p : apex_prefixes) next[prefix(p, p.size() - 1)].push_back(p.back());

  std::vector<Move> moves;
  for (const auto& u : ca.moves) moves.push_back({Side::A, u});
  for (const auto& v : cb.moves) moves.push_back({Side::B, v});

  Strategy st;
  st.mode = GameMode::Bisimulation;
  std::vector<Move> hist;
  Play q;
  Play pa;
  Play pb;
  PartialMap phi;

  auto respond = [&](const Move& m) -> std::optional<std::pair<ElemSet, PartialMap>> {
    const bool left = m.side == Side::A;
    const Map& f = left ? span.left : span.right;
    Play target_play = left ? pa : pb;
    target_play.push_back(m.set);
    const ElemSet target = (left ? ca : cb).play_set(target_play);
    auto it = next.find(q);
    if (it != next.end()) {
      for (const auto& v : it->second) {
        if (v.size() != target.size() || image(f, v) != target) continue;
        bool consistent = true;
        if (!q.empty()) {
          const ElemSet prev = image(f, q.back());
          for (Element x : v) {
            if (contains(prev, f[static_cast<std::size_t>(x)]) && !contains(q.back(), x)) {
              consistent = false;
              break;
            }
          }
        }
        if (!consistent) continue;
        PartialMap out;
        for (Element x : v) {
          out.push_back({ca.counit_table[static_cast<std::size_t>(span.left[static_cast<std::size_t>(x)])],
                         cb.counit_table[static_cast<std::size_t>(span.right[static_cast<std::size_t>(x)])]});
        }
        std::sort(out.begin(), out.end());
        return std::pair{v, out};
      }
    }
    // A move inside the previous set is answered by restriction.
    const Play& own = left ? pa : pb;
    if (!own.empty() && is_subset(m.set, own.back())) {
      PartialMap out;
      for (const auto& pr : phi) {
        if (contains(m.set, left ? pr.first : pr.second)) out.push_back(pr);
      }
      ElemSet v;
      for (Element x : q.back()) {
        if (contains(target, f[static_cast<std::size_t>(x)])) v.push_back(x);
      }
      return std::pair{v, out};
    }
    return std::nullopt;
  };

  auto explore = [&](auto&& self) -> void {
    for (const auto& m : moves) {
      auto r = respond(m);
      if (!r) {
        throw invalid("no lift for a Spoiler move after " + std::to_string(hist.size()) +
                      " rounds");
      }
      hist.push_back(m);
      st.history.emplace(hist, r->second);
      const PartialMap saved = phi;
      q.push_back(r->first);
      pa.push_back(domain(r->second));
      pb.push_back(range(r->second));
      phi = r->second;
      if (static_cast<int>(hist.size()) < d) self(self);
      phi = saved;
      pb.pop_back();
      pa.pop_back();
      q.pop_back();
      hist.pop_back();
    }
  };
  explore(explore);
  return st;
}

}  // namespace guarded
