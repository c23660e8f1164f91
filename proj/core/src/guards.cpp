#include "guarded/guards.hpp"

#include <algorithm>
#include <map>

#include "guarded/error.hpp"

namespace guarded {

auto to_string(GuardKind kind) -> std::string_view {
  switch (kind) {
    case GuardKind::Atom: return "atom";
    case GuardKind::Loose: return "loose";
    case GuardKind::Clique: return "clique";
  }
  return "?";
}

auto parse_guard_kind(std::string_view text) -> std::optional<GuardKind> {
  if (text == "atom") return GuardKind::Atom;
  if (text == "loose") return GuardKind::Loose;
  if (text == "clique") return GuardKind::Clique;
  return std::nullopt;
}

auto bounded_cliques(const Graph& g, Bound k) -> std::vector<ElemSet> {
  std::vector<ElemSet> out;
  if (k.finite() && *k.n < 1) return out;
  ElemSet cur;
  // Candidates are kept sorted and greater than the last chosen vertex.
  auto grow = [&](auto&& self, const std::vector<Element>& cand) -> void {
    out.push_back(cur);
    if (!k.admits(cur.size() + 1)) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      Element v = cand[i];
      std::vector<Element> next;
      const auto& nb = g.neighbours(v);
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        if (std::binary_search(nb.begin(), nb.end(), cand[j])) next.push_back(cand[j]);
      }
      cur.push_back(v);
      self(self, next);
      cur.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::vector<Element> cand;
    for (Element u : g.neighbours(static_cast<Element>(v))) {
      if (u > static_cast<Element>(v)) cand.push_back(u);
    }
    cur = {static_cast<Element>(v)};
    grow(grow, cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct FactRef {
  std::size_t rel;
  const Tuple* tuple;
  ElemSet supp;
};

auto collect_facts(const Structure& s, Bound k) -> std::vector<FactRef> {
  std::vector<FactRef> facts;
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (const auto& t : s.tuples(r)) {
      auto sup = support(t);
      if (k.admits(sup.size())) facts.push_back({r, &t, std::move(sup)});
    }
  }
  return facts;
}

auto fact_text(const Structure& s, const FactRef& f) -> std::string {
  return s.signature()[f.rel].name + s.format_tuple(*f.tuple);
}

// Every distinct pair of x co-occurs in a fact supported inside x.
auto loose_exact(const ElemSet& x, const std::vector<std::vector<const FactRef*>>& by_elem) -> bool {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      bool found = false;
      for (const FactRef* f : by_elem[static_cast<std::size_t>(x[i])]) {
        if (contains(f->supp, x[j]) && is_subset(f->supp, x)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

auto compute_exact(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet> {
  std::vector<ElemSet> out;
  if (k.finite() && *k.n < 1) return out;
  for (std::size_t e = 0; e < s.size(); ++e) out.push_back({static_cast<Element>(e)});
  switch (kind) {
    case GuardKind::Atom: {
      for (auto& f : collect_facts(s, k)) {
        if (f.supp.size() > 1) out.push_back(std::move(f.supp));
      }
      break;
    }
    case GuardKind::Loose: {
      auto facts = collect_facts(s, k);
      std::vector<std::vector<const FactRef*>> by_elem(s.size());
      for (const auto& f : facts) {
        for (Element e : f.supp) by_elem[static_cast<std::size_t>(e)].push_back(&f);
      }
      for (auto& c : bounded_cliques(gaifman(s), k)) {
        if (c.size() > 1 && loose_exact(c, by_elem)) out.push_back(std::move(c));
      }
      break;
    }
    case GuardKind::Clique: {
      for (auto& c : bounded_cliques(gaifman(s), k)) {
        if (c.size() > 1) out.push_back(std::move(c));
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_elements(const Structure& s, const ElemSet& x) {
  for (Element e : x) {
    if (e < 0 || static_cast<std::size_t>(e) >= s.size()) {
      throw Error(ErrorCode::UnknownElement, "index " + std::to_string(e));
    }
  }
}

}  // namespace

GuardOracle::GuardOracle(const Structure& s, GuardKind kind, Bound k)
    : s_(&s), kind_(kind), k_(k), exact_(compute_exact(s, kind, k)) {
  exact_index_.insert(exact_.begin(), exact_.end());
  for (const auto& x : exact_) {
    const std::size_t n = x.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      ElemSet sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) sub.push_back(x[i]);
      }
      closed_index_.insert(std::move(sub));
    }
  }
}

auto GuardOracle::witness(const ElemSet& x) const -> std::string {
  const Structure& s = *s_;
  if (x.size() == 1) return s.name(x[0]) + "=" + s.name(x[0]);
  switch (kind_) {
    case GuardKind::Atom:
      for (const auto& f : collect_facts(s, k_)) {
        if (f.supp == x) return fact_text(s, f);
      }
      break;
    case GuardKind::Loose: {
      std::string out;
      for (const auto& f : collect_facts(s, k_)) {
        if (f.supp.size() > 1 && is_subset(f.supp, x)) {
          if (!out.empty()) out += " & ";
          out += fact_text(s, f);
        }
      }
      return out;
    }
    case GuardKind::Clique: {
      std::string out = "clique(";
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ",";
        out += s.name(x[i]);
      }
      return out + ")";
    }
  }
  return {};
}

auto is_exactly_guarded(const Structure& s, const ElemSet& x, GuardKind kind, Bound k) -> bool {
  check_elements(s, x);
  auto sx = support(x);
  if (sx.empty() || !k.admits(sx.size())) return false;
  if (sx.size() == 1) return true;
  switch (kind) {
    case GuardKind::Atom:
      for (const auto& table : s.tables()) {
        for (const auto& t : table) {
          if (support(t) == sx) return true;
        }
      }
      return false;
    case GuardKind::Loose: {
      auto facts = collect_facts(s, k);
      std::vector<std::vector<const FactRef*>> by_elem(s.size());
      for (const auto& f : facts) {
        for (Element e : f.supp) by_elem[static_cast<std::size_t>(e)].push_back(&f);
      }
      return loose_exact(sx, by_elem);
    }
    case GuardKind::Clique:
      return gaifman(s).is_clique(sx);
  }
  return false;
}

auto is_guarded(const Structure& s, const ElemSet& x, GuardKind kind, Bound k) -> bool {
  check_elements(s, x);
  GuardOracle oracle(s, kind, k);
  return oracle.is_guarded(support(x));
}

auto exact_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet> {
  return compute_exact(s, kind, k);
}

auto closed_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet> {
  GuardOracle oracle(s, kind, k);
  std::vector<ElemSet> out;
  for (const auto& x : oracle.exact_sets()) {
    const std::size_t n = x.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      ElemSet sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) sub.push_back(x[i]);
      }
      out.push_back(std::move(sub));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto maximal_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<ElemSet> {
  auto exact = compute_exact(s, kind, k);
  std::vector<ElemSet> out;
  for (const auto& x : exact) {
    bool dominated = false;
    for (const auto& y : exact) {
      if (y.size() > x.size() && is_subset(x, y)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(x);
  }
  return out;
}

namespace {

auto decorate(const Structure& s, GuardKind kind, Bound k, const std::vector<ElemSet>& sets)
    -> std::vector<GuardedSet> {
  GuardOracle oracle(s, kind, k);
  std::vector<GuardedSet> out;
  out.reserve(sets.size());
  for (const auto& x : sets) {
    // A subset borrows the witness of the first exact superset.
    const ElemSet* w = &x;
    if (!oracle.is_exact(x)) {
      for (const auto& y : oracle.exact_sets()) {
        if (is_subset(x, y)) {
          w = &y;
          break;
        }
      }
    }
    out.push_back({x, kind, oracle.witness(*w)});
  }
  return out;
}

}  // namespace

auto exactly_guarded_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<GuardedSet> {
  return decorate(s, kind, k, exact_sets(s, kind, k));
}

auto guarded_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<GuardedSet> {
  return decorate(s, kind, k, closed_sets(s, kind, k));
}

auto maximal_guarded_sets(const Structure& s, GuardKind kind, Bound k) -> std::vector<GuardedSet> {
  return decorate(s, kind, k, maximal_sets(s, kind, k));
}

}  // namespace guarded
