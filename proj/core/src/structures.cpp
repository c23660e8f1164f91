#include "guarded/structures.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "guarded/error.hpp"

namespace guarded {

auto support(const Tuple& t) -> ElemSet {
  ElemSet s(t.begin(), t.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

auto is_subset(const ElemSet& x, const ElemSet& y) -> bool {
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

auto contains(const ElemSet& x, Element e) -> bool {
  return std::binary_search(x.begin(), x.end(), e);
}

auto image(const Map& h, const ElemSet& x) -> ElemSet {
  ElemSet out;
  out.reserve(x.size());
  for (Element e : x) out.push_back(h[static_cast<std::size_t>(e)]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Signature::Signature(std::vector<Relation> relations) : relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (r.arity < 1) {
      throw Error(ErrorCode::ArityMismatch,
                  "relation " + r.name + " has arity " + std::to_string(r.arity));
    }
    if (!seen.insert(r.name).second) {
      throw Error(ErrorCode::UnknownRelation, "relation " + r.name + " declared twice");
    }
  }
}

auto Signature::find(std::string_view name) const -> std::optional<std::size_t> {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

Structure::Structure(Signature sig, std::vector<std::string> universe)
    : Structure(std::move(sig), std::move(universe), {}) {}

Structure::Structure(Signature sig, std::vector<std::string> universe,
                     std::vector<std::vector<Tuple>> tables)
    : sig_(std::move(sig)), names_(std::move(universe)), tables_(std::move(tables)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<Element>(i)).second) {
      throw Error(ErrorCode::UnknownElement, "element " + names_[i] + " listed twice");
    }
  }
  tables_.resize(sig_.size());
  const auto n = static_cast<Element>(names_.size());
  for (std::size_t r = 0; r < tables_.size(); ++r) {
    auto& table = tables_[r];
    for (const auto& t : table) {
      if (t.size() != static_cast<std::size_t>(sig_[r].arity)) {
        throw Error(ErrorCode::ArityMismatch,
                    sig_[r].name + " expects arity " + std::to_string(sig_[r].arity) +
                        ", got " + std::to_string(t.size()));
      }
      for (Element e : t) {
        if (e < 0 || e >= n) {
          throw Error(ErrorCode::UnknownElement,
                      "index " + std::to_string(e) + " in a tuple of " + sig_[r].name);
        }
      }
    }
    std::sort(table.begin(), table.end());
    table.erase(std::unique(table.begin(), table.end()), table.end());
  }
}

auto Structure::find(std::string_view name) const -> std::optional<Element> {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

auto Structure::element(std::string_view name) const -> Element {
  auto e = find(name);
  if (!e) throw Error(ErrorCode::UnknownElement, std::string(name));
  return *e;
}

auto Structure::holds(std::size_t rel, const Tuple& t) const -> bool {
  const auto& table = tables_[rel];
  return std::binary_search(table.begin(), table.end(), t);
}

auto Structure::fact_count() const -> std::size_t {
  std::size_t n = 0;
  for (const auto& t : tables_) n += t.size();
  return n;
}

auto Structure::format_set(const ElemSet& x) const -> std::string {
  std::string out = "{";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ",";
    out += name(x[i]);
  }
  return out + "}";
}

auto Structure::format_tuple(const Tuple& t) const -> std::string {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += name(t[i]);
  }
  return out + ")";
}

namespace {

auto quote_tuple(const std::string& rel, const std::vector<std::string>& t) -> std::string {
  std::string out = rel + "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += t[i];
  }
  return out + ")";
}

}  // namespace

void validate_structure(const RawStructure& raw) {
  std::map<std::string, int> arity;
  for (const auto& [name, a] : raw.signature) {
    if (a < 1) {
      throw Error(ErrorCode::ArityMismatch, "relation " + name + " has arity " + std::to_string(a));
    }
    if (!arity.emplace(name, a).second) {
      throw Error(ErrorCode::UnknownRelation, "relation " + name + " declared twice");
    }
  }
  std::set<std::string> universe;
  for (const auto& e : raw.universe) {
    if (!universe.insert(e).second) {
      throw Error(ErrorCode::UnknownElement, "element " + e + " listed twice");
    }
  }
  for (const auto& [rel, tuples] : raw.relations) {
    auto it = arity.find(rel);
    if (it == arity.end()) {
      std::string witness = tuples.empty() ? rel : quote_tuple(rel, tuples.front());
      throw Error(ErrorCode::UnknownRelation, witness);
    }
    for (const auto& t : tuples) {
      if (static_cast<int>(t.size()) != it->second) {
        throw Error(ErrorCode::ArityMismatch, quote_tuple(rel, t) + " for arity " +
                                                  std::to_string(it->second));
      }
      for (const auto& e : t) {
        if (!universe.count(e)) {
          throw Error(ErrorCode::UnknownElement, quote_tuple(rel, t) + " mentions " + e);
        }
      }
    }
  }
}

auto build_structure(const RawStructure& raw) -> Structure {
  validate_structure(raw);
  std::vector<Relation> rels;
  for (const auto& [name, a] : raw.signature) rels.push_back({name, a});
  Signature sig(std::move(rels));
  std::unordered_map<std::string, Element> idx;
  for (std::size_t i = 0; i < raw.universe.size(); ++i) {
    idx.emplace(raw.universe[i], static_cast<Element>(i));
  }
  std::vector<std::vector<Tuple>> tables(sig.size());
  for (const auto& [rel, tuples] : raw.relations) {
    auto r = *sig.find(rel);
    for (const auto& t : tuples) {
      Tuple tt;
      for (const auto& e : t) tt.push_back(idx.at(e));
      tables[r].push_back(std::move(tt));
    }
  }
  return Structure(std::move(sig), raw.universe, std::move(tables));
}

auto is_homomorphism(const Structure& a, const Structure& b, const Map& h) -> bool {
  if (h.size() != a.size()) return false;
  for (Element x : h) {
    if (x < 0 || static_cast<std::size_t>(x) >= b.size()) return false;
  }
  if (a.signature().size() != b.signature().size()) return false;
  Tuple img;
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    for (const auto& t : a.tuples(r)) {
      img.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = h[static_cast<std::size_t>(t[i])];
      if (!b.holds(r, img)) return false;
    }
  }
  return true;
}

auto compose(const Map& second, const Map& first) -> Map {
  Map out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    out[i] = second[static_cast<std::size_t>(first[i])];
  }
  return out;
}

void Graph::connect(Element u, Element v) {
  if (u == v) return;
  adj_[static_cast<std::size_t>(u)].push_back(v);
  adj_[static_cast<std::size_t>(v)].push_back(u);
}

void Graph::finish() {
  for (auto& n : adj_) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
}

auto Graph::adjacent(Element u, Element v) const -> bool {
  if (u == v) return true;
  const auto& n = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(n.begin(), n.end(), v);
}

auto Graph::edge_count() const -> std::size_t {
  std::size_t n = 0;
  for (const auto& a : adj_) n += a.size();
  return n / 2;
}

auto Graph::is_clique(const ElemSet& x) const -> bool {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (!adjacent(x[i], x[j])) return false;
    }
  }
  return true;
}

auto gaifman(const Structure& s) -> Graph {
  Graph g(s.size());
  for (const auto& table : s.tables()) {
    for (const auto& t : table) {
      auto sup = support(t);
      for (std::size_t i = 0; i < sup.size(); ++i) {
        for (std::size_t j = i + 1; j < sup.size(); ++j) g.connect(sup[i], sup[j]);
      }
    }
  }
  g.finish();
  return g;
}

namespace {

// Backtracking search with forward checking over the tuples of the source.
class HomSearch {
 public:
  HomSearch(const Structure& a, const Structure& b)
      : a_(a), b_(b), n_(a.size()), m_(b.size()), dom_(n_, std::vector<char>(m_, 1)),
        size_(n_, m_), value_(n_, -1), occurs_(n_) {
    for (std::size_t r = 0; r < a.signature().size(); ++r) {
      const auto& table = a.tuples(r);
      for (std::size_t i = 0; i < table.size(); ++i) {
        for (Element e : support(table[i])) occurs_[static_cast<std::size_t>(e)].push_back({r, i});
      }
    }
  }

  auto consistent_shape() const -> bool {
    if (a_.signature().size() != b_.signature().size()) return false;
    return n_ == 0 || m_ > 0;
  }

  // Static order: lexicographic enumeration.
  void enumerate(const std::function<bool(const Map&)>& visit) {
    if (!consistent_shape()) return;
    if (!initial_check()) return;
    stop_ = false;
    static_dfs(0, visit);
  }

  auto find(std::mt19937_64* rng, std::size_t budget) -> std::optional<Map> {
    if (!consistent_shape()) return std::nullopt;
    if (!initial_check()) return std::nullopt;
    rng_ = rng;
    budget_ = budget;
    nodes_ = 0;
    std::optional<Map> out;
    if (mrv_dfs(out)) return out;
    return std::nullopt;
  }

 private:
  struct Occ {
    std::size_t rel;
    std::size_t idx;
  };

  auto initial_check() -> bool {
    // Tuples of a that must map to tuples of b with repeated positions.
    for (std::size_t r = 0; r < a_.signature().size(); ++r) {
      if (!a_.tuples(r).empty() && b_.tuples(r).empty()) return false;
    }
    return true;
  }

  void remove(std::size_t v, int x) {
    dom_[v][static_cast<std::size_t>(x)] = 0;
    --size_[v];
    trail_.push_back({v, x});
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [v, x] = trail_.back();
      trail_.pop_back();
      dom_[v][static_cast<std::size_t>(x)] = 1;
      ++size_[v];
    }
  }

  // Assign v := x and propagate; false on wipe-out.
  auto assign(std::size_t v, int x) -> bool {
    value_[v] = x;
    Tuple img;
    for (const auto& occ : occurs_[v]) {
      const auto& t = a_.tuples(occ.rel)[occ.idx];
      int unassigned = -1;
      bool several = false;
      for (Element e : t) {
        if (value_[static_cast<std::size_t>(e)] < 0) {
          if (unassigned >= 0 && unassigned != e) several = true;
          unassigned = e;
        }
      }
      if (several) continue;
      img.resize(t.size());
      if (unassigned < 0) {
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = value_[static_cast<std::size_t>(t[i])];
        if (!b_.holds(occ.rel, img)) return false;
        continue;
      }
      auto u = static_cast<std::size_t>(unassigned);
      for (std::size_t y = 0; y < m_; ++y) {
        if (!dom_[u][y]) continue;
        for (std::size_t i = 0; i < t.size(); ++i) {
          img[i] = t[i] == unassigned ? static_cast<Element>(y) : value_[static_cast<std::size_t>(t[i])];
        }
        if (!b_.holds(occ.rel, img)) remove(u, static_cast<int>(y));
      }
      if (size_[u] == 0) return false;
    }
    return true;
  }

  void static_dfs(std::size_t v, const std::function<bool(const Map&)>& visit) {
    if (stop_) return;
    if (v == n_) {
      Map h(value_.begin(), value_.end());
      if (!visit(h)) stop_ = true;
      return;
    }
    for (std::size_t x = 0; x < m_ && !stop_; ++x) {
      if (!dom_[v][x]) continue;
      auto mark = trail_.size();
      if (assign(v, static_cast<int>(x))) static_dfs(v + 1, visit);
      value_[v] = -1;
      undo(mark);
    }
  }

  auto mrv_dfs(std::optional<Map>& out) -> bool {
    if (++nodes_ > budget_) return false;
    std::size_t best = n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (value_[v] >= 0) continue;
      if (best == n_ || size_[v] < size_[best]) best = v;
    }
    if (best == n_) {
      out = Map(value_.begin(), value_.end());
      return true;
    }
    std::vector<int> order;
    for (std::size_t x = 0; x < m_; ++x) {
      if (dom_[best][x]) order.push_back(static_cast<int>(x));
    }
    if (rng_) std::shuffle(order.begin(), order.end(), *rng_);
    for (int x : order) {
      auto mark = trail_.size();
      if (assign(best, x) && mrv_dfs(out)) return true;
      value_[best] = -1;
      undo(mark);
      if (nodes_ > budget_) return false;
    }
    return false;
  }

  const Structure& a_;
  const Structure& b_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::vector<char>> dom_;
  std::vector<std::size_t> size_;
  std::vector<int> value_;
  std::vector<std::vector<Occ>> occurs_;
  std::vector<std::pair<std::size_t, int>> trail_;
  bool stop_ = false;
  std::mt19937_64* rng_ = nullptr;
  std::size_t budget_ = 0;
  std::size_t nodes_ = 0;
};

}  // namespace

void for_each_homomorphism(const Structure& a, const Structure& b,
                           const std::function<bool(const Map&)>& visit) {
  HomSearch search(a, b);
  search.enumerate(visit);
}

auto enumerate_homomorphisms(const Structure& a, const Structure& b) -> std::vector<Map> {
  std::vector<Map> out;
  for_each_homomorphism(a, b, [&](const Map& h) {
    out.push_back(h);
    return true;
  });
  return out;
}

auto find_homomorphism(const Structure& a, const Structure& b) -> std::optional<Map> {
  HomSearch search(a, b);
  return search.find(nullptr, static_cast<std::size_t>(-1));
}

auto random_homomorphism(const Structure& a, const Structure& b, std::uint64_t seed,
                         std::size_t node_budget) -> std::optional<Map> {
  std::mt19937_64 rng(seed);
  HomSearch search(a, b);
  return search.find(&rng, node_budget);
}

auto induced(const Structure& s, const ElemSet& x) -> Structure {
  std::vector<std::string> names;
  std::vector<int> where(s.size(), -1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    names.push_back(s.name(x[i]));
    where[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
  }
  std::vector<std::vector<Tuple>> tables(s.signature().size());
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    for (const auto& t : s.tuples(r)) {
      Tuple tt;
      bool inside = true;
      for (Element e : t) {
        int w = where[static_cast<std::size_t>(e)];
        if (w < 0) {
          inside = false;
          break;
        }
        tt.push_back(w);
      }
      if (inside) tables[r].push_back(std::move(tt));
    }
  }
  return Structure(s.signature(), std::move(names), std::move(tables));
}

}  // namespace guarded
