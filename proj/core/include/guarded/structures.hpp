#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace guarded {

using Element = int;
using Tuple = std::vector<Element>;
// Sorted, duplicate-free.
using ElemSet = std::vector<Element>;
// Total map from source elements (by index) to target elements.
using Map = std::vector<Element>;

auto support(const Tuple& t) -> ElemSet;
auto is_subset(const ElemSet& x, const ElemSet& y) -> bool;
auto contains(const ElemSet& x, Element e) -> bool;
auto image(const Map& h, const ElemSet& x) -> ElemSet;

struct Relation {
  std::string name;
  int arity = 0;

  friend auto operator==(const Relation&, const Relation&) -> bool = default;
};

class Signature {
 public:
  Signature() = default;
  // Throws ArityMismatch for arity < 1, UnknownRelation for a repeated name.
  explicit Signature(std::vector<Relation> relations);

  auto size() const -> std::size_t { return relations_.size(); }
  auto relations() const -> const std::vector<Relation>& { return relations_; }
  auto operator[](std::size_t i) const -> const Relation& { return relations_[i]; }
  auto find(std::string_view name) const -> std::optional<std::size_t>;

  friend auto operator==(const Signature& a, const Signature& b) -> bool {
    return a.relations_ == b.relations_;
  }

 private:
  std::vector<Relation> relations_;
};

// Named, unchecked form of a structure as it arrives from a file.
struct RawStructure {
  std::vector<std::pair<std::string, int>> signature;
  std::vector<std::string> universe;
  std::map<std::string, std::vector<std::vector<std::string>>> relations;
};

class Structure {
 public:
  Structure() = default;
  // Tables are deduplicated and sorted. Throws ArityMismatch or UnknownElement.
  Structure(Signature sig, std::vector<std::string> universe,
            std::vector<std::vector<Tuple>> tables);
  Structure(Signature sig, std::vector<std::string> universe);

  auto signature() const -> const Signature& { return sig_; }
  auto size() const -> std::size_t { return names_.size(); }
  auto empty() const -> bool { return names_.empty(); }
  auto name(Element e) const -> const std::string& { return names_[static_cast<std::size_t>(e)]; }
  auto names() const -> const std::vector<std::string>& { return names_; }
  auto find(std::string_view name) const -> std::optional<Element>;
  auto element(std::string_view name) const -> Element;  // throws UnknownElement

  auto tuples(std::size_t rel) const -> const std::vector<Tuple>& { return tables_[rel]; }
  auto tables() const -> const std::vector<std::vector<Tuple>>& { return tables_; }
  auto holds(std::size_t rel, const Tuple& t) const -> bool;
  auto fact_count() const -> std::size_t;

  auto format_set(const ElemSet& x) const -> std::string;
  auto format_tuple(const Tuple& t) const -> std::string;

  friend auto operator==(const Structure& a, const Structure& b) -> bool {
    return a.sig_ == b.sig_ && a.names_ == b.names_ && a.tables_ == b.tables_;
  }

 private:
  Signature sig_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Element> index_;
  std::vector<std::vector<Tuple>> tables_;
};

// Throws ArityMismatch, UnknownElement or UnknownRelation naming the tuple.
void validate_structure(const RawStructure& raw);
auto build_structure(const RawStructure& raw) -> Structure;

auto is_homomorphism(const Structure& a, const Structure& b, const Map& h) -> bool;
auto compose(const Map& second, const Map& first) -> Map;

// Reflexive and symmetric; loops are implicit.
class Graph {
 public:
  explicit Graph(std::size_t n = 0) : adj_(n) {}

  void connect(Element u, Element v);
  void finish();

  auto size() const -> std::size_t { return adj_.size(); }
  auto adjacent(Element u, Element v) const -> bool;
  // Distinct neighbours, sorted.
  auto neighbours(Element u) const -> const std::vector<Element>& {
    return adj_[static_cast<std::size_t>(u)];
  }
  auto edge_count() const -> std::size_t;
  auto is_clique(const ElemSet& x) const -> bool;

 private:
  std::vector<std::vector<Element>> adj_;
};

auto gaifman(const Structure& s) -> Graph;

// Calls visit on every homomorphism a -> b in lexicographic order of the
// map; stop early by returning false.
void for_each_homomorphism(const Structure& a, const Structure& b,
                           const std::function<bool(const Map&)>& visit);
auto enumerate_homomorphisms(const Structure& a, const Structure& b) -> std::vector<Map>;
auto find_homomorphism(const Structure& a, const Structure& b) -> std::optional<Map>;
// Randomised value order; gives up after the node budget and returns nullopt.
auto random_homomorphism(const Structure& a, const Structure& b, std::uint64_t seed,
                         std::size_t node_budget = 200000) -> std::optional<Map>;

auto induced(const Structure& s, const ElemSet& x) -> Structure;

}  // namespace guarded
