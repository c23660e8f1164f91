#include "guarded/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "guarded/error.hpp"
#include "json.hpp"

namespace guarded {

using json = nlohmann::ordered_json;

namespace {

auto parse_json(const std::string& text) -> json {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, what + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw Error(ErrorCode::Parse, "unknown key \"" + key + "\" in " + what);
  }
}

auto need(const json& j, const char* key, const std::string& what) -> const json& {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::Parse, what + " lacks \"" + key + "\"");
  return *it;
}

auto as_string(const json& j, const std::string& what) -> std::string {
  if (!j.is_string()) throw Error(ErrorCode::Parse, what + " must be a string");
  return j.get<std::string>();
}

auto as_array(const json& j, const std::string& what) -> const json& {
  if (!j.is_array()) throw Error(ErrorCode::Parse, what + " must be an array");
  return j;
}

template <class Lookup>
auto element_set(const json& j, Lookup&& find, const std::string& what) -> ElemSet {
  ElemSet out;
  for (const auto& e : as_array(j, what)) out.push_back(find(as_string(e, what)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

auto names_of(const ElemSet& x, const std::vector<std::string>& names) -> json {
  json out = json::array();
  for (Element e : x) out.push_back(names[static_cast<std::size_t>(e)]);
  return out;
}

auto dump(const json& j) -> std::string { return j.dump(2) + "\n"; }

}  // namespace

auto read_text(const std::string& path) -> std::string {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

auto parse_raw_structure(const std::string& text) -> RawStructure {
  auto j = parse_json(text);
  only_keys(j, {"signature", "universe", "relations"}, "structure");
  RawStructure raw;
  const auto& sig = need(j, "signature", "structure");
  if (!sig.is_object()) throw Error(ErrorCode::Parse, "signature must be an object");
  for (const auto& [name, arity] : sig.items()) {
    if (!arity.is_number_integer()) throw Error(ErrorCode::Parse, "arity of " + name);
    raw.signature.push_back({name, arity.get<int>()});
  }
  for (const auto& e : as_array(need(j, "universe", "structure"), "universe")) {
    raw.universe.push_back(as_string(e, "universe element"));
  }
  if (j.contains("relations")) {
    const auto& rels = j["relations"];
    if (!rels.is_object()) throw Error(ErrorCode::Parse, "relations must be an object");
    for (const auto& [name, table] : rels.items()) {
      auto& rows = raw.relations[name];
      for (const auto& row : as_array(table, "relation " + name)) {
        std::vector<std::string> t;
        for (const auto& e : as_array(row, "tuple of " + name)) t.push_back(as_string(e, "tuple entry"));
        rows.push_back(std::move(t));
      }
    }
  }
  return raw;
}

auto parse_structure(const std::string& text) -> Structure {
  return build_structure(parse_raw_structure(text));
}

auto load_structure(const std::string& path) -> Structure { return parse_structure(read_text(path)); }

auto structure_to_json(const Structure& s) -> std::string {
  json j;
  j["signature"] = json::object();
  for (const auto& r : s.signature().relations()) j["signature"][r.name] = r.arity;
  j["universe"] = s.names();
  j["relations"] = json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    json rows = json::array();
    for (const auto& t : s.tuples(r)) {
      json row = json::array();
      for (Element e : t) row.push_back(s.name(e));
      rows.push_back(std::move(row));
    }
    j["relations"][s.signature()[r].name] = std::move(rows);
  }
  return dump(j);
}

auto parse_hypergraph(const std::string& text) -> Hypergraph {
  auto j = parse_json(text);
  only_keys(j, {"vertices", "hyperedges"}, "hypergraph");
  std::vector<std::string> names;
  std::map<std::string, Element> index;
  for (const auto& v : as_array(need(j, "vertices", "hypergraph"), "vertices")) {
    auto name = as_string(v, "vertex");
    if (!index.emplace(name, static_cast<Element>(names.size())).second) {
      throw Error(ErrorCode::Parse, "repeated vertex " + name);
    }
    names.push_back(name);
  }
  auto find = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw Error(ErrorCode::UnknownElement, name);
    return it->second;
  };
  std::vector<ElemSet> edges;
  for (const auto& e : as_array(need(j, "hyperedges", "hypergraph"), "hyperedges")) {
    edges.push_back(element_set(e, find, "hyperedge"));
  }
  return Hypergraph(std::move(names), std::move(edges));
}

auto hypergraph_to_json(const Hypergraph& h) -> std::string {
  json j;
  j["vertices"] = h.names();
  j["hyperedges"] = json::array();
  for (const auto& e : h.edges()) j["hyperedges"].push_back(names_of(e, h.names()));
  return dump(j);
}

auto parse_decomposition(const std::string& text, const Structure& s, GuardKind kind, Bound k)
    -> Decomposition {
  auto j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::Parse, "decomposition must be an object");
  Decomposition dec;
  dec.structure = s;
  dec.kind = kind;
  dec.width = k;
  dec.tau.resize(s.size());
  std::vector<char> seen(s.size(), 0);
  auto find = [&](const std::string& name) { return s.element(name); };
  for (const auto& [name, play] : j.items()) {
    const Element a = s.element(name);
    for (const auto& u : as_array(play, "play of " + name)) {
      dec.tau[static_cast<std::size_t>(a)].push_back(element_set(u, find, "bag"));
    }
    seen[static_cast<std::size_t>(a)] = 1;
  }
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (!seen[a]) throw Error(ErrorCode::Parse, "no play for " + s.name(static_cast<Element>(a)));
  }
  return dec;
}

auto decomposition_to_json(const Decomposition& dec) -> std::string {
  json j = json::object();
  const auto& names = dec.structure.names();
  for (std::size_t a = 0; a < dec.tau.size(); ++a) {
    json play = json::array();
    for (const auto& u : dec.tau[a]) play.push_back(names_of(u, names));
    j[names[a]] = std::move(play);
  }
  return dump(j);
}

namespace {

auto map_json(const PartialMap& phi, const Structure& a, const Structure& b) -> json {
  json out = json::array();
  for (const auto& [x, y] : phi) out.push_back(json::array({a.name(x), b.name(y)}));
  return out;
}

auto move_json(const Move& m, const Structure& a, const Structure& b) -> json {
  const Structure& s = m.side == Side::A ? a : b;
  return json{{"side", m.side == Side::A ? "A" : "B"}, {"set", names_of(m.set, s.names())}};
}

auto parse_map(const json& j, const Structure& a, const Structure& b) -> PartialMap {
  PartialMap out;
  for (const auto& pr : as_array(j, "map")) {
    if (!pr.is_array() || pr.size() != 2) throw Error(ErrorCode::Parse, "map entries are pairs");
    out.push_back({a.element(as_string(pr[0], "map entry")), b.element(as_string(pr[1], "map entry"))});
  }
  std::sort(out.begin(), out.end());
  return out;
}

auto parse_move(const json& j, const Structure& a, const Structure& b) -> Move {
  only_keys(j, {"side", "set"}, "move");
  auto side = as_string(need(j, "side", "move"), "side");
  if (side != "A" && side != "B") throw Error(ErrorCode::Parse, "side must be A or B");
  Move m;
  m.side = side == "A" ? Side::A : Side::B;
  const Structure& s = m.side == Side::A ? a : b;
  m.set = element_set(need(j, "set", "move"), [&](const std::string& n) { return s.element(n); },
                      "move set");
  return m;
}

}  // namespace

auto parse_strategy(const std::string& text, const Structure& a, const Structure& b,
                    GameMode mode) -> Strategy {
  auto j = parse_json(text);
  Strategy st;
  st.mode = mode;
  for (const auto& entry : as_array(j, "strategy")) {
    if (entry.contains("history")) {
      only_keys(entry, {"history", "response"}, "strategy entry");
      std::vector<Move> hist;
      for (const auto& m : as_array(entry["history"], "history")) hist.push_back(parse_move(m, a, b));
      st.history[hist] = parse_map(need(entry, "response", "strategy entry"), a, b);
    } else {
      only_keys(entry, {"position", "move", "response"}, "strategy entry");
      auto pos = parse_map(need(entry, "position", "strategy entry"), a, b);
      auto mv = parse_move(need(entry, "move", "strategy entry"), a, b);
      st.table[{pos, mv}] = parse_map(need(entry, "response", "strategy entry"), a, b);
    }
  }
  return st;
}

auto strategy_to_json(const Strategy& st, const Structure& a, const Structure& b) -> std::string {
  json j = json::array();
  for (const auto& [key, resp] : st.table) {
    j.push_back({{"position", map_json(key.first, a, b)},
                 {"move", move_json(key.second, a, b)},
                 {"response", map_json(resp, a, b)}});
  }
  for (const auto& [hist, resp] : st.history) {
    json h = json::array();
    for (const auto& m : hist) h.push_back(move_json(m, a, b));
    j.push_back({{"history", std::move(h)}, {"response", map_json(resp, a, b)}});
  }
  return dump(j);
}

auto comonad_sidecar_json(const ComonadStructure& c) -> std::string {
  json j = json::object();
  const auto& names = c.base.names();
  for (std::size_t x = 0; x < c.size(); ++x) {
    json play = json::array();
    for (const auto& u : c.reps[x].play) play.push_back(names_of(u, names));
    j[c.carrier.name(static_cast<Element>(x))] = {{"play", std::move(play)},
                                                 {"focus", names[static_cast<std::size_t>(c.reps[x].focus)]}};
  }
  return dump(j);
}

}  // namespace guarded
