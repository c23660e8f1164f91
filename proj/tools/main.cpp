#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "guarded/guarded.hpp"
#include "json.hpp"
#include "laws.hpp"

namespace {

using namespace guarded;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Context {
  bool json = false;
  bool color = false;
  std::size_t budget = kDefaultBudget;
};

auto parse_bound(const std::string& text, const char* what) -> Bound {
  if (text == "inf" || text == "unbounded") return Bound::unbounded();
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size() && v >= 1) return Bound::of(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Parse, std::string(what) + " must be a positive integer or inf");
}

auto parse_kind(const std::string& text) -> GuardKind {
  auto k = parse_guard_kind(text);
  if (!k) throw Error(ErrorCode::Parse, "unknown guard kind " + text);
  return *k;
}

auto parse_mode(const std::string& text) -> GameMode {
  if (text == "sim") return GameMode::Simulation;
  if (text == "bisim") return GameMode::Bisimulation;
  throw Error(ErrorCode::Parse, "mode must be sim or bisim");
}

auto parse_overlap(const std::string& text) -> Overlap {
  if (text == "one") return Overlap::OneSided;
  if (text == "two") return Overlap::TwoSided;
  throw Error(ErrorCode::Parse, "overlap must be one or two");
}

auto paint(const Context& ctx, const std::string& text, bool good) -> std::string {
  if (!ctx.color) return text;
  return std::string(good ? "\033[32m" : "\033[31m") + text + "\033[0m";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path);
  out << text;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

auto set_names(const ElemSet& x, const std::vector<std::string>& names) -> json {
  json out = json::array();
  for (Element e : x) out.push_back(names[static_cast<std::size_t>(e)]);
  return out;
}

auto play_text(const Structure& s, const Play& p) -> std::string {
  return format_play(p, [&](Element e) { return s.name(e); });
}

auto winner_text(Winner w) -> std::string {
  return w == Winner::Duplicator ? "Duplicator" : "Spoiler";
}

// Subcommand option storage.
struct Args {
  std::string file;
  std::string file2;
  std::string out;
  std::string kind = "atom";
  std::string width = "inf";
  std::string rounds = "inf";
  std::string mode = "sim";
  std::string overlap = "one";
  std::string strategy;
  std::string corpus = "corpus";
  int depth = 2;
  int max_arity = 0;
  int law_width = 2;
  std::uint64_t seed = 1;
  bool exact = false;
  bool closed = false;
  bool maximal = false;
};

auto cmd_validate(const Context& ctx, const Args& args) -> int {
  auto s = load_structure(args.file);
  if (ctx.json) {
    emit({{"valid", true}, {"elements", s.size()}, {"facts", s.fact_count()}});
  } else {
    std::cout << "valid: " << s.size() << " elements, " << s.fact_count() << " facts\n";
  }
  return kOk;
}

auto cmd_guards(const Context& ctx, const Args& args) -> int {
  auto s = load_structure(args.file);
  const auto kind = parse_kind(args.kind);
  const auto k = parse_bound(args.width, "--width");
  auto sets = args.maximal  ? maximal_guarded_sets(s, kind, k)
              : args.closed ? guarded_sets(s, kind, k)
                            : exactly_guarded_sets(s, kind, k);
  if (ctx.json) {
    json out = json::array();
    for (const auto& g : sets) {
      out.push_back({{"set", set_names(g.elements, s.names())}, {"witness", g.witness}});
    }
    emit(out);
  } else {
    for (const auto& g : sets) std::cout << s.format_set(g.elements) << "\n";
  }
  return kOk;
}

auto classes_path(const std::string& out) -> std::string {
  std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + ".classes.json")).string();
}

auto cmd_comonad(const Context& ctx, const Args& args) -> int {
  auto s = load_structure(args.file);
  const auto kind = parse_kind(args.kind);
  const auto k = parse_bound(args.width, "--width");
  MaterializeOptions options{ctx.budget, args.closed ? PlayAlphabet::Closed : PlayAlphabet::Exact};
  auto c = materialize(s, kind, k, args.depth, options);
  if (!args.out.empty()) {
    write_file(args.out, structure_to_json(c.carrier));
    write_file(classes_path(args.out), comonad_sidecar_json(c));
  }
  if (ctx.json) {
    json classes = json::object();
    for (std::size_t x = 0; x < c.size(); ++x) {
      classes[c.carrier.name(static_cast<Element>(x))] = c.label(static_cast<Element>(x));
    }
    emit({{"elements", c.size()}, {"facts", c.carrier.fact_count()}, {"moves", c.moves.size()},
          {"classes", classes}});
  } else {
    std::cout << "carrier: " << c.size() << " elements, " << c.carrier.fact_count()
              << " facts, " << c.moves.size() << " moves\n";
    if (args.out.empty()) {
      for (std::size_t x = 0; x < c.size(); ++x) {
        std::cout << c.carrier.name(static_cast<Element>(x)) << " "
                  << c.label(static_cast<Element>(x)) << "\n";
      }
    }
  }
  return kOk;
}

auto cmd_game(const Context& ctx, const Args& args) -> int {
  auto a = load_structure(args.file);
  auto b = load_structure(args.file2);
  GameConfig cfg{parse_kind(args.kind), parse_bound(args.width, "--width"),
                 parse_bound(args.rounds, "--rounds"), parse_mode(args.mode),
                 parse_overlap(args.overlap)};
  const bool reduce = cfg.kind == GuardKind::Clique && cfg.width.finite();
  auto result = reduce ? reduced_game(a, b, cfg) : solve(a, b, cfg);
  const bool dup = result.winner == Winner::Duplicator;
  if (!args.strategy.empty() && dup && !reduce) {
    write_file(args.strategy, strategy_to_json(*result.strategy, a, b));
  }
  if (ctx.json) {
    emit({{"winner", winner_text(result.winner)},
          {"positions", result.positions},
          {"survived", result.survived},
          {"reduced", reduce}});
  } else {
    std::cout << paint(ctx, winner_text(result.winner), dup) << " (" << result.positions
              << " positions";
    if (!dup) std::cout << ", Duplicator survives " << result.survived << " rounds";
    std::cout << ")\n";
  }
  if (!args.strategy.empty() && dup && reduce) {
    std::cerr << "note: strategies of the reduced game are over the extensions; not written\n";
  }
  return dup ? kOk : kNegative;
}

auto cmd_decompose(const Context& ctx, const Args& args) -> int {
  auto s = load_structure(args.file);
  const auto kind = parse_kind(args.kind);
  const auto k = parse_bound(args.width, "--width");
  auto dec = synthesize(s, kind, k, {true, 5, ctx.budget * 10});
  if (!dec) {
    if (ctx.json) {
      emit({{"decomposition", nullptr}});
    } else {
      std::cout << "none\n";
    }
    return kNegative;
  }
  if (!args.out.empty()) write_file(args.out, decomposition_to_json(*dec));
  if (ctx.json) {
    std::cout << decomposition_to_json(*dec);
  } else {
    for (std::size_t a = 0; a < s.size(); ++a) {
      std::cout << s.name(static_cast<Element>(a)) << ": " << play_text(s, dec->tau[a]) << "\n";
    }
  }
  return kOk;
}

auto cmd_treewidth(const Context& ctx, const Args& args) -> int {
  auto s = load_structure(args.file);
  const auto kind = parse_kind(args.kind);
  try {
    int k = guarded_treewidth(s, kind, {true, 5, ctx.budget * 10});
    if (ctx.json) {
      emit({{"treewidth", k}});
    } else {
      std::cout << k << "\n";
    }
    return kOk;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoDecomposition) throw;
    if (ctx.json) {
      emit({{"treewidth", nullptr}});
    } else {
      std::cout << "none\n";
    }
    return kNegative;
  }
}

auto cmd_span(const Context& ctx, const Args& args) -> int {
  auto a = load_structure(args.file);
  auto b = load_structure(args.file2);
  const auto kind = parse_kind(args.kind);
  const auto k = parse_bound(args.width, "--width");
  GameConfig cfg{kind, k, Bound::of(args.depth), GameMode::Bisimulation,
                 parse_overlap(args.overlap)};
  auto game = solve(a, b, cfg);
  if (game.winner == Winner::Spoiler) {
    if (ctx.json) {
      emit({{"bisimilar", false}});
    } else {
      std::cout << paint(ctx, "NOT-BISIMILAR", false) << "\n";
    }
    return kNegative;
  }
  try {
    auto span = build_span(a, b, *game.strategy, kind, k, args.depth,
                           {ctx.budget, PlayAlphabet::Exact});
    auto back = span_implies_bisim(span);
    const bool wins = !check_strategy(a, b, cfg, back);
    if (ctx.json) {
      emit({{"bisimilar", true},
            {"apex", span.apex.structure.size()},
            {"apex_facts", span.apex.structure.fact_count()},
            {"left_target", span.left_target.comonad.size()},
            {"right_target", span.right_target.comonad.size()},
            {"lifted_strategy_wins", wins}});
    } else {
      std::cout << paint(ctx, "BISIMILAR", true) << "\n"
                << "apex: " << span.apex.structure.size() << " elements, "
                << span.apex.structure.fact_count() << " facts\n"
                << "legs into " << span.left_target.comonad.size() << " and "
                << span.right_target.comonad.size()
                << " elements: coalgebra morphisms, pathwise embeddings, open\n"
                << "lifted strategy: " << (wins ? "wins" : "loses") << "\n";
    }
    return wins ? kOk : kNegative;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SpanInvalid && e.code() != ErrorCode::StrategyIncomplete) throw;
    if (ctx.json) {
      emit({{"bisimilar", true}, {"span", nullptr}, {"reason", e.detail()}});
    } else {
      std::cout << paint(ctx, "BISIMILAR", true) << "\nspan failed: " << e.detail() << "\n";
    }
    return kNegative;
  }
}

auto cmd_hgraph_of(const Context&, const Args& args) -> int {
  auto s = load_structure(args.file);
  auto h = hgraph_of(s, parse_kind(args.kind), parse_bound(args.width, "--width"),
                     args.closed ? EdgeMode::Closed : EdgeMode::Exact);
  std::cout << hypergraph_to_json(h);
  return kOk;
}

auto cmd_hgraph_comonad(const Context& ctx, const Args& args) -> int {
  auto h = parse_hypergraph(read_text(args.file));
  auto c = hmaterialize(h, parse_bound(args.width, "--width"), args.depth, ctx.budget);
  auto label = [&](std::size_t x) {
    return format_focussed(c.reps[x], [&](Element e) { return h.name(e); });
  };
  if (ctx.json) {
    json classes = json::object();
    for (std::size_t x = 0; x < c.size(); ++x) classes[c.carrier.name(static_cast<Element>(x))] = label(x);
    emit({{"vertices", c.size()}, {"hyperedges", c.carrier.edges().size()}, {"classes", classes}});
  } else {
    std::cout << "carrier: " << c.size() << " vertices, " << c.carrier.edges().size()
              << " hyperedges\n";
    for (std::size_t x = 0; x < c.size(); ++x) {
      std::cout << c.carrier.name(static_cast<Element>(x)) << " " << label(x) << "\n";
    }
  }
  return kOk;
}

auto cmd_hgraph_game(const Context& ctx, const Args& args) -> int {
  auto g = parse_hypergraph(read_text(args.file));
  auto h = parse_hypergraph(read_text(args.file2));
  HGameConfig cfg{parse_bound(args.width, "--width"), parse_bound(args.rounds, "--rounds"),
                  parse_mode(args.mode), parse_overlap(args.overlap)};
  auto result = hgame_solve(g, h, cfg);
  const bool dup = result.winner == Winner::Duplicator;
  if (ctx.json) {
    emit({{"winner", winner_text(result.winner)}, {"positions", result.positions}});
  } else {
    std::cout << paint(ctx, winner_text(result.winner), dup) << " (" << result.positions
              << " positions)\n";
  }
  return dup ? kOk : kNegative;
}

auto cmd_hgraph_emlaw(const Context& ctx, const Args& args) -> int {
  auto s = load_structure(args.file);
  auto report = check_em_law(s, parse_kind(args.kind), parse_bound(args.width, "--width"),
                             args.depth, args.closed ? EdgeMode::Closed : EdgeMode::Exact,
                             ctx.budget);
  if (ctx.json) {
    emit({{"holds", report.ok}, {"vertices", report.vertices}, {"edges", report.edges},
          {"mismatch", report.mismatch}});
  } else if (report.ok) {
    std::cout << paint(ctx, "holds", true) << ": identity on " << report.vertices
              << " vertices and " << report.edges << " hyperedges\n";
  } else {
    std::cout << paint(ctx, "fails", false) << ": " << report.mismatch << "\n";
  }
  return report.ok ? kOk : kNegative;
}

auto cmd_clique_extend(const Context&, const Args& args) -> int {
  auto s = load_structure(args.file);
  const int m = args.max_arity > 0 ? args.max_arity : std::max<int>(2, static_cast<int>(s.size()));
  std::cout << structure_to_json(clique_extend(s, m).extended);
  return kOk;
}

auto cmd_laws(const Context& ctx, const Args& args) -> int {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(args.corpus)) {
    const auto name = entry.path().filename().string();
    if (entry.path().extension() == ".json" && name.find(".hgraph.") == std::string::npos &&
        name.find(".classes.") == std::string::npos) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  tools::LawOptions options{args.depth, args.law_width, args.seed, ctx.budget};
  std::vector<tools::LawRow> rows;
  for (const auto& path : files) {
    Structure s;
    try {
      s = load_structure(path.string());
    } catch (const Error& e) {
      rows.push_back({path.stem().string(), "-", "load", tools::Verdict::Skip,
                      std::string(to_string(e.code()))});
      continue;
    }
    auto more = tools::run_laws(path.stem().string(), s, options);
    rows.insert(rows.end(), more.begin(), more.end());
  }
  const bool failed = std::any_of(rows.begin(), rows.end(),
                                  [](const auto& r) { return r.verdict == tools::Verdict::Fail; });
  if (ctx.json) {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"structure", r.structure}, {"setting", r.setting}, {"law", r.law},
                     {"verdict", tools::to_string(r.verdict)}, {"detail", r.detail}});
    }
    emit(out);
  } else {
    for (const auto& r : rows) {
      std::string v = tools::to_string(r.verdict);
      std::cout << paint(ctx, v, r.verdict != tools::Verdict::Fail) << "  " << r.structure << "  "
                << r.setting << "  " << r.law;
      if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
      std::cout << "\n";
    }
  }
  return failed ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guarded comonads: games, decompositions and hypergraphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  Args args;
  app.add_flag("--json", ctx.json, "Machine-readable report");
  app.add_option("--budget", ctx.budget, "Carrier size cap")->check(CLI::PositiveNumber);

  auto kind_opt = [&](CLI::App* sub) {
    sub->add_option("--kind", args.kind, "atom, loose or clique")
        ->check(CLI::IsMember({"atom", "loose", "clique"}));
  };
  auto width_opt = [&](CLI::App* sub) {
    sub->add_option("--width", args.width, "Width bound, or inf");
  };

  auto* validate = app.add_subcommand("validate", "Check a structure file");
  validate->add_option("file", args.file)->required();

  auto* guards = app.add_subcommand("guards", "List guarded sets");
  kind_opt(guards);
  width_opt(guards);
  auto* exact_flag = guards->add_flag("--exact", args.exact, "Exactly guarded sets (default)");
  auto* closed_flag = guards->add_flag("--closed", args.closed, "All guarded sets");
  auto* maximal_flag = guards->add_flag("--maximal", args.maximal, "Maximal guarded sets");
  exact_flag->excludes(closed_flag)->excludes(maximal_flag);
  closed_flag->excludes(maximal_flag);
  guards->add_option("file", args.file)->required();

  auto* comonad = app.add_subcommand("comonad", "Depth-bounded comonad");
  comonad->require_subcommand(1);
  auto* build = comonad->add_subcommand("build", "Materialise the carrier");
  kind_opt(build);
  width_opt(build);
  build->add_option("--depth", args.depth)->required()->check(CLI::PositiveNumber);
  build->add_flag("--closed", args.closed, "Plays over all guarded sets");
  build->add_option("--out", args.out, "Carrier file; classes go to a sidecar");
  build->add_option("file", args.file)->required();

  auto* game = app.add_subcommand("game", "Solve a guarded (bi)simulation game");
  game->add_option("--mode", args.mode)->check(CLI::IsMember({"sim", "bisim"}));
  kind_opt(game);
  width_opt(game);
  game->add_option("--rounds", args.rounds, "Round bound, or inf");
  game->add_option("--overlap", args.overlap, "one or two")->check(CLI::IsMember({"one", "two"}));
  game->add_option("--strategy", args.strategy, "Write Duplicator's strategy");
  game->add_option("a", args.file)->required();
  game->add_option("b", args.file2)->required();

  auto* decompose = app.add_subcommand("decompose", "Synthesize a guarded decomposition");
  kind_opt(decompose);
  width_opt(decompose);
  decompose->add_option("--out", args.out);
  decompose->add_option("file", args.file)->required();

  auto* treewidth = app.add_subcommand("treewidth", "Guarded tree-width");
  kind_opt(treewidth);
  treewidth->add_option("file", args.file)->required();

  auto* span = app.add_subcommand("span", "Bisimulation as a span of open maps");
  kind_opt(span);
  width_opt(span);
  span->add_option("--depth", args.depth)->required()->check(CLI::PositiveNumber);
  span->add_option("--overlap", args.overlap)->check(CLI::IsMember({"one", "two"}));
  span->add_option("a", args.file)->required();
  span->add_option("b", args.file2)->required();

  auto* hgraph = app.add_subcommand("hgraph", "Hypergraph side");
  hgraph->require_subcommand(1);
  auto* h_of = hgraph->add_subcommand("of", "Hypergraph of guarded sets");
  kind_opt(h_of);
  width_opt(h_of);
  h_of->add_flag("--closed", args.closed, "All guarded sets");
  h_of->add_option("file", args.file)->required();
  auto* h_comonad = hgraph->add_subcommand("comonad", "Materialise the hypergraph comonad");
  width_opt(h_comonad);
  h_comonad->add_option("--depth", args.depth)->required()->check(CLI::PositiveNumber);
  h_comonad->add_option("file", args.file)->required();
  auto* h_game = hgraph->add_subcommand("game", "Hypergraph (bi)simulation game");
  h_game->add_option("--mode", args.mode)->check(CLI::IsMember({"sim", "bisim"}));
  width_opt(h_game);
  h_game->add_option("--rounds", args.rounds);
  h_game->add_option("--overlap", args.overlap)->check(CLI::IsMember({"one", "two"}));
  h_game->add_option("a", args.file)->required();
  h_game->add_option("b", args.file2)->required();
  auto* h_em = hgraph->add_subcommand("emlaw", "Compare both sides of the distributive law");
  kind_opt(h_em);
  width_opt(h_em);
  h_em->add_option("--depth", args.depth)->required()->check(CLI::PositiveNumber);
  h_em->add_flag("--closed", args.closed, "Closed guarded sets (unsupported)");
  h_em->add_option("file", args.file)->required();

  auto* extend = app.add_subcommand("clique-extend", "Expose Gaifman cliques as relations");
  extend->add_option("--max-arity", args.max_arity)->check(CLI::Range(2, 64));
  extend->add_option("file", args.file)->required();

  auto* laws = app.add_subcommand("laws", "Run the law suite over a corpus");
  laws->add_option("--corpus", args.corpus, "Directory of structure files");
  laws->add_option("--depth", args.depth)->check(CLI::PositiveNumber);
  laws->add_option("--width", args.law_width)->check(CLI::PositiveNumber);
  laws->add_option("--seed", args.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  ctx.color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) && !ctx.json;

  try {
    if (validate->parsed()) return cmd_validate(ctx, args);
    if (guards->parsed()) return cmd_guards(ctx, args);
    if (build->parsed()) return cmd_comonad(ctx, args);
    if (game->parsed()) return cmd_game(ctx, args);
    if (decompose->parsed()) return cmd_decompose(ctx, args);
    if (treewidth->parsed()) return cmd_treewidth(ctx, args);
    if (span->parsed()) return cmd_span(ctx, args);
    if (h_of->parsed()) return cmd_hgraph_of(ctx, args);
    if (h_comonad->parsed()) return cmd_hgraph_comonad(ctx, args);
    if (h_game->parsed()) return cmd_hgraph_game(ctx, args);
    if (h_em->parsed()) return cmd_hgraph_emlaw(ctx, args);
    if (extend->parsed()) return cmd_clique_extend(ctx, args);
    if (laws->parsed()) return cmd_laws(ctx, args);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.detail() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
