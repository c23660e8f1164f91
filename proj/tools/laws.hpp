#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "guarded/guarded.hpp"

namespace guarded::tools {

enum class Verdict { Pass, Fail, Skip };

struct LawRow {
  std::string structure;
  std::string setting;
  std::string law;
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

struct LawOptions {
  int depth = 2;
  int width = 2;
  std::uint64_t seed = 1;
  std::size_t budget = kDefaultBudget;
};

// Comonad laws, the hypergraph law, the game correspondence and the
// decomposition round trip for one structure.
auto run_laws(const std::string& name, const Structure& s, const LawOptions& options)
    -> std::vector<LawRow>;

auto to_string(Verdict v) -> std::string;

}  // namespace guarded::tools
