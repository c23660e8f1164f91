#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace guarded {

inline auto hash_mix(std::size_t seed, std::size_t v) -> std::size_t {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct IntVecHash {
  auto operator()(const std::vector<int>& v) const noexcept -> std::size_t {
    std::size_t h = v.size();
    for (int x : v) h = hash_mix(h, static_cast<std::size_t>(static_cast<std::uint32_t>(x)));
    return h;
  }
};

struct IntVecVecHash {
  auto operator()(const std::vector<std::vector<int>>& v) const noexcept -> std::size_t {
    std::size_t h = v.size();
    IntVecHash inner;
    for (const auto& x : v) h = hash_mix(h, inner(x));
    return h;
  }
};

}  // namespace guarded
