#pragma once

// Seeded generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "ndl/nd_tree.hpp"

namespace gen {

inline constexpr std::uint64_t kSeed = 0x6e646c;

inline ndl::NDTree<int> tree(std::mt19937_64& rng, int depth, int payloads = 4) {
  const auto r = rng();
  if (depth == 0 || r % 3 == 0) {
    if ((r >> 8) % 5 == 0) return ndl::fail<int>();
    return ndl::val(static_cast<int>((r >> 16) % static_cast<std::uint64_t>(payloads)));
  }
  auto l = tree(rng, depth - 1, payloads);
  auto rt = tree(rng, depth - 1, payloads);
  return ndl::choice(l, rt);
}

inline std::vector<int> list(std::mt19937_64& rng, std::size_t max_len, int max_value) {
  std::vector<int> xs(rng() % (max_len + 1));
  for (auto& x : xs) x = static_cast<int>(rng() % static_cast<std::uint64_t>(max_value + 1));
  return xs;
}

}  // namespace gen
