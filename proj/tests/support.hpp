#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "diagcx/diagcx.hpp"

namespace dcx::testing {

extern std::uint64_t g_seed;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(g_seed ^ (salt * 0x9e3779b97f4a7c15ULL)); }

// Ground {0,1,2} standing for {1,2,3}: Gamma = {X, {1,2}} plus singletons,
// gamma(X) = {{1,2},{3}}.
inline DiagonalComplex example_t(bool with_13 = false) {
  std::map<Simplex, PartialPartition> g;
  for (int x = 0; x < 3; ++x) g.emplace(Simplex{x}, PartialPartition(3, {{x}}));
  g.emplace(Simplex{0, 1}, PartialPartition(3, {{0}, {1}}));
  g.emplace(Simplex{0, 1, 2}, PartialPartition(3, {{0, 1}, {2}}));
  if (with_13) g.emplace(Simplex{0, 2}, PartialPartition(3, {{0}, {2}}));
  return DiagonalComplex(3, std::move(g));
}

// Every nonempty subset of {0..m-1}, gamma = singleton blocks.
inline DiagonalComplex full_simplex(int m) {
  std::map<Simplex, PartialPartition> g;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Simplex u;
    std::vector<Block> blocks;
    for (int x = 0; x < m; ++x)
      if (mask & (1u << x)) {
        u.push_back(x);
        blocks.push_back({x});
      }
    g.emplace(u, PartialPartition(m, std::move(blocks)));
  }
  return DiagonalComplex(m, std::move(g));
}

}  // namespace dcx::testing
