#pragma once

#include <set>
#include <vector>

#include "diagcx/forests.hpp"
#include "diagcx/setpart.hpp"

namespace dcx::testing {

// Subsets of the ground set realised by Im D^p when every coordinate is the
// pointed set {*, a}: a tuple is the set of positions holding a.
inline std::set<unsigned> diagonal_image(const PartialPartition& p) {
  std::set<unsigned> out;
  const auto k = p.block_count();
  for (unsigned choice = 0; choice < (1u << k); ++choice) {
    unsigned s = 0;
    for (std::size_t b = 0; b < k; ++b)
      if (choice & (1u << b))
        for (int x : p.blocks()[b]) s |= 1u << x;
    out.insert(s);
  }
  return out;
}

// Paper-style edge i -> j with 1-based names: i is the parent of j.
inline PlantedForest edges1(int n, std::vector<Edge> e) {
  for (auto& [p, c] : e) {
    --p;
    --c;
  }
  return PlantedForest::from_edges(n, e);
}

}  // namespace dcx::testing
