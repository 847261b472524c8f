#pragma once

#include <set>
#include <vector>

#include <json.hpp>

#include "diagcx/forests.hpp"
#include "diagcx/setpart.hpp"

namespace dcx {

/// Largest n for which enumerate_bipartite runs.
inline constexpr int kMaxBipartiteN = 4;

/// A forest on [n] ∪ N with edges alternating between [n] and N. Vertices
/// 0..n-1 are [n]; n..n+k-1 are the internal vertices N. Every internal vertex
/// has a parent in [n] and at least one child; [n]-vertices have a parent in N
/// or are roots. Internal vertices are kept ordered by their least child.
class BipartiteForest {
 public:
  BipartiteForest() = default;
  /// Throws std::invalid_argument when the data is not a bipartite planted forest.
  BipartiteForest(int n, int internal, std::vector<int> parent);

  int n() const { return n_; }
  int internal_count() const { return static_cast<int>(parent_.size()) - n_; }
  const std::vector<int>& parent() const { return parent_; }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  /// Vertex id of internal vertex number x.
  int internal_vertex(int x) const { return n_ + x; }
  std::vector<int> children(int v) const;

  friend bool operator==(const BipartiteForest&, const BipartiteForest&) = default;

 private:
  int n_ = 0;
  std::vector<int> parent_;
};

/// Block U_x = {(p(x), w) : w in [n] below x} for each internal x, as a
/// partial partition of X_n. Block order follows internal vertex order after
/// canonicalisation.
PartialPartition partial_partition_of(const BipartiteForest& f);

/// The block U_x of internal vertex number x, as X_n indices.
Block internal_block(const BipartiteForest& f, int x);

/// One internal vertex on every edge of f.
BipartiteForest subdivide(const PlantedForest& f);

/// Identify internal vertices x != y with a common parent. Throws std::invalid_argument otherwise.
BipartiteForest horizontal_fold(const BipartiteForest& f, int x, int y);

/// Identify internal vertices x and y where y is the grandparent of x, i.e.
/// p(x) = j and p(j) = y. The children of x move to y. Throws
/// std::invalid_argument for any other configuration.
BipartiteForest vertical_fold(const BipartiteForest& f, int x, int y);

/// All bipartite planted forests on [n] with at least one internal vertex.
std::vector<BipartiteForest> all_bipartite_forests(int n);

/// Partial partitions realised by bipartite forests on [n]. Throws
/// std::invalid_argument unless 1 <= n <= kMaxBipartiteN (or `unsafe_large`).
std::set<PartialPartition> enumerate_bipartite(int n, bool unsafe_large = false);

/// {"n": n, "internal": k, "parents": [...]}, 1-based vertex names, -1 for roots.
nlohmann::json to_json(const BipartiteForest& f);
BipartiteForest bipartite_from_json(const nlohmann::json& j);

}  // namespace dcx
