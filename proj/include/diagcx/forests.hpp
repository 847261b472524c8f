#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diagcx/diagcx.hpp"
#include "diagcx/setpart.hpp"

namespace dcx {

// Vertices are 0-based here; I/O and rendering use 1-based names. In the
// Pruefer code the auxiliary root is the letter 0 and vertex v is letter v+1.

/// Largest n accepted by forest enumeration.
inline constexpr int kMaxForestN = 8;
/// Largest n for which Gamma_{F_n} is materialised as a DiagonalComplex.
inline constexpr int kMaxGammaN = 6;

/// A directed edge (parent, child).
using Edge = std::pair<int, int>;

/// A planted forest on {0..n-1}, stored as a parent array with -1 for roots.
/// The empty forest (all roots) is representable; Gamma_{F_n} excludes it.
class PlantedForest {
 public:
  PlantedForest() = default;
  /// Throws std::invalid_argument on out-of-range parents or cycles.
  PlantedForest(int n, std::vector<int> parent);
  static PlantedForest from_edges(int n, const std::vector<Edge>& edges);

  int n() const { return static_cast<int>(parent_.size()); }
  const std::vector<int>& parent() const { return parent_; }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }

  std::vector<Edge> edges() const;  // sorted
  std::size_t edge_count() const;
  bool empty() const { return edge_count() == 0; }
  /// Number of children (outgoing edges) of v.
  int out_degree(int v) const;
  std::vector<int> out_degrees() const;
  bool is_ancestor(int a, int v) const;  // proper ancestor

  /// Relabel vertices: v -> perm[v].
  PlantedForest permuted(const std::vector<int>& perm) const;

  friend bool operator==(const PlantedForest&, const PlantedForest&) = default;
  friend auto operator<=>(const PlantedForest&, const PlantedForest&) = default;

 private:
  std::vector<int> parent_;
};

/// A set of pairs (i, j), i != j, read as "i is below j": the transitive
/// closure of a planted forest, where i is a proper ancestor of j.
class ForestPoset {
 public:
  ForestPoset() = default;
  /// Throws std::invalid_argument unless the relation is irreflexive,
  /// transitively closed and every element's down-set is a chain.
  ForestPoset(int n, std::vector<Edge> pairs);

  int n() const { return n_; }
  const std::vector<Edge>& pairs() const { return pairs_; }  // sorted
  bool contains(int i, int j) const;

  friend bool operator==(const ForestPoset&, const ForestPoset&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> pairs_;
};

ForestPoset poset_from_forest(const PlantedForest& f);
PlantedForest forest_from_poset(const ForestPoset& u);

/// First edge (i, i1) of the maximal chain i < i1 < ... < j. Throws
/// std::invalid_argument if (i, j) is not in u.
Edge mu(const ForestPoset& u, int i, int j);

/// Index of (i, j) in X_n = {(i, j) : i != j}, ordered lexicographically.
int pair_index(int n, int i, int j);
Edge pair_at(int n, int index);
inline int ground_size_Xn(int n) { return n * (n - 1); }

Simplex simplex_of(const ForestPoset& u);
ForestPoset poset_of(int n, const Simplex& s);

/// Fibres of mu over the edges, as a partial partition of X_n.
PartialPartition gamma_forest(const ForestPoset& u);

/// Gamma_{F_n} over X_n with gamma_forest and the labelling (i, j) -> i.
/// Throws std::invalid_argument for n < 1 or n > kMaxGammaN.
LabelledComplex build_gamma_Fn(int n);

/// Pruefer word of length n-1 over {0..n}.
std::vector<int> prufer_encode(const PlantedForest& f);
/// Throws std::invalid_argument when a letter is outside {0..n} with n = |w|+1.
PlantedForest prufer_decode(const std::vector<int>& word);
/// Position of a word in lexicographic order of all words (base n+1).
std::uint64_t prufer_rank(const std::vector<int>& word, int n);

/// Calls fn for every forest on n vertices in lexicographic word order.
void for_each_forest(int n, bool include_empty, const std::function<void(const PlantedForest&)>& fn);

/// All forests, lexicographic word order. `workers` > 1 shards the word
/// space; the result does not depend on it.
std::vector<PlantedForest> enumerate_forests(int n, bool include_empty, unsigned workers = 1);

/// A planted forest with vertex colours.
struct ColoredForest {
  PlantedForest forest;
  std::vector<int> coloring;
  friend bool operator==(const ColoredForest&, const ColoredForest&) = default;
};

/// Colouring with multiplicities (n_1, ..., n_k) assigned to consecutive vertices.
std::vector<int> coloring_from_multiplicities(const std::vector<int>& multiplicities);

/// All permutations of {0..n-1} preserving the colouring.
std::vector<std::vector<int>> color_preserving_permutations(const std::vector<int>& coloring);

struct ForestOrbit {
  ColoredForest representative;  // lexicographically least parent array in the orbit
  std::uint64_t orbit_size = 0;
  std::uint64_t stabilizer_order = 0;
};

/// Orbits of nonempty forests under S_{n_1} x ... x S_{n_k}. Throws
/// std::invalid_argument when the multiplicities do not sum to n.
std::vector<ForestOrbit> orbit_decomposition(int n, const std::vector<int>& multiplicities);

/// True when some automorphism of the coloured forest permutes its edges oddly,
/// i.e. the determinant module of Aut(f) is nontrivial.
bool determinant_sign_nontrivial(const ColoredForest& f);

/// Human-readable edge list with 1-based names, e.g. "1->2, 1->3".
std::string render_edges(const PlantedForest& f);

nlohmann::json to_json(const PlantedForest& f);  // 1-based parents, -1 for roots
PlantedForest forest_from_json(const nlohmann::json& j);

}  // namespace dcx
