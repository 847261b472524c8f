#pragma once

#include <set>
#include <string>
#include <vector>

#include "diagcx/forests.hpp"

namespace dcx {

/// Factor i is the pointed set {0, ..., sizes[i]-1} with basepoint 0.
using PointedSizes = std::vector<int>;

/// Coordinates y_ij indexed [i][j]; the diagonal holds -1.
using CoordinateMatrix = std::vector<std::vector<int>>;

/// A cactus diagram: a rooted tree on [n] (edges point towards the root) and,
/// for every non-root vertex v, a label in the pointed set of parent(v).
class CactusDiagram {
 public:
  CactusDiagram() = default;
  /// Throws std::invalid_argument unless parent is a tree with a single root
  /// and every label lies in the pointed set of its edge's target.
  CactusDiagram(std::vector<int> parent, std::vector<int> label, PointedSizes sizes);

  int n() const { return static_cast<int>(parent_.size()); }
  const std::vector<int>& parent() const { return parent_; }
  const std::vector<int>& label() const { return label_; }  // 0 at the root
  const PointedSizes& sizes() const { return sizes_; }

  friend bool operator==(const CactusDiagram&, const CactusDiagram&) = default;

 private:
  std::vector<int> parent_;
  std::vector<int> label_;
  PointedSizes sizes_;
};

/// y_ij is the label of the last edge on the path from j up to i when i is a
/// proper ancestor of j, and the basepoint otherwise.
CoordinateMatrix coordinates(const CactusDiagram& d);

/// Equal coordinates. Throws std::invalid_argument for differing factor data.
bool congruent(const CactusDiagram& a, const CactusDiagram& b);

/// Edges s -> t labelled by the basepoint with t not the root; each can be
/// moved to the parent of t.
std::vector<int> congruence_moves(const CactusDiagram& d);
/// Reattach s to parent(t) with the label of t's edge. Throws std::invalid_argument
/// when s is not a legal move.
CactusDiagram apply_congruence_move(const CactusDiagram& d, int s);

/// Every cactus diagram over the given factors.
std::vector<CactusDiagram> all_diagrams(const PointedSizes& sizes);

/// Points of the finite model of Y Gamma_{F_n}: the basepoint tuple together
/// with the images of the diagonal maps of gamma(U), U in Gamma_{F_n}.
std::set<CoordinateMatrix> ygamma_points(const PointedSizes& sizes);

/// One row per i with the basepoint shown as "·" and the diagonal as " ".
std::string render_coordinates(const CoordinateMatrix& m);

}  // namespace dcx
