#include "diagcx/cactus.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcx {

CactusDiagram::CactusDiagram(std::vector<int> parent, std::vector<int> label, PointedSizes sizes)
    : parent_(std::move(parent)), label_(std::move(label)), sizes_(std::move(sizes)) {
  const int n = static_cast<int>(parent_.size());
  if (n < 1 || label_.size() != parent_.size() || sizes_.size() != parent_.size())
    throw std::invalid_argument("cactus diagram: sizes of parent, label and factor data differ");
  for (int s : sizes_)
    if (s < 1) throw std::invalid_argument("cactus diagram: pointed sets need a basepoint");
  const PlantedForest tree(n, parent_);  // rejects cycles and bad parents
  if (tree.edge_count() + 1 != static_cast<std::size_t>(n)) throw std::invalid_argument("cactus diagram: tree needs exactly one root");
  for (int v = 0; v < n; ++v) {
    const int p = parent_[static_cast<std::size_t>(v)];
    const int y = label_[static_cast<std::size_t>(v)];
    if (p < 0 && y != 0) throw std::invalid_argument("cactus diagram: the root carries no label");
    if (p >= 0 && (y < 0 || y >= sizes_[static_cast<std::size_t>(p)]))
      throw std::invalid_argument("cactus diagram: label outside the pointed set of its target");
  }
}

CoordinateMatrix coordinates(const CactusDiagram& d) {
  const int n = d.n();
  CoordinateMatrix m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j) {
    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = -1;
    // Walk up from j; at each ancestor i the last edge used is (below -> i).
    for (int below = j, i = d.parent()[static_cast<std::size_t>(j)]; i >= 0;
         below = i, i = d.parent()[static_cast<std::size_t>(i)])
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d.label()[static_cast<std::size_t>(below)];
  }
  return m;
}

bool congruent(const CactusDiagram& a, const CactusDiagram& b) {
  if (a.sizes() != b.sizes()) throw std::invalid_argument("congruent: diagrams use different factors");
  return coordinates(a) == coordinates(b);
}

std::vector<int> congruence_moves(const CactusDiagram& d) {
  std::vector<int> out;
  for (int s = 0; s < d.n(); ++s) {
    const int t = d.parent()[static_cast<std::size_t>(s)];
    if (t >= 0 && d.label()[static_cast<std::size_t>(s)] == 0 && d.parent()[static_cast<std::size_t>(t)] >= 0)
      out.push_back(s);
  }
  return out;
}

CactusDiagram apply_congruence_move(const CactusDiagram& d, int s) {
  const auto legal = congruence_moves(d);
  if (std::find(legal.begin(), legal.end(), s) == legal.end())
    throw std::invalid_argument("apply_congruence_move: not a basepoint-labelled edge into a non-root vertex");
  auto parent = d.parent();
  auto label = d.label();
  const int t = parent[static_cast<std::size_t>(s)];
  parent[static_cast<std::size_t>(s)] = parent[static_cast<std::size_t>(t)];
  label[static_cast<std::size_t>(s)] = label[static_cast<std::size_t>(t)];
  return CactusDiagram(std::move(parent), std::move(label), d.sizes());
}

std::vector<CactusDiagram> all_diagrams(const PointedSizes& sizes) {
  const int n = static_cast<int>(sizes.size());
  std::vector<CactusDiagram> out;
  for_each_forest(n, n == 1, [&](const PlantedForest& f) {
    if (f.edge_count() + 1 != static_cast<std::size_t>(n)) return;
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    for (;;) {
      out.emplace_back(f.parent(), label, sizes);
      int v = 0;
      for (; v < n; ++v) {
        const int p = f.parent(v);
        if (p < 0) continue;
        if (++label[static_cast<std::size_t>(v)] < sizes[static_cast<std::size_t>(p)]) break;
        label[static_cast<std::size_t>(v)] = 0;
      }
      if (v == n) break;
    }
  });
  return out;
}

std::set<CoordinateMatrix> ygamma_points(const PointedSizes& sizes) {
  const int n = static_cast<int>(sizes.size());
  CoordinateMatrix base(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = -1;
  std::set<CoordinateMatrix> out{base};
  if (n < 2) return out;
  const auto gf = build_gamma_Fn(n);
  for (const auto& [u, g] : gf.complex().gamma_map()) {
    const auto& blocks = g.blocks();
    // Each block of gamma(U) carries one point of P_i, i its common first coordinate.
    std::vector<int> owner, choice(blocks.size(), 0);
    for (const auto& b : blocks) owner.push_back(pair_at(n, b.front()).first);
    for (;;) {
      auto m = base;
      for (std::size_t k = 0; k < blocks.size(); ++k)
        for (int x : blocks[k]) {
          auto [i, j] = pair_at(n, x);
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = choice[k];
        }
      out.insert(std::move(m));
      std::size_t k = 0;
      while (k < choice.size() && ++choice[k] == sizes[static_cast<std::size_t>(owner[k])]) choice[k++] = 0;
      if (k == choice.size()) break;
    }
  }
  return out;
}

std::string render_coordinates(const CoordinateMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += row[j] < 0 ? " " : (row[j] == 0 ? "·" : std::to_string(row[j]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace dcx
