#include "diagcx/bipartite.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dcx {

namespace {

std::vector<int> canonical(int n, std::vector<int> parent) {
  const int total = static_cast<int>(parent.size());
  std::vector<int> least(static_cast<std::size_t>(total), total);
  for (int v = 0; v < n; ++v) {
    const int p = parent[static_cast<std::size_t>(v)];
    if (p >= n) least[static_cast<std::size_t>(p)] = std::min(least[static_cast<std::size_t>(p)], v);
  }
  std::vector<int> order(static_cast<std::size_t>(total - n));
  std::iota(order.begin(), order.end(), n);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return least[static_cast<std::size_t>(a)] < least[static_cast<std::size_t>(b)]; });
  std::vector<int> rename(static_cast<std::size_t>(total));
  std::iota(rename.begin(), rename.end(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) rename[static_cast<std::size_t>(order[k])] = n + static_cast<int>(k);
  std::vector<int> out(parent.size());
  for (int v = 0; v < total; ++v) {
    const int p = parent[static_cast<std::size_t>(v)];
    out[static_cast<std::size_t>(rename[static_cast<std::size_t>(v)])] = p < 0 ? -1 : rename[static_cast<std::size_t>(p)];
  }
  return out;
}

}  // namespace

BipartiteForest::BipartiteForest(int n, int internal, std::vector<int> parent) : n_(n) {
  if (n < 1 || internal < 0 || static_cast<int>(parent.size()) != n + internal)
    throw std::invalid_argument("bipartite forest: wrong sizes");
  const int total = n + internal;
  std::vector<int> child_count(static_cast<std::size_t>(total), 0);
  for (int v = 0; v < total; ++v) {
    const int p = parent[static_cast<std::size_t>(v)];
    if (p < -1 || p >= total) throw std::invalid_argument("bipartite forest: parent out of range");
    if (v >= n && (p < 0 || p >= n)) throw std::invalid_argument("bipartite forest: internal vertex needs a parent in [n]");
    if (v < n && p >= 0 && p < n) throw std::invalid_argument("bipartite forest: edge between two vertices of [n]");
    if (p >= 0) ++child_count[static_cast<std::size_t>(p)];
  }
  for (int x = n; x < total; ++x)
    if (child_count[static_cast<std::size_t>(x)] == 0) throw std::invalid_argument("bipartite forest: internal leaf");
  for (int v = 0; v < total; ++v) {
    int steps = 0;
    for (int w = v; w >= 0; w = parent[static_cast<std::size_t>(w)])
      if (++steps > total) throw std::invalid_argument("bipartite forest: cycle");
  }
  parent_ = canonical(n, std::move(parent));
}

std::vector<int> BipartiteForest::children(int v) const {
  std::vector<int> out;
  for (std::size_t w = 0; w < parent_.size(); ++w)
    if (parent_[w] == v) out.push_back(static_cast<int>(w));
  return out;
}

Block internal_block(const BipartiteForest& f, int x) {
  const int v = f.internal_vertex(x);
  const int k = f.parent(v);
  Block b;
  for (int w = 0; w < f.n(); ++w)
    for (int a = f.parent(w); a >= 0; a = f.parent(a))
      if (a == v) {
        b.push_back(pair_index(f.n(), k, w));
        break;
      }
  std::sort(b.begin(), b.end());
  return b;
}

PartialPartition partial_partition_of(const BipartiteForest& f) {
  std::vector<Block> blocks;
  for (int x = 0; x < f.internal_count(); ++x) blocks.push_back(internal_block(f, x));
  return PartialPartition(ground_size_Xn(f.n()), std::move(blocks));
}

BipartiteForest subdivide(const PlantedForest& f) {
  const int n = f.n();
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (auto [p, c] : f.edges()) {
    const int x = static_cast<int>(parent.size());
    parent.push_back(p);
    parent[static_cast<std::size_t>(c)] = x;
  }
  const int internal = static_cast<int>(parent.size()) - n;
  return BipartiteForest(n, internal, std::move(parent));
}

BipartiteForest horizontal_fold(const BipartiteForest& f, int x, int y) {
  const int k = f.internal_count();
  if (x == y || x < 0 || y < 0 || x >= k || y >= k) throw std::invalid_argument("horizontal_fold: need two distinct internal vertices");
  const int vx = f.internal_vertex(x), vy = f.internal_vertex(y);
  if (f.parent(vx) != f.parent(vy)) throw std::invalid_argument("horizontal_fold: internal vertices have different parents");
  std::vector<int> parent = f.parent();
  for (auto& p : parent)
    if (p == vy) p = vx;
  parent.erase(parent.begin() + vy);
  for (auto& p : parent)
    if (p > vy) --p;
  return BipartiteForest(f.n(), k - 1, std::move(parent));
}

BipartiteForest vertical_fold(const BipartiteForest& f, int x, int y) {
  const int k = f.internal_count();
  if (x == y || x < 0 || y < 0 || x >= k || y >= k) throw std::invalid_argument("vertical_fold: need two distinct internal vertices");
  const int vx = f.internal_vertex(x), vy = f.internal_vertex(y);
  if (f.parent(f.parent(vx)) != vy) throw std::invalid_argument("vertical_fold: y is not the grandparent of x");
  std::vector<int> parent = f.parent();
  for (auto& p : parent)
    if (p == vx) p = vy;
  parent.erase(parent.begin() + vx);
  for (auto& p : parent)
    if (p > vx) --p;
  return BipartiteForest(f.n(), k - 1, std::move(parent));
}

std::vector<BipartiteForest> all_bipartite_forests(int n) {
  std::vector<BipartiteForest> out;
  for_each_forest(n, false, [&](const PlantedForest& f) {
    // Each vertex groups its children; every group hangs off one internal vertex.
    std::vector<std::vector<std::vector<Block>>> groupings(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<int> kids;
      for (int c = 0; c < n; ++c)
        if (f.parent(c) == v) kids.push_back(c);
      groupings[static_cast<std::size_t>(v)] = set_partitions(kids);
    }
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    for (;;) {
      std::vector<int> parent(static_cast<std::size_t>(n), -1);
      for (int v = 0; v < n; ++v)
        for (const auto& group : groupings[static_cast<std::size_t>(v)][choice[static_cast<std::size_t>(v)]]) {
          const int x = static_cast<int>(parent.size());
          parent.push_back(v);
          for (int c : group) parent[static_cast<std::size_t>(c)] = x;
        }
      const int internal = static_cast<int>(parent.size()) - n;
      out.emplace_back(n, internal, std::move(parent));
      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == groupings[i].size()) choice[i++] = 0;
      if (i == choice.size()) break;
    }
  });
  return out;
}

std::set<PartialPartition> enumerate_bipartite(int n, bool unsafe_large) {
  if (n < 1 || (n > kMaxBipartiteN && !unsafe_large))
    throw std::invalid_argument("enumerate_bipartite: n must be in [1, " + std::to_string(kMaxBipartiteN) + "]");
  std::set<PartialPartition> out;
  for (const auto& f : all_bipartite_forests(n)) out.insert(partial_partition_of(f));
  return out;
}

nlohmann::json to_json(const BipartiteForest& f) {
  nlohmann::json j;
  j["n"] = f.n();
  j["internal"] = f.internal_count();
  std::vector<int> parents;
  for (int p : f.parent()) parents.push_back(p < 0 ? -1 : p + 1);
  j["parents"] = parents;
  return j;
}

BipartiteForest bipartite_from_json(const nlohmann::json& j) {
  std::vector<int> parents;
  for (const auto& p : j.at("parents")) {
    const int v = p.get<int>();
    parents.push_back(v < 0 ? -1 : v - 1);
  }
  return BipartiteForest(j.at("n").get<int>(), j.at("internal").get<int>(), std::move(parents));
}

}  // namespace dcx
