#include "diagcx/setpart.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dcx {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<std::size_t> parent;
};

}  // namespace

PartialPartition::PartialPartition(int ground_size, std::vector<Block> blocks)
    : ground_size_(ground_size), blocks_(std::move(blocks)) {
  if (ground_size < 0) throw std::invalid_argument("negative ground size");
  owner_.assign(static_cast<std::size_t>(ground_size), -1);
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partial partition has an empty block");
    std::sort(b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (int x : blocks_[i]) {
      if (x < 0 || x >= ground_size) {
        throw std::invalid_argument("element " + std::to_string(x) + " outside ground set of size " +
                                    std::to_string(ground_size));
      }
      auto& o = owner_[static_cast<std::size_t>(x)];
      if (o >= 0) throw std::invalid_argument("blocks are not disjoint at element " + std::to_string(x));
      o = static_cast<int>(i);
    }
  }
}

std::vector<int> PartialPartition::support() const {
  std::vector<int> s;
  for (int x = 0; x < ground_size_; ++x)
    if (in_support(x)) s.push_back(x);
  return s;
}

bool is_partial_coarsening(const PartialPartition& p, const PartialPartition& q) {
  if (p.ground_size() != q.ground_size()) throw std::invalid_argument("ground sizes differ");
  for (std::size_t bi = 0; bi < p.blocks().size(); ++bi) {
    for (int x : p.blocks()[bi]) {
      const int qb = q.block_of(x);
      if (qb < 0) return false;
      for (int y : q.blocks()[static_cast<std::size_t>(qb)])
        if (p.block_of(y) != static_cast<int>(bi)) return false;
    }
  }
  return true;
}

std::optional<PartialPartition> meet(const PartialPartition& p, const PartialPartition& q) {
  if (p.ground_size() != q.ground_size()) throw std::invalid_argument("ground sizes differ");
  const auto n = static_cast<std::size_t>(p.ground_size());
  const std::size_t sink = n;
  DisjointSets ds(n + 1);
  for (const auto* part : {&p, &q})
    for (const auto& b : part->blocks())
      for (int x : b) ds.unite(static_cast<std::size_t>(b.front()), static_cast<std::size_t>(x));
  for (std::size_t x = 0; x < n; ++x)
    if (!p.in_support(static_cast<int>(x)) || !q.in_support(static_cast<int>(x))) ds.unite(x, sink);

  std::vector<std::vector<int>> classes(n + 1);
  const std::size_t sink_root = ds.find(sink);
  for (std::size_t x = 0; x < n; ++x) {
    const auto r = ds.find(x);
    if (r != sink_root) classes[r].push_back(static_cast<int>(x));
  }
  std::vector<Block> blocks;
  for (auto& c : classes)
    if (!c.empty()) blocks.push_back(std::move(c));
  if (blocks.empty()) return std::nullopt;
  return PartialPartition(p.ground_size(), std::move(blocks));
}

std::vector<std::vector<Block>> set_partitions(const std::vector<int>& elements) {
  std::vector<std::vector<Block>> out;
  if (elements.empty()) {
    out.emplace_back();
    return out;
  }
  std::vector<Block> current;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == elements.size()) {
      out.push_back(current);
      return;
    }
    for (std::size_t b = 0; b < current.size(); ++b) {
      current[b].push_back(elements[idx]);
      self(self, idx + 1);
      current[b].pop_back();
    }
    current.push_back({elements[idx]});
    self(self, idx + 1);
    current.pop_back();
  };
  rec(rec, 0);
  return out;
}

std::vector<PartialPartition> all_partial_partitions(int ground_size) {
  std::vector<PartialPartition> out;
  const unsigned full = 1u << ground_size;
  for (unsigned mask = 0; mask < full; ++mask) {
    std::vector<int> elems;
    for (int x = 0; x < ground_size; ++x)
      if (mask & (1u << x)) elems.push_back(x);
    for (auto& blocks : set_partitions(elems)) out.emplace_back(ground_size, std::move(blocks));
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json to_json(const PartialPartition& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& b : p.blocks()) j.push_back(b);
  return j;
}

PartialPartition partial_partition_from_json(const nlohmann::json& j, int ground_size) {
  if (!j.is_array()) throw std::invalid_argument("partial partition JSON must be an array of arrays");
  std::vector<Block> blocks;
  for (const auto& b : j) blocks.push_back(b.get<Block>());
  return PartialPartition(ground_size, std::move(blocks));
}

}  // namespace dcx
