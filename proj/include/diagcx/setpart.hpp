#pragma once

#include <compare>
#include <optional>
#include <vector>

#include <json.hpp>

namespace dcx {

using Block = std::vector<int>;

/// A set of disjoint nonempty blocks of the ground set {0..n-1}. Blocks need
/// not cover the ground set. Stored canonically: elements sorted within each
/// block, blocks sorted by least element, so equality is structural.
class PartialPartition {
 public:
  PartialPartition() = default;

  /// Throws std::invalid_argument on empty, overlapping or out-of-range blocks.
  PartialPartition(int ground_size, std::vector<Block> blocks);

  int ground_size() const { return ground_size_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  /// Index of the block containing x, or -1 when x is outside the support.
  int block_of(int x) const { return owner_[static_cast<std::size_t>(x)]; }
  bool in_support(int x) const { return block_of(x) >= 0; }

  /// Sorted union of the blocks.
  std::vector<int> support() const;

  friend bool operator==(const PartialPartition& a, const PartialPartition& b) {
    return a.ground_size_ == b.ground_size_ && a.blocks_ == b.blocks_;
  }
  friend std::strong_ordering operator<=>(const PartialPartition& a,
                                          const PartialPartition& b) {
    if (auto c = a.ground_size_ <=> b.ground_size_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  int ground_size_ = 0;
  std::vector<Block> blocks_;
  std::vector<int> owner_;
};

/// p <=_pc q: every block of p is a union of blocks of q.
bool is_partial_coarsening(const PartialPartition& p, const PartialPartition& q);

/// Greatest lower bound under partial coarsening. Elements related through a
/// shared block of p or q are merged; an element outside either support is
/// tied to the basepoint and dropped. std::nullopt when nothing survives
/// (the intersection of images is the basepoint alone).
std::optional<PartialPartition> meet(const PartialPartition& p, const PartialPartition& q);

/// All partial partitions of {0..n-1}, in canonical order. Exponential; meant
/// for exhaustive checks on small ground sets.
std::vector<PartialPartition> all_partial_partitions(int ground_size);

/// All set partitions of `elements` (each returned as a list of blocks).
std::vector<std::vector<Block>> set_partitions(const std::vector<int>& elements);

nlohmann::json to_json(const PartialPartition& p);
PartialPartition partial_partition_from_json(const nlohmann::json& j, int ground_size);

}  // namespace dcx
