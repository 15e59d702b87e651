#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fpm/model.hpp"

namespace fpm {

/// Frequent items in descending support order (ties on ascending id).
struct FList {
  struct Entry {
    ItemId item;
    Count support;
  };
  std::vector<Entry> entries;
  Count minsup_abs = 1;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
};

// First scan over the database.
FList build_flist(const TransactionDB& db, double minsup_rel);
FList build_flist(const TransactionDB& db, Count minsup_abs);

/// Prefix tree over F-list-ordered transactions. Nodes live in a flat arena
/// and refer to each other by index; index 0 is the root sentinel.
class FPTree {
 public:
  using NodeIndex = std::uint32_t;
  static constexpr NodeIndex kNone = std::numeric_limits<NodeIndex>::max();
  static constexpr NodeIndex kRoot = 0;

  struct Node {
    ItemId item = 0;
    Count count = 0;
    NodeIndex parent = kNone;
    NodeIndex first_child = kNone;
    NodeIndex next_sibling = kNone;
    NodeIndex next_same_item = kNone;
  };

  struct HeaderEntry {
    ItemId item = 0;
    Count total_count = 0;
    NodeIndex chain_head = kNone;
    NodeIndex chain_tail = kNone;
  };

  FPTree(std::vector<FList::Entry> order, Count minsup_abs);

  // Inserts a path whose items are already filtered to the F-list and sorted
  // by rank.
  void insert_ranked(std::span<const std::uint32_t> ranks, Count count);

  // Filters and reorders an arbitrary item list, then inserts it.
  void insert(std::span<const ItemId> items, Count count);

  const Node& node(NodeIndex i) const { return nodes_[i]; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<HeaderEntry>& header() const noexcept { return header_; }
  const std::vector<FList::Entry>& order() const noexcept { return order_; }
  Count minsup_abs() const noexcept { return minsup_abs_; }
  bool empty() const noexcept { return nodes_[kRoot].first_child == kNone; }

  // Rank of an item in the F-list, or kNone when the item is infrequent.
  std::uint32_t rank_of(ItemId item) const {
    return item < rank_.size() ? rank_[item] : kNone;
  }

  // True when every node has at most one child.
  bool is_single_path() const;

  // Sum of the counts along the node-link chain of the header entry.
  Count chain_sum(std::size_t header_index) const;

 private:
  std::vector<Node> nodes_;
  std::vector<HeaderEntry> header_;
  std::vector<FList::Entry> order_;
  std::vector<std::uint32_t> rank_;
  Count minsup_abs_;
  std::vector<std::uint32_t> scratch_;
};

// Second scan: compresses the database into a tree.
FPTree build_fptree(const TransactionDB& db, const FList& flist);

struct MineOptions {
  unsigned threads = 1;
  bool single_path_shortcut = true;
};

// All frequent itemsets with exact supports, canonically sorted.
std::vector<FrequentItemset> mine(const FPTree& tree, const MineOptions& options = {});

// build_flist + build_fptree + mine.
std::vector<FrequentItemset> fpgrowth(const TransactionDB& db, double minsup_rel,
                                      const MineOptions& options = {});

}  // namespace fpm
