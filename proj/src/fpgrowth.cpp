#include "fpm/fpgrowth.hpp"

#include <algorithm>
#include <thread>

#include <fmt/format.h>

namespace fpm {

namespace {

bool flist_order(const FList::Entry& a, const FList::Entry& b) {
  if (a.support != b.support) return a.support > b.support;
  return a.item < b.item;
}

class Miner {
 public:
  Miner(Count minsup, bool shortcut, std::vector<FrequentItemset>& out)
      : minsup_(minsup), shortcut_(shortcut), out_(out) {}

  void mine_tree(const FPTree& tree) {
    if (tree.empty()) return;
    if (shortcut_ && tree.is_single_path()) {
      mine_single_path(tree);
      return;
    }
    for (std::size_t h = tree.header().size(); h-- > 0;) {
      mine_item(tree, h);
    }
  }

  // Emits suffix+item, then recurses into the item's conditional tree.
  void mine_item(const FPTree& tree, std::size_t h) {
    const auto& entry = tree.header()[h];
    suffix_.push_back(entry.item);
    emit(entry.total_count);

    // Conditional pattern base: prefix paths of every node on the chain.
    // Ancestors always rank before h in this tree's order.
    std::vector<Count> counts(h, 0);
    for (auto n = entry.chain_head; n != FPTree::kNone; n = tree.node(n).next_same_item) {
      const Count c = tree.node(n).count;
      for (auto p = tree.node(n).parent; p != FPTree::kRoot; p = tree.node(p).parent) {
        counts[tree.rank_of(tree.node(p).item)] += c;
      }
    }
    std::vector<FList::Entry> local;
    for (std::size_t r = 0; r < h; ++r) {
      if (counts[r] >= minsup_) {
        local.push_back({tree.order()[r].item, counts[r]});
      }
    }
    if (!local.empty()) {
      std::sort(local.begin(), local.end(), flist_order);
      FPTree conditional(std::move(local), minsup_);
      std::vector<ItemId> path;
      for (auto n = entry.chain_head; n != FPTree::kNone; n = tree.node(n).next_same_item) {
        path.clear();
        for (auto p = tree.node(n).parent; p != FPTree::kRoot; p = tree.node(p).parent) {
          path.push_back(tree.node(p).item);
        }
        conditional.insert(path, tree.node(n).count);
      }
      mine_tree(conditional);
    }
    suffix_.pop_back();
  }

 private:
  void mine_single_path(const FPTree& tree) {
    path_items_.clear();
    path_counts_.clear();
    for (auto n = tree.node(FPTree::kRoot).first_child; n != FPTree::kNone; n = tree.node(n).first_child) {
      path_items_.push_back(tree.node(n).item);
      path_counts_.push_back(tree.node(n).count);
    }
    enumerate_path(0);
  }

  // Every combination of path nodes; counts are non-increasing down a single
  // path, so the support of a combination is the count of its deepest node.
  void enumerate_path(std::size_t start) {
    for (std::size_t i = start; i < path_items_.size(); ++i) {
      suffix_.push_back(path_items_[i]);
      emit(path_counts_[i]);
      enumerate_path(i + 1);
      suffix_.pop_back();
    }
  }

  void emit(Count support) {
    out_.push_back({Itemset(suffix_), support});
  }

  Count minsup_;
  bool shortcut_;
  std::vector<FrequentItemset>& out_;
  std::vector<ItemId> suffix_;
  std::vector<ItemId> path_items_;
  std::vector<Count> path_counts_;
};

}  // namespace

FList build_flist(const TransactionDB& db, Count minsup_abs) {
  std::vector<Count> support(db.catalog().size(), 0);
  for (const auto& t : db.transactions()) {
    for (ItemId item : t.items) ++support[item];
  }
  FList flist;
  flist.minsup_abs = std::max<Count>(1, minsup_abs);
  for (ItemId item = 0; item < support.size(); ++item) {
    if (support[item] >= flist.minsup_abs) {
      flist.entries.push_back({item, support[item]});
    }
  }
  std::sort(flist.entries.begin(), flist.entries.end(), flist_order);
  return flist;
}

FList build_flist(const TransactionDB& db, double minsup_rel) {
  return build_flist(db, min_support_count(minsup_rel, db.size()));
}

FPTree::FPTree(std::vector<FList::Entry> order, Count minsup_abs)
    : order_(std::move(order)), minsup_abs_(minsup_abs) {
  nodes_.emplace_back();
  header_.reserve(order_.size());
  ItemId max_item = 0;
  for (const auto& e : order_) max_item = std::max(max_item, e.item);
  rank_.assign(order_.empty() ? 0 : static_cast<std::size_t>(max_item) + 1, kNone);
  for (std::uint32_t r = 0; r < order_.size(); ++r) {
    if (rank_[order_[r].item] != kNone) {
      throw ConsistencyError(fmt::format("item {} appears twice in the F-list", order_[r].item));
    }
    rank_[order_[r].item] = r;
    header_.push_back({order_[r].item, 0, kNone, kNone});
  }
}

void FPTree::insert_ranked(std::span<const std::uint32_t> ranks, Count count) {
  NodeIndex cur = kRoot;
  for (std::uint32_t r : ranks) {
    const ItemId item = order_[r].item;
    NodeIndex child = nodes_[cur].first_child;
    while (child != kNone && nodes_[child].item != item) {
      child = nodes_[child].next_sibling;
    }
    if (child == kNone) {
      child = static_cast<NodeIndex>(nodes_.size());
      Node fresh;
      fresh.item = item;
      fresh.parent = cur;
      fresh.next_sibling = nodes_[cur].first_child;
      nodes_.push_back(fresh);
      nodes_[cur].first_child = child;
      auto& h = header_[r];
      if (h.chain_tail == kNone) {
        h.chain_head = child;
      } else {
        nodes_[h.chain_tail].next_same_item = child;
      }
      h.chain_tail = child;
    }
    nodes_[child].count += count;
    header_[r].total_count += count;
    cur = child;
  }
}

void FPTree::insert(std::span<const ItemId> items, Count count) {
  scratch_.clear();
  for (ItemId item : items) {
    const auto r = rank_of(item);
    if (r != kNone) scratch_.push_back(r);
  }
  std::sort(scratch_.begin(), scratch_.end());
  scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
  // insert_ranked does not touch scratch_, so passing it directly is safe.
  insert_ranked(scratch_, count);
}

bool FPTree::is_single_path() const {
  for (const auto& n : nodes_) {
    if (n.first_child != kNone && nodes_[n.first_child].next_sibling != kNone) return false;
  }
  return true;
}

Count FPTree::chain_sum(std::size_t header_index) const {
  Count sum = 0;
  for (auto n = header_.at(header_index).chain_head; n != kNone; n = nodes_[n].next_same_item) {
    sum += nodes_[n].count;
  }
  return sum;
}

FPTree build_fptree(const TransactionDB& db, const FList& flist) {
  FPTree tree(flist.entries, flist.minsup_abs);
  for (const auto& t : db.transactions()) {
    tree.insert(t.items.items(), 1);
  }
  return tree;
}

std::vector<FrequentItemset> mine(const FPTree& tree, const MineOptions& options) {
  std::vector<FrequentItemset> out;
  const auto headers = tree.header().size();
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(headers)));

  if (threads <= 1 || (options.single_path_shortcut && tree.is_single_path())) {
    Miner(tree.minsup_abs(), options.single_path_shortcut, out).mine_tree(tree);
  } else {
    // Suffix items are independent; interleave them across workers.
    std::vector<std::vector<FrequentItemset>> parts(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        Miner miner(tree.minsup_abs(), options.single_path_shortcut, parts[w]);
        for (std::size_t h = w; h < headers; h += threads) {
          miner.mine_item(tree, h);
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& part : parts) {
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }
  sort_canonical(out);
  return out;
}

std::vector<FrequentItemset> fpgrowth(const TransactionDB& db, double minsup_rel, const MineOptions& options) {
  const auto flist = build_flist(db, minsup_rel);
  return mine(build_fptree(db, flist), options);
}

}  // namespace fpm
