#include "fpm/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include <fmt/format.h>

namespace fpm::oracle {

std::vector<FrequentItemset> brute_force_frequent(const TransactionDB& db, Count minsup_abs) {
  if (db.catalog().size() > kBruteForceMaxItems) {
    throw ConfigError(fmt::format("brute-force enumeration refuses catalogs above {} items (got {})",
                                  kBruteForceMaxItems, db.catalog().size()));
  }
  minsup_abs = std::max<Count>(1, minsup_abs);
  std::vector<std::uint32_t> rows;
  std::uint32_t present = 0;
  for (const auto& t : db.transactions()) {
    std::uint32_t bits = 0;
    for (ItemId id : t.items) bits |= 1u << id;
    rows.push_back(bits);
    present |= bits;
  }

  std::vector<ItemId> universe;
  for (ItemId id = 0; id < db.catalog().size(); ++id) {
    if (present & (1u << id)) universe.push_back(id);
  }

  std::vector<FrequentItemset> out;
  const std::uint64_t subsets = std::uint64_t{1} << universe.size();
  for (std::uint64_t pick = 1; pick < subsets; ++pick) {
    std::uint32_t mask = 0;
    std::vector<ItemId> items;
    for (std::size_t b = 0; b < universe.size(); ++b) {
      if (pick & (std::uint64_t{1} << b)) {
        mask |= 1u << universe[b];
        items.push_back(universe[b]);
      }
    }
    Count support = 0;
    for (auto r : rows) {
      if ((r & mask) == mask) ++support;
    }
    if (support >= minsup_abs) {
      out.push_back({Itemset::from_sorted_unique(std::move(items)), support});
    }
  }
  sort_canonical(out);
  return out;
}

std::vector<FrequentItemset> brute_force_frequent(const TransactionDB& db, double minsup_rel) {
  return brute_force_frequent(db, min_support_count(minsup_rel, db.size()));
}

std::vector<FrequentItemset> apriori(const TransactionDB& db, Count minsup_abs) {
  minsup_abs = std::max<Count>(1, minsup_abs);
  std::vector<FrequentItemset> out;

  // L1
  std::vector<Count> single(db.catalog().size(), 0);
  for (const auto& t : db.transactions()) {
    for (ItemId id : t.items) ++single[id];
  }
  std::vector<std::vector<ItemId>> level;
  for (ItemId id = 0; id < single.size(); ++id) {
    if (single[id] >= minsup_abs) {
      level.push_back({id});
      out.push_back({Itemset::from_sorted_unique({id}), single[id]});
    }
  }

  while (level.size() > 1) {
    const std::size_t k = level.front().size();
    // Join step: itemsets sharing their first k-1 items. level is sorted,
    // so such itemsets are contiguous.
    std::vector<std::vector<ItemId>> candidates;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        if (!std::equal(level[i].begin(), level[i].end() - 1, level[j].begin())) break;
        auto candidate = level[i];
        candidate.push_back(level[j].back());
        // Prune step: every k-subset must be frequent.
        bool keep = true;
        std::vector<ItemId> sub;
        for (std::size_t drop = 0; drop + 2 < candidate.size() && keep; ++drop) {
          sub.clear();
          for (std::size_t x = 0; x < candidate.size(); ++x) {
            if (x != drop) sub.push_back(candidate[x]);
          }
          keep = std::binary_search(level.begin(), level.end(), sub);
        }
        if (keep) candidates.push_back(std::move(candidate));
      }
    }
    if (candidates.empty()) break;

    // One full scan per level.
    std::vector<Count> counts(candidates.size(), 0);
    for (const auto& t : db.transactions()) {
      const auto items = t.items.items();
      if (items.size() <= k) continue;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (std::includes(items.begin(), items.end(), candidates[c].begin(), candidates[c].end())) {
          ++counts[c];
        }
      }
    }

    std::vector<std::vector<ItemId>> next;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (counts[c] >= minsup_abs) {
        out.push_back({Itemset::from_sorted_unique(candidates[c]), counts[c]});
        next.push_back(std::move(candidates[c]));
      }
    }
    level = std::move(next);
  }
  sort_canonical(out);
  return out;
}

std::vector<FrequentItemset> apriori(const TransactionDB& db, double minsup_rel) {
  return apriori(db, min_support_count(minsup_rel, db.size()));
}

std::vector<AssociationRule> oracle_rules(const TransactionDB& db, double minsup_rel, double min_conf) {
  const auto frequents = brute_force_frequent(db, minsup_rel);
  const auto n = static_cast<double>(db.size());
  std::vector<AssociationRule> rules;
  for (const auto& z : frequents) {
    const auto k = z.itemset.size();
    if (k < 2) continue;
    const Count both = db.count_containing(z.itemset);
    for (std::uint32_t pick = 1; pick + 1 < (1u << k); ++pick) {
      std::vector<ItemId> lhs;
      std::vector<ItemId> rhs;
      for (std::size_t b = 0; b < k; ++b) {
        (pick & (1u << b) ? lhs : rhs).push_back(z.itemset[b]);
      }
      auto x = Itemset::from_sorted_unique(std::move(lhs));
      auto y = Itemset::from_sorted_unique(std::move(rhs));
      const Count sx = db.count_containing(x);
      const Count sy = db.count_containing(y);
      RuleMetrics m;
      m.support_abs = both;
      m.rsupp = static_cast<double>(both) / n;
      m.confidence = static_cast<double>(both) / static_cast<double>(sx);
      m.lift = m.confidence / (static_cast<double>(sy) / n);
      if (m.confidence >= min_conf) {
        rules.push_back({std::move(x), std::move(y), m});
      }
    }
  }
  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return rules;
}

}  // namespace fpm::oracle
