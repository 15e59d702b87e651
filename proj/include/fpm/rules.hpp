#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "fpm/model.hpp"

namespace fpm {

/// Exact supports of mined itemsets, keyed by itemset.
class SupportIndex {
 public:
  SupportIndex() = default;
  explicit SupportIndex(const std::vector<FrequentItemset>& frequents);

  // Throws ConsistencyError for an itemset that was not mined.
  Count support(const Itemset& itemset) const;
  bool contains(const Itemset& itemset) const { return map_.contains(itemset); }
  std::size_t size() const noexcept { return map_.size(); }

 private:
  std::unordered_map<Itemset, Count, ItemsetHash> map_;
};

Count support_lookup(const Itemset& itemset, const SupportIndex& index);

// Metrics for antecedent -> consequent from exact counts. Lift is formed as
// supp(XY) * n / (supp(X) * supp(Y)) so that it is symmetric in X and Y.
RuleMetrics score(const Itemset& antecedent, const Itemset& consequent, const SupportIndex& index,
                  std::size_t n);

struct RuleFilter {
  double min_conf = 0.0;
  std::optional<double> min_lift;
  std::optional<std::set<ItemClass>> consequent_classes;
  std::optional<std::size_t> max_consequent_size = 1;  // nullopt: unbounded

  void validate() const;
};

// Lift desc, confidence desc, antecedent lexicographic, consequent lexicographic.
bool rule_order(const AssociationRule& a, const AssociationRule& b);
void sort_rules(std::vector<AssociationRule>& rules);

// Rules from a downward-closed set of frequent itemsets. The catalog is only
// consulted when the filter restricts consequent classes.
std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequents, std::size_t n,
                                            const RuleFilter& filter, const ItemCatalog* catalog = nullptr);

// Applies confidence / lift / class / size thresholds to existing rules,
// keeping their order.
std::vector<AssociationRule> filter_rules(const std::vector<AssociationRule>& rules, const RuleFilter& filter,
                                          const ItemCatalog* catalog = nullptr);

bool passes(const AssociationRule& rule, const RuleFilter& filter, const ItemCatalog* catalog);

}  // namespace fpm
