#include "fpm/rules.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace fpm {

SupportIndex::SupportIndex(const std::vector<FrequentItemset>& frequents) {
  map_.reserve(frequents.size());
  for (const auto& f : frequents) {
    map_.emplace(f.itemset, f.support);
  }
}

Count SupportIndex::support(const Itemset& itemset) const {
  if (auto it = map_.find(itemset); it != map_.end()) return it->second;
  std::string ids;
  for (ItemId id : itemset) ids += fmt::format("{}{}", ids.empty() ? "" : ",", id);
  throw ConsistencyError(fmt::format("itemset {{{}}} missing from the frequent-itemset index", ids));
}

Count support_lookup(const Itemset& itemset, const SupportIndex& index) {
  return index.support(itemset);
}

RuleMetrics score(const Itemset& antecedent, const Itemset& consequent, const SupportIndex& index,
                  std::size_t n) {
  if (antecedent.empty() || consequent.empty() || antecedent.intersects(consequent)) {
    throw ConsistencyError("rule sides must be non-empty and disjoint");
  }
  if (n == 0) throw ConsistencyError("cannot score a rule over an empty database");
  const Count both = index.support(antecedent.union_with(consequent));
  const Count lhs = index.support(antecedent);
  const Count rhs = index.support(consequent);
  if (lhs == 0 || rhs == 0) {
    throw ConsistencyError("rule side with zero support");
  }
  const auto dn = static_cast<double>(n);
  RuleMetrics m;
  m.support_abs = both;
  m.rsupp = static_cast<double>(both) / dn;
  m.confidence = static_cast<double>(both) / static_cast<double>(lhs);
  m.lift = (static_cast<double>(both) * dn) / (static_cast<double>(lhs) * static_cast<double>(rhs));
  return m;
}

void RuleFilter::validate() const {
  if (!(min_conf >= 0.0) || std::isnan(min_conf)) {
    throw ConfigError(fmt::format("minimum confidence must be >= 0, got {}", min_conf));
  }
  if (min_lift && (std::isnan(*min_lift) || *min_lift < 0.0)) {
    throw ConfigError("minimum lift must be >= 0");
  }
  if (max_consequent_size && *max_consequent_size == 0) {
    throw ConfigError("maximum consequent size must be >= 1");
  }
}

bool rule_order(const AssociationRule& a, const AssociationRule& b) {
  if (a.metrics.lift != b.metrics.lift) return a.metrics.lift > b.metrics.lift;
  if (a.metrics.confidence != b.metrics.confidence) return a.metrics.confidence > b.metrics.confidence;
  if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
  return a.consequent < b.consequent;
}

void sort_rules(std::vector<AssociationRule>& rules) {
  std::sort(rules.begin(), rules.end(), rule_order);
}

namespace {

bool consequent_allowed(const Itemset& consequent, const RuleFilter& filter, const ItemCatalog* catalog) {
  if (filter.max_consequent_size && consequent.size() > *filter.max_consequent_size) return false;
  if (filter.consequent_classes) {
    if (!catalog) throw ConsistencyError("class filter requires an item catalog");
    for (ItemId id : consequent) {
      if (!filter.consequent_classes->contains(catalog->class_of(id))) return false;
    }
  }
  return true;
}

// Calls visit(indices) for every subset of {0..k-1} of size 1..max_size.
template <class Visit>
void for_each_subset(std::size_t k, std::size_t max_size, std::vector<std::size_t>& pick, std::size_t start,
                     Visit&& visit) {
  for (std::size_t i = start; i < k; ++i) {
    pick.push_back(i);
    visit(pick);
    if (pick.size() < max_size) for_each_subset(k, max_size, pick, i + 1, visit);
    pick.pop_back();
  }
}

}  // namespace

bool passes(const AssociationRule& rule, const RuleFilter& filter, const ItemCatalog* catalog) {
  if (rule.metrics.confidence < filter.min_conf) return false;
  if (filter.min_lift && rule.metrics.lift < *filter.min_lift) return false;
  return consequent_allowed(rule.consequent, filter, catalog);
}

std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequents, std::size_t n,
                                            const RuleFilter& filter, const ItemCatalog* catalog) {
  filter.validate();
  const SupportIndex index(frequents);
  std::vector<AssociationRule> rules;
  std::vector<std::size_t> pick;
  std::vector<ItemId> lhs;
  std::vector<ItemId> rhs;

  for (const auto& z : frequents) {
    const auto k = z.itemset.size();
    if (k < 2) continue;
    // Consequents are proper non-empty subsets of z.
    const std::size_t max_rhs = std::min(k - 1, filter.max_consequent_size.value_or(k - 1));
    for_each_subset(k, max_rhs, pick, 0, [&](const std::vector<std::size_t>& chosen) {
      rhs.clear();
      lhs.clear();
      std::size_t c = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (c < chosen.size() && chosen[c] == i) {
          rhs.push_back(z.itemset[i]);
          ++c;
        } else {
          lhs.push_back(z.itemset[i]);
        }
      }
      auto consequent = Itemset::from_sorted_unique(rhs);
      if (!consequent_allowed(consequent, filter, catalog)) return;
      auto antecedent = Itemset::from_sorted_unique(lhs);
      const Count lhs_support = index.support(antecedent);
      const double confidence = static_cast<double>(z.support) / static_cast<double>(lhs_support);
      if (confidence < filter.min_conf) return;
      AssociationRule rule{std::move(antecedent), std::move(consequent), {}};
      rule.metrics = score(rule.antecedent, rule.consequent, index, n);
      if (filter.min_lift && rule.metrics.lift < *filter.min_lift) return;
      rules.push_back(std::move(rule));
    });
  }
  sort_rules(rules);
  return rules;
}

std::vector<AssociationRule> filter_rules(const std::vector<AssociationRule>& rules, const RuleFilter& filter,
                                          const ItemCatalog* catalog) {
  filter.validate();
  std::vector<AssociationRule> out;
  for (const auto& r : rules) {
    if (passes(r, filter, catalog)) out.push_back(r);
  }
  return out;
}

}  // namespace fpm
