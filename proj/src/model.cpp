#include "fpm/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

namespace fpm {

std::string_view to_string(ItemClass cls) {
  switch (cls) {
    case ItemClass::Species:
      return "species";
    case ItemClass::Climate:
      return "climate";
    case ItemClass::Soil:
      return "soil";
    case ItemClass::EarthObs:
      return "earth_obs";
  }
  return "unknown";
}

ItemClass parse_item_class(std::string_view text) {
  if (text == "species") return ItemClass::Species;
  if (text == "climate") return ItemClass::Climate;
  if (text == "soil") return ItemClass::Soil;
  if (text == "earth_obs") return ItemClass::EarthObs;
  throw SchemaError(fmt::format("unknown item class '{}'", text));
}

ItemClass item_class_from_column(std::string_view column) {
  if (column.size() < 3 || column[1] != '_') {
    throw SchemaError(fmt::format("column '{}' does not follow the X_YYYYYY naming scheme", column));
  }
  switch (column[0]) {
    case 'P':
      return ItemClass::Species;
    case 'C':
      return ItemClass::Climate;
    case 'S':
      return ItemClass::Soil;
    case 'E':
      return ItemClass::EarthObs;
    default:
      throw SchemaError(fmt::format("column '{}' has unknown category prefix '{}'", column, column[0]));
  }
}

// ---------------------------------------------------------------------------
// ItemCatalog

ItemId ItemCatalog::intern(std::string_view label, ItemClass cls) {
  if (label.empty()) {
    throw ConsistencyError("item label must not be empty");
  }
  if (label.find_first_of(",;|\t\n\r") != std::string_view::npos) {
    throw SchemaError(fmt::format("item label '{}' contains a reserved separator character", label));
  }
  std::string key(label);
  if (auto it = by_label_.find(key); it != by_label_.end()) {
    const auto& entry = entries_[it->second];
    if (entry.cls != cls) {
      throw ConsistencyError(fmt::format("item '{}' already registered as {} (requested {})", label,
                                         to_string(entry.cls), to_string(cls)));
    }
    return entry.id;
  }
  const auto id = static_cast<ItemId>(entries_.size());
  entries_.push_back({id, key, cls});
  by_label_.emplace(std::move(key), id);
  return id;
}

std::optional<ItemId> ItemCatalog::find(std::string_view label) const {
  if (auto it = by_label_.find(std::string(label)); it != by_label_.end()) {
    return it->second;
  }
  return std::nullopt;
}

ItemId ItemCatalog::id_of(std::string_view label) const {
  if (auto id = find(label)) {
    return *id;
  }
  throw DataError(fmt::format("unknown item '{}'", label));
}

const std::string& ItemCatalog::label_of(ItemId id) const {
  if (id >= entries_.size()) {
    throw ConsistencyError(fmt::format("item id {} out of range", id));
  }
  return entries_[id].label;
}

ItemClass ItemCatalog::class_of(ItemId id) const {
  if (id >= entries_.size()) {
    throw ConsistencyError(fmt::format("item id {} out of range", id));
  }
  return entries_[id].cls;
}

// ---------------------------------------------------------------------------
// Itemset

Itemset::Itemset(std::vector<ItemId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

Itemset::Itemset(std::initializer_list<ItemId> items) : Itemset(std::vector<ItemId>(items)) {}

Itemset Itemset::from_sorted_unique(std::vector<ItemId> items) {
  Itemset s;
  s.items_ = std::move(items);
  return s;
}

bool Itemset::contains(ItemId item) const {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Itemset::is_subset_of(const Itemset& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

bool Itemset::intersects(const Itemset& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

Itemset Itemset::union_with(const Itemset& other) const {
  std::vector<ItemId> out;
  out.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                 std::back_inserter(out));
  return from_sorted_unique(std::move(out));
}

Itemset Itemset::minus(const Itemset& other) const {
  std::vector<ItemId> out;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                      std::back_inserter(out));
  return from_sorted_unique(std::move(out));
}

std::size_t ItemsetHash::operator()(const Itemset& s) const noexcept {
  // FNV-1a over the ids.
  std::uint64_t h = 1469598103934665603ull;
  for (ItemId id : s) {
    h ^= id;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

bool canonical_less(const Itemset& a, const Itemset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void sort_canonical(std::vector<FrequentItemset>& itemsets) {
  std::sort(itemsets.begin(), itemsets.end(), [](const FrequentItemset& a, const FrequentItemset& b) {
    return canonical_less(a.itemset, b.itemset);
  });
}

// ---------------------------------------------------------------------------
// TransactionDB

TransactionDB::TransactionDB(ItemCatalog catalog, std::vector<Transaction> transactions)
    : catalog_(std::move(catalog)), transactions_(std::move(transactions)) {
  std::unordered_set<std::string> seen;
  seen.reserve(transactions_.size());
  for (const auto& t : transactions_) {
    if (!seen.insert(t.tid).second) {
      throw DataError(fmt::format("duplicate transaction id '{}'", t.tid));
    }
    if (!t.items.empty() && t.items.items().back() >= catalog_.size()) {
      throw ConsistencyError(
          fmt::format("transaction '{}' references item id {} outside the catalog", t.tid,
                      t.items.items().back()));
    }
  }
}

Count TransactionDB::count_containing(const Itemset& itemset) const {
  Count n = 0;
  for (const auto& t : transactions_) {
    if (itemset.is_subset_of(t.items)) ++n;
  }
  return n;
}

TransactionDB make_db(const std::vector<std::vector<ItemId>>& rows, std::size_t num_items) {
  ItemCatalog catalog;
  for (std::size_t i = 0; i < num_items; ++i) {
    catalog.intern(std::to_string(i), ItemClass::Species);
  }
  std::vector<Transaction> transactions;
  transactions.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    transactions.push_back({std::to_string(r), Itemset(rows[r])});
  }
  return TransactionDB(std::move(catalog), std::move(transactions));
}

// ---------------------------------------------------------------------------

void check_min_support(double minsup_rel) {
  if (!(minsup_rel > 0.0 && minsup_rel <= 1.0)) {
    throw ConfigError(fmt::format("minimum support must lie in (0, 1], got {}", minsup_rel));
  }
}

Count min_support_count(double minsup_rel, std::size_t n) {
  check_min_support(minsup_rel);
  if (n == 0) return 1;
  const double scaled = minsup_rel * static_cast<double>(n);
  const double nearest = std::round(scaled);
  double count = std::ceil(scaled);
  if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, scaled)) {
    count = nearest;
  }
  return std::max<Count>(1, static_cast<Count>(count));
}

}  // namespace fpm
