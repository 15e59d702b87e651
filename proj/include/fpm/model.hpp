#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fpm {

using ItemId = std::uint32_t;
using Count = std::uint64_t;

// Error hierarchy. The CLI maps ConfigError to exit code 1 and DataError
// (and its subclasses) to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

class RangeError : public DataError {
 public:
  using DataError::DataError;
};

// Raised when an index lookup fails for an itemset that must exist, or a
// catalog is asked to relabel an item. Signals a bug upstream.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

enum class ItemClass : std::uint8_t { Species, Climate, Soil, EarthObs };

std::string_view to_string(ItemClass cls);
ItemClass parse_item_class(std::string_view text);

// Derives the class from a column name following the `X_YYYYYY` convention.
// P_ columns are species columns; any other plot-level column is not an item.
ItemClass item_class_from_column(std::string_view column);

/// Bidirectional map between item labels and dense ids 0..n-1.
///
/// Ids are handed out in first-seen order. Labels may not contain the
/// separator characters used by the exported file formats (`,;|`, tab and
/// newline).
class ItemCatalog {
 public:
  struct Entry {
    ItemId id;
    std::string label;
    ItemClass cls;
  };

  ItemId intern(std::string_view label, ItemClass cls);

  std::optional<ItemId> find(std::string_view label) const;
  ItemId id_of(std::string_view label) const;
  const std::string& label_of(ItemId id) const;
  ItemClass class_of(ItemId id) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  friend bool operator==(const ItemCatalog& a, const ItemCatalog& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, ItemId> by_label_;
};

inline bool operator==(const ItemCatalog::Entry& a, const ItemCatalog::Entry& b) {
  return a.id == b.id && a.label == b.label && a.cls == b.cls;
}

/// Strictly ascending list of item ids.
class Itemset {
 public:
  Itemset() = default;
  // Sorts and deduplicates.
  explicit Itemset(std::vector<ItemId> items);
  Itemset(std::initializer_list<ItemId> items);

  static Itemset from_sorted_unique(std::vector<ItemId> items);

  std::span<const ItemId> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  ItemId operator[](std::size_t i) const { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool contains(ItemId item) const;
  bool is_subset_of(const Itemset& other) const;
  bool intersects(const Itemset& other) const;
  Itemset union_with(const Itemset& other) const;
  Itemset minus(const Itemset& other) const;

  friend bool operator==(const Itemset&, const Itemset&) = default;
  friend auto operator<=>(const Itemset& a, const Itemset& b) { return a.items_ <=> b.items_; }

 private:
  std::vector<ItemId> items_;
};

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept;
};

// Canonical order: size ascending, then lexicographic by item id.
bool canonical_less(const Itemset& a, const Itemset& b);

struct Transaction {
  std::string tid;
  Itemset items;
};

/// Immutable transaction database. Validates unique tids and that every item
/// id is known to the catalog.
class TransactionDB {
 public:
  TransactionDB() = default;
  TransactionDB(ItemCatalog catalog, std::vector<Transaction> transactions);

  const ItemCatalog& catalog() const noexcept { return catalog_; }
  const std::vector<Transaction>& transactions() const noexcept { return transactions_; }
  std::size_t size() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }

  // Absolute support by a full scan.
  Count count_containing(const Itemset& itemset) const;

 private:
  ItemCatalog catalog_;
  std::vector<Transaction> transactions_;
};

// Builds a DB with catalog labels "0".."k-1" (all Species) from raw id lists;
// tids are the row indices. Used by tests, verification and benchmarks.
TransactionDB make_db(const std::vector<std::vector<ItemId>>& rows, std::size_t num_items);

struct FrequentItemset {
  Itemset itemset;
  Count support = 0;

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

void sort_canonical(std::vector<FrequentItemset>& itemsets);

struct RuleMetrics {
  Count support_abs = 0;
  double rsupp = 0.0;
  double confidence = 0.0;
  double lift = 0.0;
};

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;
  RuleMetrics metrics;
};

// ceil(minsup_rel * n) with a relative tolerance so that products such as
// 0.07 * 100 are not pushed to the next integer by rounding error. Never
// below 1 for a non-empty database.
Count min_support_count(double minsup_rel, std::size_t n);

// Validates 0 < minsup_rel <= 1.
void check_min_support(double minsup_rel);

}  // namespace fpm
