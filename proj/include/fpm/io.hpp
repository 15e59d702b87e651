#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fpm/discretize.hpp"
#include "fpm/model.hpp"

namespace fpm::io {

// Writes through `<path>.partial` and renames on success. On failure the
// partial file is removed and the exception propagates.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& write);

std::string read_file(const std::filesystem::path& path);

std::string join_labels(const Itemset& itemset, const ItemCatalog& catalog, char sep);

// Transactions: `tid<TAB>label1,label2,...`, labels in catalog order.
void write_transactions(std::ostream& out, const TransactionDB& db);
TransactionDB read_transactions(std::istream& in, const ItemCatalog& catalog);

// Catalog sidecar with header `item_id,label,class`.
void write_catalog(std::ostream& out, const ItemCatalog& catalog);
ItemCatalog read_catalog(std::istream& in);

// Frequent itemsets: a `#n=<n><TAB>minsup_abs=<m>` header, then
// `label1,label2,...<TAB>support_abs<TAB>rsupp` per itemset.
struct ItemsetFile {
  std::size_t n = 0;
  Count minsup_abs = 1;
  std::vector<FrequentItemset> itemsets;
};

void write_itemsets(std::ostream& out, const std::vector<FrequentItemset>& itemsets, const ItemCatalog& catalog,
                    std::size_t n, Count minsup_abs);
ItemsetFile read_itemsets(std::istream& in, const ItemCatalog& catalog);

// Rule table: header `antecedent;consequent;support;confidence;lift`,
// itemsets `|`-joined, metrics at 3 decimals or shortest round-trip form.
enum class Precision { Table, Full };

void write_rules(std::ostream& out, const std::vector<AssociationRule>& rules, const ItemCatalog& catalog,
                 Precision precision = Precision::Table);

// Label-level view of a rule table row, as read back from disk.
struct RuleRow {
  std::vector<std::string> antecedent;
  std::vector<std::string> consequent;
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;
};

std::vector<RuleRow> read_rules(std::istream& in);

// Binning report: realized vs expected classes per variable.
void write_binning_report(std::ostream& out, const std::vector<BinAudit>& audit);
// One row per bin: `variable,bin,lo,hi,label`.
void write_bin_edges(std::ostream& out, const std::vector<BinEdges>& edges);

}  // namespace fpm::io
