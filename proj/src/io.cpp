#include "fpm/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace fpm::io {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

template <class T>
T parse_value(std::string_view text, std::string_view what, std::size_t line_no) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw DataError(fmt::format("line {}: cannot parse {} '{}'", line_no, what, text));
  }
  return value;
}

std::string format_metric(double v, Precision p) {
  return p == Precision::Table ? fmt::format("{:.3f}", v) : fmt::format("{}", v);
}

Itemset parse_labels(std::string_view field, char sep, const ItemCatalog& catalog, std::size_t line_no) {
  std::vector<ItemId> ids;
  if (field.empty()) return Itemset{};
  for (const auto& label : split(field, sep)) {
    auto id = catalog.find(label);
    if (!id) throw DataError(fmt::format("line {}: unknown item '{}'", line_no, label));
    ids.push_back(*id);
  }
  return Itemset(std::move(ids));
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& write) {
  auto partial = path;
  partial += ".partial";
  try {
    {
      std::ofstream out(partial, std::ios::binary | std::ios::trunc);
      if (!out) throw DataError(fmt::format("cannot open '{}' for writing", partial.string()));
      write(out);
      out.flush();
      if (!out) throw DataError(fmt::format("write to '{}' failed", partial.string()));
    }
    std::filesystem::rename(partial, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(partial, ec);
    throw;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string join_labels(const Itemset& itemset, const ItemCatalog& catalog, char sep) {
  std::string out;
  for (ItemId id : itemset) {
    if (!out.empty()) out.push_back(sep);
    out += catalog.label_of(id);
  }
  return out;
}

void write_transactions(std::ostream& out, const TransactionDB& db) {
  for (const auto& t : db.transactions()) {
    fmt::print(out, "{}\t{}\n", t.tid, join_labels(t.items, db.catalog(), ','));
  }
}

TransactionDB read_transactions(std::istream& in, const ItemCatalog& catalog) {
  std::vector<Transaction> transactions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError(fmt::format("line {}: expected 'tid<TAB>items'", line_no));
    }
    transactions.push_back(
        {line.substr(0, tab), parse_labels(std::string_view(line).substr(tab + 1), ',', catalog, line_no)});
  }
  return TransactionDB(catalog, std::move(transactions));
}

void write_catalog(std::ostream& out, const ItemCatalog& catalog) {
  out << "item_id,label,class\n";
  for (const auto& e : catalog.entries()) {
    fmt::print(out, "{},{},{}\n", e.id, e.label, to_string(e.cls));
  }
}

ItemCatalog read_catalog(std::istream& in) {
  ItemCatalog catalog;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line_no == 1) {
      if (line != "item_id,label,class") throw SchemaError("catalog header must be 'item_id,label,class'");
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) throw DataError(fmt::format("line {}: expected 3 catalog fields", line_no));
    const auto id = parse_value<ItemId>(fields[0], "item id", line_no);
    if (id != catalog.size()) {
      throw DataError(fmt::format("line {}: item ids must be dense and ascending (expected {})", line_no,
                                  catalog.size()));
    }
    if (catalog.find(fields[1])) {
      throw DataError(fmt::format("line {}: duplicate label '{}'", line_no, fields[1]));
    }
    catalog.intern(fields[1], parse_item_class(fields[2]));
  }
  if (line_no == 0) throw SchemaError("catalog file is empty");
  return catalog;
}

void write_itemsets(std::ostream& out, const std::vector<FrequentItemset>& itemsets, const ItemCatalog& catalog,
                    std::size_t n, Count minsup_abs) {
  fmt::print(out, "#n={}\tminsup_abs={}\n", n, minsup_abs);
  const auto dn = static_cast<double>(n);
  for (const auto& f : itemsets) {
    fmt::print(out, "{}\t{}\t{}\n", join_labels(f.itemset, catalog, ','), f.support,
               static_cast<double>(f.support) / dn);
  }
}

ItemsetFile read_itemsets(std::istream& in, const ItemCatalog& catalog) {
  ItemsetFile file;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      for (const auto& kv : split(std::string_view(line).substr(1), '\t')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const auto key = kv.substr(0, eq);
        const auto value = std::string_view(kv).substr(eq + 1);
        if (key == "n") {
          file.n = parse_value<std::size_t>(value, "n", line_no);
          header = true;
        } else if (key == "minsup_abs") {
          file.minsup_abs = parse_value<Count>(value, "minsup_abs", line_no);
        }
      }
      continue;
    }
    const auto fields = split(line, '\t');
    if (fields.size() != 3) throw DataError(fmt::format("line {}: expected 3 tab-separated fields", line_no));
    auto items = parse_labels(fields[0], ',', catalog, line_no);
    if (items.empty()) throw DataError(fmt::format("line {}: empty itemset", line_no));
    file.itemsets.push_back({std::move(items), parse_value<Count>(fields[1], "support", line_no)});
  }
  if (!header) throw SchemaError("itemset file lacks the '#n=' header");
  return file;
}

void write_rules(std::ostream& out, const std::vector<AssociationRule>& rules, const ItemCatalog& catalog,
                 Precision precision) {
  out << "antecedent;consequent;support;confidence;lift\n";
  for (const auto& r : rules) {
    fmt::print(out, "{};{};{};{};{}\n", join_labels(r.antecedent, catalog, '|'),
               join_labels(r.consequent, catalog, '|'), format_metric(r.metrics.rsupp, precision),
               format_metric(r.metrics.confidence, precision), format_metric(r.metrics.lift, precision));
  }
}

std::vector<RuleRow> read_rules(std::istream& in) {
  std::vector<RuleRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line_no == 1) {
      if (line != "antecedent;consequent;support;confidence;lift") {
        throw SchemaError("rule table header must be 'antecedent;consequent;support;confidence;lift'");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line, ';');
    if (fields.size() != 5) throw DataError(fmt::format("line {}: expected 5 ';'-separated fields", line_no));
    RuleRow row;
    row.antecedent = split(fields[0], '|');
    row.consequent = split(fields[1], '|');
    row.support = parse_value<double>(fields[2], "support", line_no);
    row.confidence = parse_value<double>(fields[3], "confidence", line_no);
    row.lift = parse_value<double>(fields[4], "lift", line_no);
    rows.push_back(std::move(row));
  }
  if (line_no == 0) throw SchemaError("rule table is empty");
  return rows;
}

void write_binning_report(std::ostream& out, const std::vector<BinAudit>& audit) {
  out << "variable,scheme,expected_classes,realized_classes,status\n";
  for (const auto& a : audit) {
    const std::string status = !a.expected_classes ? "n/a" : (a.mismatch ? "warning" : "ok");
    fmt::print(out, "{},{},{},{},{}\n", a.variable, a.scheme,
               a.expected_classes ? std::to_string(*a.expected_classes) : std::string("-"), a.realized_classes,
               status);
  }
}

void write_bin_edges(std::ostream& out, const std::vector<BinEdges>& edges) {
  out << "variable,bin,lo,hi,label\n";
  for (const auto& e : edges) {
    for (std::size_t b = 0; b < e.bin_count(); ++b) {
      fmt::print(out, "{},{},{},{},{}\n", e.variable, b, e.edges[b], e.edges[b + 1], e.labels[b]);
    }
  }
}

}  // namespace fpm::io
