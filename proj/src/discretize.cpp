#include "fpm/discretize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

namespace fpm {

namespace {

constexpr std::size_t kMaxBins = 100000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string variable_name(const std::string& variable) {
  return variable.empty() ? std::string("<unnamed>") : variable;
}

void require_values(std::span<const double> values, const std::string& variable) {
  if (values.empty()) {
    throw RangeError(fmt::format("variable {}: no values to bin", variable_name(variable)));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw RangeError(fmt::format("variable {}: non-finite value", variable_name(variable)));
    }
  }
}

// Largest k with k * width <= x, robust to the division rounding up or down.
long long floor_multiple(double x, double width) {
  auto k = static_cast<long long>(std::floor(x / width));
  while (static_cast<double>(k + 1) * width <= x) ++k;
  while (static_cast<double>(k) * width > x) --k;
  return k;
}

BinEdges make_edges(std::vector<double> edges, std::string variable) {
  BinEdges out;
  out.variable = std::move(variable);
  out.labels = render_labels(edges);
  out.edges = std::move(edges);
  return out;
}

BinEdges degenerate_bin(double value, std::string variable) {
  return make_edges({value, value}, std::move(variable));
}

std::string format_edge(double v, int decimals) {
  std::string s = fmt::format("{:.{}f}", v, decimals);
  // -0.0 and small negatives that round to zero print without the sign
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_missing(std::string_view cell) {
  if (cell.empty()) return true;
  const auto l = lower(cell);
  return l == "na" || l == "nan" || l == "null" || l == "none";
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<double> parse_presence(std::string_view cell) {
  const auto l = lower(cell);
  if (l == "true" || l == "yes") return 1.0;
  if (l == "false" || l == "no") return 0.0;
  if (auto v = parse_number(cell); v && (*v == 0.0 || *v == 1.0)) return v;
  return std::nullopt;
}

// Splits one delimited record. Double-quoted fields may contain the delimiter
// and doubled quotes.
std::vector<std::string> split_record(std::string_view line, char delim, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && trim(field).empty()) {
      in_quotes = true;
      quoted = true;
      field.clear();
    } else if (c == delim) {
      fields.emplace_back(quoted ? field : std::string(trim(field)));
      field.clear();
      quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw DataError(fmt::format("line {}: unterminated quoted field", line_no));
  }
  fields.emplace_back(quoted ? field : std::string(trim(field)));
  return fields;
}

std::string normalize_spaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : trim(s)) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

void validate_scheme(const BinScheme& scheme) {
  std::visit(Overloaded{
                 [](const FixedWidth& s) {
                   if (!(s.width > 0.0) || !std::isfinite(s.width)) {
                     throw ConfigError(fmt::format("fixed-width bin width must be > 0, got {}", s.width));
                   }
                   if (s.expected_classes < 1) {
                     throw ConfigError("fixed-width expected_classes must be >= 1");
                   }
                 },
                 [](const Percentile& s) {
                   if (s.n_bins < 2) throw ConfigError("percentile n_bins must be >= 2");
                 },
                 [](const EvenRange& s) {
                   if (s.n_bins < 2) throw ConfigError("even-range n_bins must be >= 2");
                 },
                 [](const Categorical&) {},
             },
             scheme);
}

std::string describe_scheme(const BinScheme& scheme) {
  return std::visit(Overloaded{
                        [](const FixedWidth& s) { return fmt::format("fixed_width(width={})", s.width); },
                        [](const Percentile& s) { return fmt::format("percentile(n_bins={})", s.n_bins); },
                        [](const EvenRange& s) { return fmt::format("even_range(n_bins={})", s.n_bins); },
                        [](const Categorical&) { return std::string("categorical"); },
                    },
                    scheme);
}

std::string format_bin_label(double lo, double hi, int decimals) {
  return fmt::format("({}-{})", format_edge(lo, decimals), format_edge(hi, decimals));
}

std::vector<std::string> render_labels(std::span<const double> edges, int min_decimals) {
  if (edges.size() < 2) return {};
  for (int decimals = min_decimals;; ++decimals) {
    std::vector<std::string> labels;
    labels.reserve(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      labels.push_back(format_bin_label(edges[i], edges[i + 1], decimals));
    }
    const std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() == labels.size() || decimals >= 12) {
      return labels;
    }
  }
}

BinEdges fixed_width_edges(std::span<const double> values, double width, std::string variable) {
  validate_scheme(FixedWidth{width, 1});
  require_values(values, variable);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const long long first = floor_multiple(*lo_it, width);
  const long long last = floor_multiple(*hi_it, width) + 1;
  if (static_cast<std::size_t>(last - first) > kMaxBins) {
    throw RangeError(fmt::format("variable {}: width {} yields more than {} bins", variable_name(variable),
                                 width, kMaxBins));
  }
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(last - first + 1));
  for (long long k = first; k <= last; ++k) {
    edges.push_back(static_cast<double>(k) * width);
  }
  return make_edges(std::move(edges), std::move(variable));
}

BinEdges percentile_edges(std::span<const double> values, int n_bins, std::string variable) {
  validate_scheme(Percentile{n_bins});
  require_values(values, variable);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    return degenerate_bin(sorted.front(), std::move(variable));
  }
  const auto m = sorted.size();
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n_bins) + 1);
  for (int k = 0; k <= n_bins; ++k) {
    double q;
    if (k == n_bins) {
      q = sorted.back();
    } else {
      const double h = static_cast<double>(m - 1) * k / n_bins;
      const auto lo = static_cast<std::size_t>(std::floor(h));
      const double frac = h - static_cast<double>(lo);
      q = lo + 1 < m ? sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]) : sorted[lo];
    }
    if (edges.empty() || q > edges.back()) {
      edges.push_back(q);
    }
  }
  return make_edges(std::move(edges), std::move(variable));
}

BinEdges even_range_edges(std::span<const double> values, int n_bins, std::string variable) {
  validate_scheme(EvenRange{n_bins});
  require_values(values, variable);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (lo == hi) {
    return degenerate_bin(lo, std::move(variable));
  }
  const double step = (hi - lo) / n_bins;
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n_bins) + 1);
  for (int k = 0; k < n_bins; ++k) {
    edges.push_back(lo + step * k);
  }
  edges.push_back(hi);
  return make_edges(std::move(edges), std::move(variable));
}

BinEdges compute_edges(std::span<const double> values, const BinScheme& scheme, std::string variable) {
  return std::visit(
      Overloaded{
          [&](const FixedWidth& s) { return fixed_width_edges(values, s.width, std::move(variable)); },
          [&](const Percentile& s) { return percentile_edges(values, s.n_bins, std::move(variable)); },
          [&](const EvenRange& s) { return even_range_edges(values, s.n_bins, std::move(variable)); },
          [&](const Categorical&) -> BinEdges {
            throw ConfigError(fmt::format("variable {} is categorical and has no bin edges", variable_name(variable)));
          },
      },
      scheme);
}

std::size_t bin_index(double value, const BinEdges& edges) {
  if (edges.edges.size() < 2 || edges.labels.size() + 1 != edges.edges.size()) {
    throw ConsistencyError(fmt::format("variable {}: malformed bin edges", variable_name(edges.variable)));
  }
  const double lo = edges.edges.front();
  const double hi = edges.edges.back();
  if (!(value >= lo && value <= hi)) {
    throw RangeError(fmt::format("variable {}: value {} outside binned range [{}, {}]",
                                 variable_name(edges.variable), value, lo, hi));
  }
  if (value == hi) return edges.labels.size() - 1;
  const auto it = std::upper_bound(edges.edges.begin(), edges.edges.end(), value);
  return static_cast<std::size_t>(it - edges.edges.begin()) - 1;
}

const std::string& assign_bin(double value, const BinEdges& edges) {
  return edges.labels[bin_index(value, edges)];
}

// ---------------------------------------------------------------------------
// Table loading

const Column* RawTable::find(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const Column& RawTable::column(std::string_view name) const {
  if (const auto* c = find(name)) return *c;
  throw SchemaError(fmt::format("variable '{}' is not present in the input table", name));
}

bool is_valid_column_name(std::string_view name) {
  if (name.size() != 8 || name[1] != '_') return false;
  if (name[0] != 'P' && name[0] != 'S' && name[0] != 'C' && name[0] != 'E') return false;
  return std::all_of(name.begin() + 2, name.end(), [](unsigned char c) {
    return std::isupper(c) || std::isdigit(c);
  });
}

RawTable parse_table(std::string_view text, const TableFormat& format) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos <= text.size();) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) {
    throw SchemaError("input table has no header row");
  }

  const auto header = split_record(lines.front(), format.delimiter, 1);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto& name = header[i];
    if (name.empty()) throw SchemaError(fmt::format("header column {} is empty", i + 1));
    if (!index.emplace(name, i).second) {
      throw SchemaError(fmt::format("duplicate header column '{}'", name));
    }
    if (name != format.id_column && !is_valid_column_name(name)) {
      throw SchemaError(fmt::format("header column '{}' does not match X_YYYYYY with X in {{P,S,C,E}}", name));
    }
  }
  if (!index.contains(format.id_column)) {
    throw SchemaError(fmt::format("header lacks the plot id column '{}'", format.id_column));
  }

  struct Wanted {
    std::size_t field;
    ColumnKind kind;
  };
  RawTable table;
  std::vector<Wanted> wanted;
  auto want = [&](const std::vector<std::string>& names, ColumnKind kind) {
    for (const auto& name : names) {
      auto it = index.find(name);
      if (it == index.end()) {
        throw SchemaError(fmt::format("variable '{}' is not present in the input table", name));
      }
      if (table.find(name)) {
        throw SchemaError(fmt::format("variable '{}' requested more than once", name));
      }
      table.columns.push_back(Column{name, kind, {}, {}});
      wanted.push_back({it->second, kind});
    }
  };
  want(format.numeric_columns, ColumnKind::Numeric);
  want(format.categorical_columns, ColumnKind::Categorical);
  want(format.presence_columns, ColumnKind::Presence);

  const std::size_t id_field = index.at(format.id_column);
  std::unordered_set<std::string> seen_ids;
  std::vector<double> numbers(wanted.size());
  std::vector<std::string> texts(wanted.size());

  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    const auto fields = split_record(lines[li], format.delimiter, li + 1);
    if (fields.size() != header.size()) {
      throw DataError(fmt::format("line {}: expected {} fields, found {}", li + 1, header.size(), fields.size()));
    }
    const auto& id = fields[id_field];
    if (id.empty()) {
      ++table.dropped_missing;
      continue;
    }

    bool missing = false;
    bool bad = false;
    for (std::size_t w = 0; w < wanted.size() && !missing && !bad; ++w) {
      const auto& cell = fields[wanted[w].field];
      if (is_missing(cell)) {
        missing = true;
        break;
      }
      switch (wanted[w].kind) {
        case ColumnKind::Numeric:
          if (auto v = parse_number(cell)) numbers[w] = *v; else bad = true;
          break;
        case ColumnKind::Presence:
          if (auto v = parse_presence(cell)) numbers[w] = *v; else bad = true;
          break;
        case ColumnKind::Categorical:
          texts[w] = cell;
          break;
      }
    }
    if (missing) {
      ++table.dropped_missing;
      continue;
    }
    if (bad) {
      ++table.dropped_unparseable;
      continue;
    }
    if (!seen_ids.insert(id).second) {
      throw DataError(fmt::format("line {}: duplicate plot id '{}'", li + 1, id));
    }
    table.plot_ids.push_back(id);
    for (std::size_t w = 0; w < wanted.size(); ++w) {
      auto& col = table.columns[w];
      if (col.kind == ColumnKind::Categorical) {
        col.text.push_back(texts[w]);
      } else {
        col.numeric.push_back(numbers[w]);
      }
    }
  }
  return table;
}

RawTable load_table(const std::filesystem::path& path, const TableFormat& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError(fmt::format("cannot open input table '{}'", path.string()));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_table(buffer.str(), format);
}

// ---------------------------------------------------------------------------
// Encoding

std::string species_label(std::string_view column) {
  return std::string(column.size() > 2 && column[1] == '_' ? column.substr(2) : column);
}

std::string display_name(const VariableSpec& var) {
  return var.display.empty() ? species_label(var.column) : var.display;
}

TableFormat table_format_for(const EncodingSpec& spec, char delimiter, std::string id_column) {
  TableFormat format;
  format.delimiter = delimiter;
  format.id_column = std::move(id_column);
  format.presence_columns = spec.species_columns;
  for (const auto& var : spec.variables) {
    if (std::holds_alternative<Categorical>(var.scheme)) {
      format.categorical_columns.push_back(var.column);
    } else {
      format.numeric_columns.push_back(var.column);
    }
  }
  return format;
}

EncodingResult encode_transactions(const RawTable& table, const EncodingSpec& spec) {
  struct Source {
    const Column* column;
    const VariableSpec* var;  // null for species
    ItemClass cls;
    std::size_t edges_index = 0;
  };

  EncodingResult result;
  std::vector<Source> species;
  std::vector<Source> variables;

  for (const auto& name : spec.species_columns) {
    if (item_class_from_column(name) != ItemClass::Species) {
      throw SchemaError(fmt::format("species column '{}' must carry the P_ prefix", name));
    }
    const auto& col = table.column(name);
    if (col.kind != ColumnKind::Presence) {
      throw SchemaError(fmt::format("species column '{}' was not loaded as presence/absence", name));
    }
    species.push_back({&col, nullptr, ItemClass::Species});
  }

  for (const auto& var : spec.variables) {
    validate_scheme(var.scheme);
    const auto cls = item_class_from_column(var.column);
    if (cls == ItemClass::Species) {
      throw SchemaError(fmt::format("plot-level column '{}' cannot be encoded as a factor", var.column));
    }
    const auto& col = table.column(var.column);
    const bool categorical = std::holds_alternative<Categorical>(var.scheme);
    if (categorical != (col.kind == ColumnKind::Categorical)) {
      throw SchemaError(fmt::format("variable '{}' was loaded with the wrong column kind", var.column));
    }
    Source src{&col, &var, cls};

    BinAudit audit;
    audit.variable = var.column;
    audit.scheme = describe_scheme(var.scheme);
    if (!categorical && table.rows() > 0) {
      src.edges_index = result.edges.size();
      result.edges.push_back(compute_edges(col.numeric, var.scheme, var.column));
      audit.realized_classes = result.edges.back().bin_count();
    } else if (categorical) {
      audit.realized_classes = std::set<std::string>(col.text.begin(), col.text.end()).size();
    }
    if (const auto* fw = std::get_if<FixedWidth>(&var.scheme)) {
      audit.expected_classes = fw->expected_classes;
    } else if (const auto* p = std::get_if<Percentile>(&var.scheme)) {
      audit.expected_classes = p->n_bins;
    } else if (const auto* e = std::get_if<EvenRange>(&var.scheme)) {
      audit.expected_classes = e->n_bins;
    }
    audit.mismatch = audit.expected_classes &&
                     static_cast<std::size_t>(*audit.expected_classes) != audit.realized_classes;
    result.audit.push_back(std::move(audit));
    variables.push_back(src);
  }

  ItemCatalog catalog;
  std::vector<Transaction> transactions;
  transactions.reserve(table.rows());
  for (std::size_t row = 0; row < table.rows(); ++row) {
    std::vector<ItemId> items;
    for (const auto& s : species) {
      if (s.column->numeric[row] != 0.0) {
        items.push_back(catalog.intern(species_label(s.column->name), ItemClass::Species));
      }
    }
    for (const auto& s : variables) {
      std::string label;
      if (s.column->kind == ColumnKind::Categorical) {
        label = normalize_spaces(display_name(*s.var) + " " + s.column->text[row]);
      } else {
        const auto& edges = result.edges[s.edges_index];
        label = display_name(*s.var) + " " + assign_bin(s.column->numeric[row], edges) + s.var->units;
      }
      items.push_back(catalog.intern(label, s.cls));
    }
    if (items.empty()) {
      result.empty_transactions.push_back(table.plot_ids[row]);
    }
    transactions.push_back({table.plot_ids[row], Itemset(std::move(items))});
  }
  result.db = TransactionDB(std::move(catalog), std::move(transactions));
  return result;
}

}  // namespace fpm
