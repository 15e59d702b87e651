#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fpm/model.hpp"

namespace fpm {

// Binning schemes for continuous variables.
struct FixedWidth {
  double width = 1.0;
  int expected_classes = 1;
};

struct Percentile {
  int n_bins = 20;
};

struct EvenRange {
  int n_bins = 5;
};

// Already categorical (e.g. lithology codes); values pass through as items.
struct Categorical {};

using BinScheme = std::variant<FixedWidth, Percentile, EvenRange, Categorical>;

void validate_scheme(const BinScheme& scheme);
std::string describe_scheme(const BinScheme& scheme);

/// Bin boundaries for one variable.
///
/// Intervals are half-open [lo, hi) except the last one, which is closed.
/// Edges are strictly increasing, except for the single degenerate bin
/// produced from a zero-spread column, where both edges coincide.
struct BinEdges {
  std::string variable;
  std::vector<double> edges;
  std::vector<std::string> labels;

  std::size_t bin_count() const noexcept { return labels.size(); }
  bool degenerate() const noexcept { return edges.size() == 2 && edges[0] == edges[1]; }
};

// "(lo-hi)" with the given number of decimals.
std::string format_bin_label(double lo, double hi, int decimals = 1);

// Renders labels for the edges at one decimal, widening the precision only
// when two bins would otherwise share a label.
std::vector<std::string> render_labels(std::span<const double> edges, int min_decimals = 1);

BinEdges fixed_width_edges(std::span<const double> values, double width, std::string variable = {});
BinEdges percentile_edges(std::span<const double> values, int n_bins, std::string variable = {});
BinEdges even_range_edges(std::span<const double> values, int n_bins, std::string variable = {});

// Dispatches on the scheme; Categorical is rejected.
BinEdges compute_edges(std::span<const double> values, const BinScheme& scheme, std::string variable = {});

std::size_t bin_index(double value, const BinEdges& edges);
const std::string& assign_bin(double value, const BinEdges& edges);

// ---------------------------------------------------------------------------
// Tabular input

enum class ColumnKind { Numeric, Categorical, Presence };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Numeric;
  std::vector<double> numeric;    // Numeric and Presence (0/1)
  std::vector<std::string> text;  // Categorical
};

// Which columns to load and how to read them. Columns present in the file but
// not named here are schema-checked and skipped.
struct TableFormat {
  char delimiter = ',';
  std::string id_column = "idplot";
  std::vector<std::string> numeric_columns;
  std::vector<std::string> categorical_columns;
  std::vector<std::string> presence_columns;
};

class RawTable {
 public:
  std::vector<std::string> plot_ids;
  std::vector<Column> columns;
  std::size_t dropped_missing = 0;
  std::size_t dropped_unparseable = 0;

  std::size_t rows() const noexcept { return plot_ids.size(); }
  std::size_t dropped() const noexcept { return dropped_missing + dropped_unparseable; }
  const Column* find(std::string_view name) const;
  const Column& column(std::string_view name) const;
};

// True when the name follows the `X_YYYYYY` convention with X in {P,S,C,E}.
bool is_valid_column_name(std::string_view name);

RawTable parse_table(std::string_view text, const TableFormat& format);
RawTable load_table(const std::filesystem::path& path, const TableFormat& format);

// ---------------------------------------------------------------------------
// Encoding

struct VariableSpec {
  std::string column;       // e.g. "C_WC0004"
  std::string display;      // item label stem, e.g. "bio4"; defaults to the column suffix
  std::string units;        // appended after the interval, e.g. "°C"
  BinScheme scheme = Categorical{};
};

struct EncodingSpec {
  std::vector<std::string> species_columns;  // e.g. "P_PICABI" -> item "PICABI"
  std::vector<VariableSpec> variables;
};

TableFormat table_format_for(const EncodingSpec& spec, char delimiter = ',',
                             std::string id_column = "idplot");

// Realized vs expected class count for one variable.
struct BinAudit {
  std::string variable;
  std::string scheme;
  std::optional<int> expected_classes;
  std::size_t realized_classes = 0;
  bool mismatch = false;
};

struct EncodingResult {
  TransactionDB db;
  std::vector<BinEdges> edges;  // one per binned variable, in configuration order
  std::vector<BinAudit> audit;  // one per variable, in configuration order
  std::vector<std::string> empty_transactions;
};

std::string species_label(std::string_view column);
std::string display_name(const VariableSpec& var);

EncodingResult encode_transactions(const RawTable& table, const EncodingSpec& spec);

}  // namespace fpm
