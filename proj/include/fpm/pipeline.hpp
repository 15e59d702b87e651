#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fpm/discretize.hpp"
#include "fpm/io.hpp"
#include "fpm/model.hpp"
#include "fpm/rules.hpp"

namespace fpm {

struct PipelineConfig {
  std::filesystem::path input_path;
  char delimiter = ',';
  std::string id_column = "idplot";
  EncodingSpec encoding;

  double minsup = 0.01;
  double gen_min_conf = 0.07;
  double report_min_conf = 0.7;
  std::optional<double> report_min_lift = 1.2;
  std::optional<std::set<ItemClass>> consequent_classes = std::set<ItemClass>{ItemClass::Species};
  std::optional<std::size_t> max_consequent_size = 1;

  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 42;
  unsigned threads = 1;
  io::Precision precision = io::Precision::Table;

  void validate() const;
};

// Parses the JSON configuration. Relative paths resolve against the
// directory holding the configuration file.
PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

// Fixed file names inside the output directory.
namespace files {
inline constexpr const char* kTransactions = "transactions.tsv";
inline constexpr const char* kCatalog = "catalog.csv";
inline constexpr const char* kBinningReport = "binning_report.csv";
inline constexpr const char* kBinEdges = "bin_edges.csv";
inline constexpr const char* kItemsets = "itemsets.tsv";
inline constexpr const char* kRules = "rules.csv";
inline constexpr const char* kScatter = "scatter.csv";
}  // namespace files

std::string graph_file_name(std::string_view consequent);

struct BinSummary {
  std::size_t transactions = 0;
  std::size_t dropped_missing = 0;
  std::size_t dropped_unparseable = 0;
  std::size_t items = 0;
  std::vector<std::string> empty_transactions;
  std::vector<BinAudit> audit;
};

struct MineSummary {
  std::size_t itemsets = 0;
  std::size_t transactions = 0;
  Count minsup_abs = 0;
  std::chrono::duration<double> elapsed{};
};

struct RulesSummary {
  std::size_t all_rules = 0;        // any consequent class, at the generation floor
  std::size_t generated_rules = 0;  // after the consequent-class filter (scatter data)
  std::size_t reported_rules = 0;   // after the report thresholds
};

// Stage 1: table -> transactions.tsv, catalog.csv, binning_report.csv, bin_edges.csv.
BinSummary run_bin(const PipelineConfig& config);

// Stage 2: transactions -> itemsets.tsv. Defaults to the files written by run_bin.
MineSummary run_mine(const PipelineConfig& config, std::optional<std::filesystem::path> transactions = {});

// Stage 3: itemsets -> rules.csv and scatter.csv. Mines first when the
// itemset file does not exist.
RulesSummary run_rules(const PipelineConfig& config, std::optional<std::filesystem::path> itemsets = {});

// Stage 4: rule table -> graph_<consequent>.dot. Returns the path written.
std::filesystem::path run_graph(const PipelineConfig& config, std::string_view consequent,
                                std::optional<std::filesystem::path> rules = {});

// All stages, plus one graph per consequent in the report table.
struct RunSummary {
  BinSummary bin;
  MineSummary mine;
  RulesSummary rules;
  std::vector<std::filesystem::path> graphs;
};
RunSummary run_all(const PipelineConfig& config);

}  // namespace fpm
