#include "fpm/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "fpm/fpgrowth.hpp"
#include "fpm/graph.hpp"

namespace fpm {

namespace {

using json = nlohmann::ordered_json;  // variables keep file order

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
    }
  }
}

BinScheme parse_scheme(const json& j, const std::string& column) {
  const auto where = fmt::format("variables.{}.scheme", column);
  if (!j.is_object() || !j.contains("type")) {
    throw ConfigError(fmt::format("{}: expected an object with a 'type'", where));
  }
  const auto type = j.at("type").get<std::string>();
  BinScheme scheme;
  if (type == "fixed_width") {
    reject_unknown_keys(j, {"type", "width", "expected_classes"}, where);
    scheme = FixedWidth{j.at("width").get<double>(), j.value("expected_classes", 1)};
  } else if (type == "percentile") {
    reject_unknown_keys(j, {"type", "n_bins"}, where);
    scheme = Percentile{j.at("n_bins").get<int>()};
  } else if (type == "even_range") {
    reject_unknown_keys(j, {"type", "n_bins"}, where);
    scheme = EvenRange{j.at("n_bins").get<int>()};
  } else if (type == "categorical") {
    reject_unknown_keys(j, {"type"}, where);
    scheme = Categorical{};
  } else {
    throw ConfigError(fmt::format("{}: unknown scheme type '{}'", where, type));
  }
  validate_scheme(scheme);
  return scheme;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : (base / path).lexically_normal();
}

std::filesystem::path out_path(const PipelineConfig& config, const char* name) {
  return config.output_dir / name;
}

ItemCatalog load_catalog(const PipelineConfig& config) {
  std::ifstream in(out_path(config, files::kCatalog));
  if (!in) {
    throw DataError(fmt::format("cannot open catalog '{}'", out_path(config, files::kCatalog).string()));
  }
  return io::read_catalog(in);
}

TransactionDB load_transactions(const std::filesystem::path& path, const ItemCatalog& catalog) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open transaction file '{}'", path.string()));
  return io::read_transactions(in, catalog);
}

void ensure_output_dir(const PipelineConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw DataError(fmt::format("cannot create output directory '{}': {}", config.output_dir.string(),
                                ec.message()));
  }
}

}  // namespace

void PipelineConfig::validate() const {
  check_min_support(minsup);
  if (!(gen_min_conf >= 0.0 && gen_min_conf <= 1.0)) {
    throw ConfigError(fmt::format("gen_min_conf must lie in [0, 1], got {}", gen_min_conf));
  }
  if (!(report_min_conf >= 0.0) || std::isnan(report_min_conf)) {
    throw ConfigError(fmt::format("report_min_conf must be >= 0, got {}", report_min_conf));
  }
  if (report_min_lift && !(*report_min_lift >= 0.0)) {
    throw ConfigError("report_min_lift must be >= 0");
  }
  if (max_consequent_size && *max_consequent_size == 0) {
    throw ConfigError("max_consequent_size must be >= 1");
  }
  if (output_dir.empty()) throw ConfigError("output directory must not be empty");
  if (id_column.empty()) throw ConfigError("id_column must not be empty");
  if (threads == 0) throw ConfigError("threads must be >= 1");

  std::unordered_set<std::string> columns;
  std::unordered_set<std::string> stems;
  for (const auto& s : encoding.species_columns) {
    if (!columns.insert(s).second) throw ConfigError(fmt::format("column '{}' listed twice", s));
    if (!is_valid_column_name(s) || s[0] != 'P') {
      throw ConfigError(fmt::format("species column '{}' must follow P_YYYYYY", s));
    }
  }
  for (const auto& v : encoding.variables) {
    if (!columns.insert(v.column).second) throw ConfigError(fmt::format("column '{}' listed twice", v.column));
    if (!is_valid_column_name(v.column) || v.column[0] == 'P') {
      throw ConfigError(fmt::format("variable '{}' must follow X_YYYYYY with X in {{S,C,E}}", v.column));
    }
    if (!stems.insert(display_name(v)).second) {
      throw ConfigError(fmt::format("variable label '{}' is used twice", display_name(v)));
    }
    validate_scheme(v.scheme);
  }
}

PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("configuration is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");

  PipelineConfig c;
  try {
    reject_unknown_keys(j,
                        {"input", "delimiter", "id_column", "species_columns", "variables", "minsup", "gen_min_conf",
                         "report_min_conf", "report_min_lift", "consequent_classes", "max_consequent_size",
                         "output_dir", "seed", "threads", "full_precision"},
                        "config");
    if (j.contains("input")) c.input_path = resolve(base_dir, j.at("input").get<std::string>());
    if (j.contains("delimiter")) {
      const auto d = j.at("delimiter").get<std::string>();
      if (d.size() != 1) throw ConfigError("delimiter must be a single character");
      c.delimiter = d[0];
    }
    c.id_column = j.value("id_column", c.id_column);
    c.encoding.species_columns = j.value("species_columns", std::vector<std::string>{});

    if (j.contains("variables")) {
      for (const auto& [column, spec] : j.at("variables").items()) {
        reject_unknown_keys(spec, {"label", "units", "scheme"}, fmt::format("variables.{}", column));
        VariableSpec v;
        v.column = column;
        v.display = spec.value("label", std::string{});
        v.units = spec.value("units", std::string{});
        if (!spec.contains("scheme")) throw ConfigError(fmt::format("variables.{}: missing 'scheme'", column));
        v.scheme = parse_scheme(spec.at("scheme"), column);
        c.encoding.variables.push_back(std::move(v));
      }
    }

    c.minsup = j.value("minsup", c.minsup);
    c.gen_min_conf = j.value("gen_min_conf", c.gen_min_conf);
    c.report_min_conf = j.value("report_min_conf", c.report_min_conf);
    if (j.contains("report_min_lift")) {
      const auto& l = j.at("report_min_lift");
      c.report_min_lift = l.is_null() ? std::nullopt : std::optional<double>(l.get<double>());
    }
    if (j.contains("consequent_classes")) {
      const auto& cc = j.at("consequent_classes");
      if (cc.is_string() && cc.get<std::string>() == "any") {
        c.consequent_classes.reset();
      } else {
        std::set<ItemClass> classes;
        for (const auto& name : cc.get<std::vector<std::string>>()) {
          try {
            classes.insert(parse_item_class(name));
          } catch (const SchemaError& e) {
            throw ConfigError(e.what());
          }
        }
        c.consequent_classes = classes;
      }
    }
    if (j.contains("max_consequent_size")) {
      const auto& m = j.at("max_consequent_size");
      c.max_consequent_size = m.is_null() ? std::nullopt : std::optional<std::size_t>(m.get<std::size_t>());
    }
    if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    if (j.value("full_precision", false)) c.precision = io::Precision::Full;
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("configuration has a field of the wrong type: {}", e.what()));
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open configuration '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

std::string graph_file_name(std::string_view consequent) {
  std::string name = "graph_";
  for (unsigned char ch : consequent) {
    name.push_back(std::isalnum(ch) ? static_cast<char>(ch) : '_');
  }
  return name + ".dot";
}

BinSummary run_bin(const PipelineConfig& config) {
  config.validate();
  if (config.input_path.empty()) throw ConfigError("no input table given");
  const auto format = table_format_for(config.encoding, config.delimiter, config.id_column);
  const auto table = load_table(config.input_path, format);
  auto encoded = encode_transactions(table, config.encoding);

  ensure_output_dir(config);
  io::write_file_atomic(out_path(config, files::kTransactions),
                        [&](std::ostream& out) { io::write_transactions(out, encoded.db); });
  io::write_file_atomic(out_path(config, files::kCatalog),
                        [&](std::ostream& out) { io::write_catalog(out, encoded.db.catalog()); });
  io::write_file_atomic(out_path(config, files::kBinningReport),
                        [&](std::ostream& out) { io::write_binning_report(out, encoded.audit); });
  io::write_file_atomic(out_path(config, files::kBinEdges),
                        [&](std::ostream& out) { io::write_bin_edges(out, encoded.edges); });

  BinSummary s;
  s.transactions = encoded.db.size();
  s.dropped_missing = table.dropped_missing;
  s.dropped_unparseable = table.dropped_unparseable;
  s.items = encoded.db.catalog().size();
  s.empty_transactions = std::move(encoded.empty_transactions);
  s.audit = std::move(encoded.audit);
  return s;
}

MineSummary run_mine(const PipelineConfig& config, std::optional<std::filesystem::path> transactions) {
  config.validate();
  const auto catalog = load_catalog(config);
  const auto db = load_transactions(transactions.value_or(out_path(config, files::kTransactions)), catalog);

  const auto start = std::chrono::steady_clock::now();
  const auto flist = build_flist(db, config.minsup);
  const auto itemsets = mine(build_fptree(db, flist), MineOptions{config.threads, true});
  MineSummary s;
  s.elapsed = std::chrono::steady_clock::now() - start;
  s.itemsets = itemsets.size();
  s.transactions = db.size();
  s.minsup_abs = flist.minsup_abs;

  ensure_output_dir(config);
  io::write_file_atomic(out_path(config, files::kItemsets), [&](std::ostream& out) {
    io::write_itemsets(out, itemsets, catalog, db.size(), flist.minsup_abs);
  });
  return s;
}

RulesSummary run_rules(const PipelineConfig& config, std::optional<std::filesystem::path> itemsets) {
  config.validate();
  const auto path = itemsets.value_or(out_path(config, files::kItemsets));
  if (!itemsets && !std::filesystem::exists(path)) {
    run_mine(config);
  }
  const auto catalog = load_catalog(config);
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open itemset file '{}'", path.string()));
  const auto file = io::read_itemsets(in, catalog);

  RuleFilter generation;
  generation.min_conf = config.gen_min_conf;
  generation.max_consequent_size = config.max_consequent_size;
  generation.consequent_classes.reset();
  auto all = generate_rules(file.itemsets, file.n, generation, &catalog);

  RulesSummary s;
  s.all_rules = all.size();
  generation.consequent_classes = config.consequent_classes;
  const auto generated = filter_rules(all, generation, &catalog);
  s.generated_rules = generated.size();

  RuleFilter report = generation;
  report.min_conf = config.report_min_conf;
  report.min_lift = config.report_min_lift;
  const auto reported = filter_rules(generated, report, &catalog);
  s.reported_rules = reported.size();

  ensure_output_dir(config);
  io::write_file_atomic(out_path(config, files::kScatter), [&](std::ostream& out) {
    io::write_rules(out, generated, catalog, io::Precision::Full);
  });
  io::write_file_atomic(out_path(config, files::kRules), [&](std::ostream& out) {
    io::write_rules(out, reported, catalog, config.precision);
  });
  return s;
}

std::filesystem::path run_graph(const PipelineConfig& config, std::string_view consequent,
                                std::optional<std::filesystem::path> rules) {
  const auto path = rules.value_or(out_path(config, files::kRules));
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open rule table '{}'", path.string()));
  const auto rows = io::read_rules(in);
  GraphStyle style;
  style.min_conf = config.report_min_conf;
  const auto dot = render_rule_graph(rows, consequent, style);

  ensure_output_dir(config);
  const auto target = config.output_dir / graph_file_name(consequent);
  io::write_file_atomic(target, [&](std::ostream& out) { out << dot; });
  return target;
}

RunSummary run_all(const PipelineConfig& config) {
  RunSummary s;
  s.bin = run_bin(config);
  s.mine = run_mine(config);
  s.rules = run_rules(config);
  std::ifstream in(out_path(config, files::kRules));
  for (const auto& consequent : consequent_labels(io::read_rules(in))) {
    s.graphs.push_back(run_graph(config, consequent));
  }
  return s;
}

}  // namespace fpm
