// fpm: discretize a plot table, mine frequent itemsets with FP-Growth, derive
// association rules and export rule tables / rule graphs.
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 data error,
// 3 verification failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fpm/fpgrowth.hpp"
#include "fpm/pipeline.hpp"
#include "fpm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerify = 3;

struct Overrides {
  std::string config;
  std::string input;
  std::string out;
  std::optional<double> minsup;
  std::optional<double> gen_min_conf;
  std::optional<double> min_conf;
  std::optional<double> min_lift;
  std::string consequent_class;
  std::optional<std::size_t> max_consequent;
  std::optional<std::uint64_t> seed;
  std::string threads;
  bool full_precision = false;
};

unsigned parse_threads(const std::string& text) {
  if (text.empty()) return 0;
  if (text == "auto") return std::max(1u, std::thread::hardware_concurrency());
  try {
    const auto n = std::stoul(text);
    if (n == 0) throw fpm::ConfigError("--threads must be >= 1 or 'auto'");
    return static_cast<unsigned>(n);
  } catch (const std::logic_error&) {
    throw fpm::ConfigError(fmt::format("--threads expects a number or 'auto', got '{}'", text));
  }
}

void add_common(CLI::App* cmd, Overrides& o, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", o.config, "Pipeline configuration (JSON)");
  if (needs_config) opt->required();
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--minsup", o.minsup, "Minimum relative support");
  cmd->add_option("--gen-min-conf", o.gen_min_conf, "Confidence floor applied at rule generation");
  cmd->add_option("--min-conf", o.min_conf, "Confidence threshold of the reported rule table");
  cmd->add_option("--min-lift", o.min_lift, "Lift threshold of the reported rule table");
  cmd->add_option("--consequent-class", o.consequent_class, "Consequent item class: species|any")
      ->check(CLI::IsMember({"species", "any"}));
  cmd->add_option("--max-consequent", o.max_consequent, "Maximum consequent size")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--threads", o.threads, "Mining threads (n or auto)");
  cmd->add_flag("--full-precision", o.full_precision, "Write rule metrics at full precision");
}

fpm::PipelineConfig make_config(const Overrides& o) {
  fpm::PipelineConfig c = fpm::load_config(o.config);
  if (!o.out.empty()) c.output_dir = o.out;
  if (o.minsup) c.minsup = *o.minsup;
  if (o.gen_min_conf) c.gen_min_conf = *o.gen_min_conf;
  if (o.min_conf) c.report_min_conf = *o.min_conf;
  if (o.min_lift) c.report_min_lift = *o.min_lift;
  if (o.consequent_class == "any") c.consequent_classes.reset();
  if (o.consequent_class == "species") c.consequent_classes = std::set<fpm::ItemClass>{fpm::ItemClass::Species};
  if (o.max_consequent) c.max_consequent_size = *o.max_consequent;
  if (o.seed) c.seed = *o.seed;
  if (const auto t = parse_threads(o.threads)) c.threads = t;
  if (o.full_precision) c.precision = fpm::io::Precision::Full;
  c.validate();
  return c;
}

std::optional<std::filesystem::path> input_path(const Overrides& o) {
  if (o.input.empty()) return std::nullopt;
  return std::filesystem::path(o.input);
}

void print_bin(const fpm::BinSummary& s) {
  fmt::print("bin: {} transactions, {} items, dropped {} (missing {}, unparseable {})\n", s.transactions, s.items,
             s.dropped_missing + s.dropped_unparseable, s.dropped_missing, s.dropped_unparseable);
  for (const auto& a : s.audit) {
    if (a.mismatch) {
      fmt::print(std::cerr, "warning: {} realized {} classes, expected {}\n", a.variable, a.realized_classes,
                 *a.expected_classes);
    }
  }
  if (!s.empty_transactions.empty()) {
    fmt::print(std::cerr, "warning: {} empty transactions (first: {})\n", s.empty_transactions.size(),
               s.empty_transactions.front());
  }
}

void print_mine(const fpm::MineSummary& s) {
  fmt::print("mine: {} itemsets, minsup_abs {} over {} transactions, {:.3f} s\n", s.itemsets, s.minsup_abs,
             s.transactions, s.elapsed.count());
}

void print_rules(const fpm::RulesSummary& s) {
  fmt::print("rules: {} total, {} after consequent filter, {} reported\n", s.all_rules, s.generated_rules,
             s.reported_rules);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequent itemset and association rule mining for plot x variable tables"};
  app.require_subcommand(1);

  Overrides o;
  std::string consequent;

  auto* bin = app.add_subcommand("bin", "Discretize and one-hot encode the input table");
  add_common(bin, o);
  bin->add_option("--input", o.input, "Input table (overrides the configuration)");

  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent itemsets with FP-Growth");
  add_common(mine_cmd, o);
  mine_cmd->add_option("--input", o.input, "Transaction file (default: <out>/transactions.tsv)");

  auto* rules = app.add_subcommand("rules", "Generate, score and filter association rules");
  add_common(rules, o);
  rules->add_option("--input", o.input, "Itemset file (default: <out>/itemsets.tsv, mined if absent)");

  auto* graph = app.add_subcommand("graph", "Render the rules of one consequent as a DOT graph");
  add_common(graph, o);
  graph->add_option("--input", o.input, "Rule table (default: <out>/rules.csv)");
  graph->add_option("--consequent", consequent, "Consequent item label")->required();

  auto* run = app.add_subcommand("run", "Run bin, mine, rules and graph in sequence");
  add_common(run, o);
  run->add_option("--input", o.input, "Input table (overrides the configuration)");

  fpm::VerifyOptions vopts;
  std::string fault;
  auto* verify = app.add_subcommand("verify", "Randomized FP-Growth / Apriori / brute-force equivalence");
  verify->add_option("--cases", vopts.cases, "Number of random databases");
  verify->add_option("--max-items", vopts.max_items, "Maximum distinct items per database")
      ->check(CLI::Range(1, 24));
  verify->add_option("--max-transactions", vopts.max_transactions, "Maximum transactions per database")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", vopts.seed, "Random seed");
  verify->add_option("--fault", fault, "Self-test: inject a known defect into the miner")
      ->check(CLI::IsMember({"minsup-off-by-one"}));

  fpm::synth::Shape shape;
  double bench_minsup = 0.01;
  std::string bench_threads;
  auto* bench = app.add_subcommand("bench", "Time FP-Growth against Apriori on synthetic data");
  bench->add_option("--items", shape.items, "Number of items")->check(CLI::PositiveNumber);
  bench->add_option("--transactions", shape.transactions, "Number of transactions")->check(CLI::PositiveNumber);
  bench->add_option("--density", shape.mean_length, "Mean items per transaction")->check(CLI::PositiveNumber);
  bench->add_option("--minsup", bench_minsup, "Minimum relative support");
  bench->add_option("--seed", shape.seed, "Random seed");
  bench->add_option("--threads", bench_threads, "Mining threads (n or auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) {
      fpm::FrequentMiner miner;
      if (fault == "minsup-off-by-one") {
        miner = [](const fpm::TransactionDB& db, double s) {
          const auto abs = fpm::min_support_count(s, db.size());
          return fpm::mine(fpm::build_fptree(db, fpm::build_flist(db, abs + 1)));
        };
      }
      if (vopts.cases == 0) {
        fmt::print(std::cerr, "warning: 0 cases requested; nothing to verify\n");
      }
      const auto report = fpm::verify(vopts, miner);
      if (report.passed()) {
        fmt::print("verify: PASS ({} cases)\n", report.cases);
        return kExitOk;
      }
      fmt::print("verify: FAIL ({} of {} cases)\n", report.failures, report.cases);
      if (report.counterexample) {
        const auto& ce = *report.counterexample;
        fmt::print("counterexample at minsup {}: {}\n{}", ce.minsup_rel, ce.detail, fpm::describe_db(ce.db));
      }
      return kExitVerify;
    }

    if (*bench) {
      fpm::check_min_support(bench_minsup);
      const unsigned threads = std::max(1u, parse_threads(bench_threads));
      const auto r = fpm::bench(shape, bench_minsup, threads);
      fmt::print("dataset: {} transactions x {} items, mean length {:.2f}, hash {:016x}\n", r.transactions,
                 r.items, r.mean_length, r.dataset_hash);
      fmt::print("minsup: {} (absolute {})\n", r.minsup_rel, r.minsup_abs);
      fmt::print("fpgrowth: {:.4f} s, {} itemsets\n", r.fpgrowth_seconds, r.fpgrowth_itemsets);
      fmt::print("apriori:  {:.4f} s, {} itemsets\n", r.apriori_seconds, r.apriori_itemsets);
      fmt::print("speedup: {:.2f}x, outputs {}\n", r.speedup(), r.outputs_agree ? "agree" : "DIFFER");
      return r.outputs_agree ? kExitOk : kExitVerify;
    }

    auto config = make_config(o);
    if (*bin || *run) {
      if (!o.input.empty()) config.input_path = o.input;
    }
    if (*bin) {
      print_bin(fpm::run_bin(config));
    } else if (*mine_cmd) {
      print_mine(fpm::run_mine(config, input_path(o)));
    } else if (*rules) {
      print_rules(fpm::run_rules(config, input_path(o)));
    } else if (*graph) {
      fmt::print("graph: wrote {}\n", fpm::run_graph(config, consequent, input_path(o)).string());
    } else if (*run) {
      const auto s = fpm::run_all(config);
      print_bin(s.bin);
      print_mine(s.mine);
      print_rules(s.rules);
      for (const auto& g : s.graphs) fmt::print("graph: wrote {}\n", g.string());
    }
    return kExitOk;
  } catch (const fpm::ConfigError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const fpm::Error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kExitData;
  }
}
