#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fpm/model.hpp"
#include "fpm/synth.hpp"

namespace fpm {

using FrequentMiner = std::function<std::vector<FrequentItemset>(const TransactionDB&, double)>;

struct VerifyOptions {
  std::size_t cases = 500;
  std::size_t max_items = 12;
  std::size_t max_transactions = 64;
  double min_minsup = 0.02;
  double max_minsup = 0.5;
  std::uint64_t seed = 1;
};

struct Counterexample {
  TransactionDB db;
  double minsup_rel = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<Counterexample> counterexample;  // first failure, minimized

  bool passed() const noexcept { return failures == 0; }
};

// Compares the miner against Apriori and brute-force enumeration. Returns a
// description of the first disagreement, or nullopt when all three agree.
std::optional<std::string> three_way_mismatch(const TransactionDB& db, double minsup_rel,
                                              const FrequentMiner& miner);

// Greedily drops transactions, then items, while the mismatch persists.
Counterexample minimize_counterexample(const TransactionDB& db, double minsup_rel, const FrequentMiner& miner);

// Randomized three-way equivalence. The default miner is FP-Growth.
VerifyReport verify(const VerifyOptions& options, const FrequentMiner& miner = {});

std::string describe_db(const TransactionDB& db);

struct BenchReport {
  std::uint64_t dataset_hash = 0;
  std::size_t transactions = 0;
  std::size_t items = 0;
  double mean_length = 0.0;
  double minsup_rel = 0.0;
  Count minsup_abs = 0;
  double fpgrowth_seconds = 0.0;
  double apriori_seconds = 0.0;
  std::size_t fpgrowth_itemsets = 0;
  std::size_t apriori_itemsets = 0;
  bool outputs_agree = false;

  double speedup() const noexcept {
    return fpgrowth_seconds > 0.0 ? apriori_seconds / fpgrowth_seconds : 0.0;
  }
};

// Times FP-Growth (both scans plus mining) and Apriori on the same synthetic
// database and threshold.
BenchReport bench(const synth::Shape& shape, double minsup_rel, unsigned threads = 1);

}  // namespace fpm
