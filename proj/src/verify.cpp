#include "fpm/verify.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>

#include "fpm/fpgrowth.hpp"
#include "fpm/oracle.hpp"

namespace fpm {

namespace {

// First entry present in one list but not the other.
std::string first_difference(const std::vector<FrequentItemset>& a, const std::vector<FrequentItemset>& b) {
  for (const auto& f : a) {
    if (std::find(b.begin(), b.end(), f) == b.end()) {
      return fmt::format("{{{}}}:{}", fmt::join(f.itemset.items(), ","), f.support);
    }
  }
  return "(none)";
}

TransactionDB rebuild(const TransactionDB& db, const std::vector<std::vector<ItemId>>& rows) {
  return make_db(rows, db.catalog().size());
}

std::vector<std::vector<ItemId>> rows_of(const TransactionDB& db) {
  std::vector<std::vector<ItemId>> rows;
  for (const auto& t : db.transactions()) rows.emplace_back(t.items.begin(), t.items.end());
  return rows;
}

}  // namespace

std::optional<std::string> three_way_mismatch(const TransactionDB& db, double minsup_rel,
                                              const FrequentMiner& miner) {
  auto mined = miner(db, minsup_rel);
  sort_canonical(mined);
  const auto ap = oracle::apriori(db, minsup_rel);
  const auto bf = oracle::brute_force_frequent(db, minsup_rel);
  if (ap != bf) {
    return fmt::format("apriori and brute force disagree: apriori-only {} brute-only {}",
                       first_difference(ap, bf), first_difference(bf, ap));
  }
  if (mined != bf) {
    return fmt::format("miner and brute force disagree: miner-only {} brute-only {}", first_difference(mined, bf),
                       first_difference(bf, mined));
  }
  return std::nullopt;
}

Counterexample minimize_counterexample(const TransactionDB& db, double minsup_rel, const FrequentMiner& miner) {
  auto rows = rows_of(db);
  auto fails = [&](const std::vector<std::vector<ItemId>>& candidate) {
    return !candidate.empty() && three_way_mismatch(rebuild(db, candidate), minsup_rel, miner).has_value();
  };

  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto candidate = rows;
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
      if (fails(candidate)) {
        rows = std::move(candidate);
        shrunk = true;
        break;
      }
    }
  }
  for (ItemId item = 0; item < db.catalog().size(); ++item) {
    auto candidate = rows;
    bool changed = false;
    for (auto& r : candidate) {
      auto it = std::find(r.begin(), r.end(), item);
      if (it != r.end()) {
        r.erase(it);
        changed = true;
      }
    }
    if (changed && fails(candidate)) rows = std::move(candidate);
  }

  Counterexample ce{rebuild(db, rows), minsup_rel, {}};
  ce.detail = three_way_mismatch(ce.db, minsup_rel, miner).value_or("mismatch vanished during minimization");
  return ce;
}

VerifyReport verify(const VerifyOptions& options, const FrequentMiner& miner) {
  const FrequentMiner under_test =
      miner ? miner : FrequentMiner([](const TransactionDB& db, double s) { return fpgrowth(db, s); });
  synth::Rng rng(options.seed);
  VerifyReport report;
  for (std::size_t c = 0; c < options.cases; ++c) {
    const auto db = synth::random_small(rng, options.max_items, options.max_transactions);
    const double minsup = rng.uniform(options.min_minsup, options.max_minsup);
    ++report.cases;
    if (three_way_mismatch(db, minsup, under_test)) {
      ++report.failures;
      if (!report.counterexample) {
        report.counterexample = minimize_counterexample(db, minsup, under_test);
      }
    }
  }
  return report;
}

std::string describe_db(const TransactionDB& db) {
  std::string out = fmt::format("{} transactions over {} items\n", db.size(), db.catalog().size());
  for (const auto& t : db.transactions()) {
    out += fmt::format("  {}: {{{}}}\n", t.tid, fmt::join(t.items.items(), ","));
  }
  return out;
}

BenchReport bench(const synth::Shape& shape, double minsup_rel, unsigned threads) {
  using clock = std::chrono::steady_clock;
  const auto db = synth::generate(shape);
  BenchReport r;
  r.dataset_hash = synth::dataset_hash(db);
  r.transactions = db.size();
  r.items = db.catalog().size();
  std::size_t total = 0;
  for (const auto& t : db.transactions()) total += t.items.size();
  r.mean_length = db.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(db.size());
  r.minsup_rel = minsup_rel;
  r.minsup_abs = min_support_count(minsup_rel, db.size());

  auto t0 = clock::now();
  const auto fp = fpgrowth(db, minsup_rel, MineOptions{threads, true});
  auto t1 = clock::now();
  const auto ap = oracle::apriori(db, minsup_rel);
  auto t2 = clock::now();

  r.fpgrowth_seconds = std::chrono::duration<double>(t1 - t0).count();
  r.apriori_seconds = std::chrono::duration<double>(t2 - t1).count();
  r.fpgrowth_itemsets = fp.size();
  r.apriori_itemsets = ap.size();
  r.outputs_agree = fp == ap;
  return r;
}

}  // namespace fpm
