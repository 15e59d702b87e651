#include <gtest/gtest.h>

#include "fpm/oracle.hpp"
#include "fpm/synth.hpp"
#include "fpm/verify.hpp"

namespace fpm {
namespace {

TEST(BruteForce, HandCountedDatabase) {
  const auto db = make_db({{0, 1}, {0, 1}, {0}}, 2);
  const std::vector<FrequentItemset> want{{Itemset{0}, 3}, {Itemset{1}, 2}, {Itemset{0, 1}, 2}};
  EXPECT_EQ(oracle::brute_force_frequent(db, Count{2}), want);
  EXPECT_EQ(oracle::apriori(db, Count{2}), want);
}

TEST(BruteForce, RefusesLargeCatalogs) {
  const auto db = make_db({{0}}, oracle::kBruteForceMaxItems + 1);
  EXPECT_THROW(oracle::brute_force_frequent(db, Count{1}), ConfigError);
}

TEST(Apriori, AgreesWithBruteForce) {
  synth::Rng rng(5);
  for (int c = 0; c < 200; ++c) {
    const auto db = synth::random_small(rng, 12, 64);
    const double s = rng.uniform(0.02, 0.5);
    EXPECT_EQ(oracle::apriori(db, s), oracle::brute_force_frequent(db, s)) << "case " << c;
  }
}

TEST(OracleRules, HandCounted) {
  const auto db = make_db({{0, 1}, {0, 1}, {0}, {1}}, 2);
  const auto rules = oracle::oracle_rules(db, 0.25, 0.0);
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules[0].antecedent, Itemset{0});
  EXPECT_NEAR(rules[0].metrics.confidence, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rules[0].metrics.lift, 8.0 / 9.0, 1e-15);
}

TEST(Verify, PassesOnCorrectMiner) {
  VerifyOptions o;
  o.cases = 60;
  EXPECT_TRUE(verify(o).passed());
}

TEST(Verify, CatchesOffByOneMinsupAndMinimizes) {
  VerifyOptions o;
  o.cases = 60;
  const FrequentMiner broken = [](const TransactionDB& db, double s) {
    auto all = oracle::brute_force_frequent(db, s);
    const auto abs = min_support_count(s, db.size());
    std::erase_if(all, [&](const FrequentItemset& f) { return f.support == abs; });
    return all;
  };
  const auto r = verify(o, broken);
  ASSERT_FALSE(r.passed());
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_LE(r.counterexample->db.size(), 3u);
  EXPECT_TRUE(three_way_mismatch(r.counterexample->db, r.counterexample->minsup_rel, broken).has_value());
}

TEST(Verify, ZeroCasesIsTrivialPass) {
  VerifyOptions o;
  o.cases = 0;
  const auto r = verify(o);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cases, 0u);
}

TEST(Synth, GeneratorIsDeterministic) {
  synth::Shape shape;
  shape.transactions = 500;
  EXPECT_EQ(synth::dataset_hash(synth::generate(shape)), synth::dataset_hash(synth::generate(shape)));
  auto other = shape;
  other.seed = 43;
  EXPECT_NE(synth::dataset_hash(synth::generate(shape)), synth::dataset_hash(synth::generate(other)));
}

TEST(Synth, MeanLengthTracksShape) {
  const auto db = synth::generate(synth::Shape{});
  std::size_t total = 0;
  for (const auto& t : db.transactions()) total += t.items.size();
  const double mean = static_cast<double>(total) / static_cast<double>(db.size());
  EXPECT_NEAR(mean, 10.0, 1.0);
  EXPECT_EQ(db.size(), 10000u);
  EXPECT_EQ(db.catalog().size(), 200u);
}

}  // namespace
}  // namespace fpm
