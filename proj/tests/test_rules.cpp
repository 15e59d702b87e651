#include <gtest/gtest.h>

#include <cmath>

#include "fpm/fpgrowth.hpp"
#include "fpm/oracle.hpp"
#include "fpm/rules.hpp"
#include "fpm/synth.hpp"

namespace fpm {
namespace {

// 3254 plots: item 0 in 46, item 1 in 320, both in 37.
TransactionDB pair_db() {
  std::vector<std::vector<ItemId>> rows;
  rows.insert(rows.end(), 37, {0, 1});
  rows.insert(rows.end(), 9, {0});
  rows.insert(rows.end(), 283, {1});
  rows.insert(rows.end(), 3254 - 37 - 9 - 283, {2});
  return make_db(rows, 3);
}

TEST(Score, TwoItemExample) {
  const auto db = make_db({{0, 1}, {0, 1}, {0}}, 2);
  const SupportIndex index(fpgrowth(db, 0.1));
  const auto m = score(Itemset{0}, Itemset{1}, index, db.size());
  EXPECT_EQ(m.support_abs, 2u);
  EXPECT_DOUBLE_EQ(m.rsupp, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.confidence, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.lift, 1.0);
  const auto back = score(Itemset{1}, Itemset{0}, index, db.size());
  EXPECT_DOUBLE_EQ(back.confidence, 1.0);
  EXPECT_EQ(back.lift, m.lift);
}

TEST(Score, LiftBelowOne) {
  // A in 3/4, B in 3/4, AB in 2/4: conf 2/3, lift (2/3)/(3/4) = 8/9.
  const auto db = make_db({{0, 1}, {0, 1}, {0}, {1}}, 2);
  const SupportIndex index(fpgrowth(db, 0.1));
  const auto m = score(Itemset{0}, Itemset{1}, index, db.size());
  EXPECT_NEAR(m.confidence, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.lift, 8.0 / 9.0, 1e-15);
}

TEST(Score, HighLiftPairToThreeDecimals) {
  const auto db = pair_db();
  const SupportIndex index(fpgrowth(db, 0.01));
  const auto m = score(Itemset{0}, Itemset{1}, index, db.size());
  EXPECT_NEAR(m.rsupp, 0.011, 5e-4);
  EXPECT_NEAR(m.confidence, 0.804, 5e-4);
  EXPECT_NEAR(m.lift, 8.179, 5e-4);
}

TEST(Score, RejectsOverlapEmptyAndMissing) {
  const auto db = make_db({{0, 1}, {0, 1}, {0}}, 2);
  const SupportIndex index(fpgrowth(db, 0.5));
  EXPECT_THROW(score(Itemset{0}, Itemset{0, 1}, index, 3), ConsistencyError);
  EXPECT_THROW(score(Itemset{}, Itemset{1}, index, 3), ConsistencyError);
  EXPECT_THROW(index.support(Itemset{5}), ConsistencyError);
}

TEST(GenerateRules, SingleItemConsequentsByDefault) {
  const auto db = make_db({{0, 1, 2}, {0, 1, 2}, {0, 1}, {2}}, 3);
  const auto freq = fpgrowth(db, 0.25);
  const auto rules = generate_rules(freq, db.size(), RuleFilter{});
  for (const auto& r : rules) {
    EXPECT_EQ(r.consequent.size(), 1u);
    EXPECT_FALSE(r.antecedent.intersects(r.consequent));
  }
  // {0,1,2} yields 3 rules, each of the three pairs yields 2.
  EXPECT_EQ(rules.size(), 9u);
}

TEST(GenerateRules, UnboundedConsequentsMatchOracle) {
  synth::Rng rng(11);
  for (int c = 0; c < 50; ++c) {
    const auto db = synth::random_small(rng, 8, 30);
    const double s = rng.uniform(0.1, 0.5);
    const double conf = rng.uniform(0.0, 0.9);
    RuleFilter f;
    f.min_conf = conf;
    f.max_consequent_size.reset();
    auto got = generate_rules(fpgrowth(db, s), db.size(), f);
    auto want = oracle::oracle_rules(db, s, conf);
    ASSERT_EQ(got.size(), want.size()) << "case " << c;
    std::sort(got.begin(), got.end(), [](const auto& a, const auto& b) {
      return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
    });
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].antecedent, want[i].antecedent);
      EXPECT_EQ(got[i].consequent, want[i].consequent);
      EXPECT_EQ(got[i].metrics.support_abs, want[i].metrics.support_abs);
      EXPECT_NEAR(got[i].metrics.confidence, want[i].metrics.confidence, 1e-12);
      EXPECT_NEAR(got[i].metrics.lift, want[i].metrics.lift, 1e-12);
    }
  }
}

TEST(GenerateRules, ThresholdsAreInclusive) {
  // conf(A -> B) = 2/3 exactly; lift = 1.
  const auto db = make_db({{0, 1}, {0, 1}, {0}}, 2);
  const auto freq = fpgrowth(db, 0.1);
  RuleFilter f;
  f.min_conf = 2.0 / 3.0;
  f.min_lift = 1.0;
  const auto rules = generate_rules(freq, db.size(), f);
  EXPECT_EQ(rules.size(), 2u);
}

TEST(GenerateRules, ConsequentClassFilter) {
  ItemCatalog cat;
  cat.intern("PICABI", ItemClass::Species);
  cat.intern("bio4 (650.0-700.0)", ItemClass::Climate);
  const TransactionDB db(cat, {{"1", Itemset{0, 1}}, {"2", Itemset{0, 1}}, {"3", Itemset{1}}});
  const auto freq = fpgrowth(db, 0.5);
  RuleFilter f;
  f.consequent_classes = std::set<ItemClass>{ItemClass::Species};
  const auto rules = generate_rules(freq, db.size(), f, &db.catalog());
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(rules[0].consequent, Itemset{0});
  EXPECT_EQ(rules[0].antecedent, Itemset{1});
  EXPECT_THROW(generate_rules(freq, db.size(), f, nullptr), ConsistencyError);
}

TEST(SortRules, LiftThenConfidenceThenItems) {
  std::vector<AssociationRule> rules{
      {Itemset{2}, Itemset{0}, {1, 0.1, 0.5, 2.0}},
      {Itemset{1}, Itemset{0}, {1, 0.1, 0.5, 2.0}},
      {Itemset{1}, Itemset{2}, {1, 0.1, 0.9, 2.0}},
      {Itemset{3}, Itemset{0}, {1, 0.1, 0.1, 3.0}},
  };
  sort_rules(rules);
  EXPECT_EQ(rules[0].antecedent, Itemset{3});
  EXPECT_EQ(rules[1].consequent, Itemset{2});
  EXPECT_EQ(rules[2].antecedent, Itemset{1});
  EXPECT_EQ(rules[3].antecedent, Itemset{2});
}

TEST(RuleFilter, Validation) {
  RuleFilter f;
  f.min_conf = -0.1;
  EXPECT_THROW(f.validate(), ConfigError);
  f.min_conf = 0.5;
  f.max_consequent_size = 0;
  EXPECT_THROW(f.validate(), ConfigError);
}

}  // namespace
}  // namespace fpm
