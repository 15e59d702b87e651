#include <gtest/gtest.h>

#include <map>

#include "fpm/fpgrowth.hpp"
#include "fpm/oracle.hpp"
#include "fpm/synth.hpp"

namespace fpm {
namespace {

// Table of three plots: LARDEC=0 PICABI=1 PINCEM=2 PINSYL=3 ALNINC=4 FRAEXC=5 BETPEN=6 POPTRE=7.
TransactionDB three_plots() { return make_db({{0, 1, 2, 3}, {4, 5}, {6, 1, 7}}, 8); }

TEST(FList, OnlyTheSharedSpeciesSurvivesHalfSupport) {
  const auto f = build_flist(three_plots(), 0.5);
  EXPECT_EQ(f.minsup_abs, 2u);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.entries[0].item, 1u);
  EXPECT_EQ(f.entries[0].support, 2u);
}

TEST(FList, SortedBySupportThenItemId) {
  const auto db = make_db({{2, 0}, {2, 1}, {2, 0, 1}, {3}}, 4);
  const auto f = build_flist(db, Count{1});
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f.entries[0].item, 2u);  // 3
  EXPECT_EQ(f.entries[1].item, 0u);  // 2, tie broken by id
  EXPECT_EQ(f.entries[2].item, 1u);  // 2
  EXPECT_EQ(f.entries[3].item, 3u);  // 1
}

TEST(FPTree, SharedPrefixesCollapse) {
  const auto db = make_db({{0, 1}, {0, 1}, {0}}, 2);
  const auto tree = build_fptree(db, build_flist(db, Count{1}));
  // root, A:3, B:2
  EXPECT_EQ(tree.node_count(), 3u);
  EXPECT_TRUE(tree.is_single_path());
  const auto& root = tree.node(FPTree::kRoot);
  const auto& a = tree.node(root.first_child);
  EXPECT_EQ(a.item, 0u);
  EXPECT_EQ(a.count, 3u);
  EXPECT_EQ(tree.node(a.first_child).count, 2u);
}

TEST(FPTree, HeaderChainsSumToItemSupport) {
  const auto db = make_db({{0, 1, 2}, {1, 2}, {0, 2}, {2, 3}, {0, 1, 3}}, 4);
  const auto flist = build_flist(db, Count{1});
  const auto tree = build_fptree(db, flist);
  ASSERT_EQ(tree.header().size(), flist.size());
  for (std::size_t i = 0; i < tree.header().size(); ++i) {
    const auto& h = tree.header()[i];
    EXPECT_EQ(tree.chain_sum(i), h.total_count);
    EXPECT_EQ(h.total_count, db.count_containing(Itemset{h.item}));
    for (auto n = h.chain_head; n != FPTree::kNone; n = tree.node(n).next_same_item) {
      EXPECT_EQ(tree.node(n).item, h.item);
    }
  }
  EXPECT_FALSE(tree.is_single_path());
}

TEST(FPTree, InfrequentItemsAreNotInserted) {
  const auto db = make_db({{0, 1}, {0}, {0, 2}}, 3);
  const auto tree = build_fptree(db, build_flist(db, Count{2}));
  EXPECT_EQ(tree.header().size(), 1u);
  EXPECT_EQ(tree.node_count(), 2u);
}

TEST(Mine, TwoItemExample) {
  const auto db = make_db({{0, 1}, {0, 1}, {0}}, 2);
  const auto got = fpgrowth(db, 0.5);
  const std::vector<FrequentItemset> want{{Itemset{0}, 3}, {Itemset{1}, 2}, {Itemset{0, 1}, 2}};
  EXPECT_EQ(got, want);
}

TEST(Mine, ThreePlotsAtMinsupTwo) {
  const auto db = three_plots();
  const auto got = mine(build_fptree(db, build_flist(db, Count{2})));
  const std::vector<FrequentItemset> want{{Itemset{1}, 2}};
  EXPECT_EQ(got, want);
}

TEST(Mine, EmptyDatabaseAndNothingFrequent) {
  const auto empty = make_db({}, 3);
  EXPECT_TRUE(fpgrowth(empty, 0.5).empty());
  const auto sparse = make_db({{0}, {1}, {2}}, 3);
  EXPECT_TRUE(fpgrowth(sparse, 0.5).empty());
}

TEST(Mine, FullSupportKeepsOnlyUniversalItemsets) {
  const auto db = make_db({{0, 1, 2}, {0, 1}, {0, 1, 3}}, 4);
  const auto got = fpgrowth(db, 1.0);
  const std::vector<FrequentItemset> want{{Itemset{0}, 3}, {Itemset{1}, 3}, {Itemset{0, 1}, 3}};
  EXPECT_EQ(got, want);
}

TEST(Mine, SinglePathShortcutMatchesRecursion) {
  synth::Rng rng(7);
  for (int c = 0; c < 100; ++c) {
    const auto db = synth::random_small(rng, 10, 40);
    const double s = rng.uniform(0.05, 0.5);
    const auto tree = build_fptree(db, build_flist(db, s));
    EXPECT_EQ(mine(tree, {1, true}), mine(tree, {1, false})) << "case " << c;
  }
}

TEST(Mine, ThreadCountDoesNotChangeOutput) {
  synth::Shape shape;
  shape.transactions = 2000;
  shape.items = 60;
  const auto db = synth::generate(shape);
  const auto one = fpgrowth(db, 0.02, {1, true});
  for (unsigned t : {2u, 3u, 8u}) {
    EXPECT_EQ(fpgrowth(db, 0.02, {t, true}), one) << t << " threads";
  }
}

TEST(Mine, AgreesWithAprioriOnSyntheticData) {
  synth::Shape shape;
  shape.transactions = 3000;
  shape.items = 80;
  const auto db = synth::generate(shape);
  EXPECT_EQ(fpgrowth(db, 0.01), oracle::apriori(db, 0.01));
}

TEST(Mine, OutputIsCanonicallySorted) {
  synth::Rng rng(3);
  const auto db = synth::random_small(rng, 12, 64);
  const auto got = fpgrowth(db, 0.1);
  for (std::size_t i = 1; i < got.size(); ++i) {
    EXPECT_TRUE(canonical_less(got[i - 1].itemset, got[i].itemset));
  }
}

TEST(Mine, InvalidMinsup) {
  EXPECT_THROW(fpgrowth(three_plots(), 0.0), ConfigError);
  EXPECT_THROW(fpgrowth(three_plots(), 1.01), ConfigError);
}

}  // namespace
}  // namespace fpm
