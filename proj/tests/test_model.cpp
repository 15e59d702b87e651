#include <gtest/gtest.h>

#include "fpm/model.hpp"

namespace fpm {
namespace {

TEST(ItemCatalog, InternIsIdempotentAndDense) {
  ItemCatalog cat;
  EXPECT_EQ(cat.intern("PICABI", ItemClass::Species), 0u);
  EXPECT_EQ(cat.intern("bio4 (650.0-700.0)", ItemClass::Climate), 1u);
  EXPECT_EQ(cat.intern("PICABI", ItemClass::Species), 0u);
  EXPECT_EQ(cat.size(), 2u);
  EXPECT_EQ(cat.label_of(1), "bio4 (650.0-700.0)");
  EXPECT_EQ(cat.class_of(1), ItemClass::Climate);
  EXPECT_EQ(cat.id_of("PICABI"), 0u);
  EXPECT_FALSE(cat.find("LARDEC").has_value());
}

TEST(ItemCatalog, ClassConflictIsRejected) {
  ItemCatalog cat;
  cat.intern("X", ItemClass::Species);
  EXPECT_THROW(cat.intern("X", ItemClass::Soil), ConsistencyError);
}

TEST(ItemCatalog, ReservedCharactersAreRejected) {
  ItemCatalog cat;
  EXPECT_THROW(cat.intern("", ItemClass::Species), ConsistencyError);
  for (const char* bad : {"a,b", "a;b", "a|b", "a\tb", "a\nb"}) {
    EXPECT_THROW(cat.intern(bad, ItemClass::Species), SchemaError) << bad;
  }
  EXPECT_NO_THROW(cat.intern("bio1 (5.0-5.5)°C", ItemClass::Climate));
}

TEST(ItemClass, FromColumnPrefix) {
  EXPECT_EQ(item_class_from_column("P_PICABI"), ItemClass::Species);
  EXPECT_EQ(item_class_from_column("C_WC0004"), ItemClass::Climate);
  EXPECT_EQ(item_class_from_column("S_SGPHWA"), ItemClass::Soil);
  EXPECT_EQ(item_class_from_column("E_CANHEI"), ItemClass::EarthObs);
  EXPECT_THROW(item_class_from_column("Z_FOOBAR"), SchemaError);
  EXPECT_EQ(parse_item_class("species"), ItemClass::Species);
  EXPECT_EQ(to_string(ItemClass::EarthObs), "earth_obs");
}

TEST(Itemset, IsSortedAndDeduplicated) {
  const Itemset s{5, 1, 3, 1};
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], 1u);
  EXPECT_EQ(s[2], 5u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(4));
}

TEST(Itemset, SetAlgebra) {
  const Itemset a{1, 2, 3};
  const Itemset b{2, 4};
  EXPECT_EQ(a.union_with(b), (Itemset{1, 2, 3, 4}));
  EXPECT_EQ(a.minus(b), (Itemset{1, 3}));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE(a.intersects(Itemset{7}));
  EXPECT_TRUE((Itemset{1, 3}).is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_TRUE(Itemset{}.is_subset_of(a));
}

TEST(Itemset, CanonicalOrderIsSizeThenLexicographic) {
  EXPECT_TRUE(canonical_less(Itemset{9}, Itemset{0, 1}));
  EXPECT_TRUE(canonical_less(Itemset{0, 2}, Itemset{1, 2}));
  EXPECT_FALSE(canonical_less(Itemset{1, 2}, Itemset{1, 2}));
}

TEST(TransactionDB, RejectsDuplicateTidsAndUnknownItems) {
  ItemCatalog cat;
  cat.intern("A", ItemClass::Species);
  EXPECT_THROW(TransactionDB(cat, {{"1", Itemset{0}}, {"1", Itemset{0}}}), DataError);
  EXPECT_THROW(TransactionDB(cat, {{"1", Itemset{3}}}), ConsistencyError);
}

TEST(TransactionDB, CountContaining) {
  const auto db = make_db({{0, 1}, {0, 1}, {0}}, 2);
  EXPECT_EQ(db.count_containing(Itemset{0}), 3u);
  EXPECT_EQ(db.count_containing(Itemset{0, 1}), 2u);
  EXPECT_EQ(db.count_containing(Itemset{}), 3u);
}

TEST(MinSupport, CeilingWithTolerance) {
  EXPECT_EQ(min_support_count(0.5, 3), 2u);
  EXPECT_EQ(min_support_count(0.07, 100), 7u);
  EXPECT_EQ(min_support_count(0.01, 10000), 100u);
  EXPECT_EQ(min_support_count(0.001, 10), 1u);
  EXPECT_EQ(min_support_count(1.0, 4), 4u);
  EXPECT_THROW(check_min_support(0.0), ConfigError);
  EXPECT_THROW(check_min_support(1.5), ConfigError);
  EXPECT_NO_THROW(check_min_support(1.0));
}

}  // namespace
}  // namespace fpm
