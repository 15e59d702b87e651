#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fpm/fpgrowth.hpp"
#include "fpm/io.hpp"
#include "fpm/rules.hpp"
#include "fpm/synth.hpp"

namespace fpm {
namespace {

TransactionDB labelled_db() {
  ItemCatalog cat;
  cat.intern("PICABI", ItemClass::Species);
  cat.intern("bio1 (5.0-5.5)°C", ItemClass::Climate);
  cat.intern("Lithology class 12", ItemClass::Soil);
  cat.intern("GLH (32.0-34.0)", ItemClass::EarthObs);
  return TransactionDB(cat, {{"p1", Itemset{0, 1, 2}}, {"p2", Itemset{0, 3}}, {"p3", Itemset{}},
                             {"p4", Itemset{0, 1}}});
}

TEST(Transactions, RoundTrip) {
  const auto db = labelled_db();
  std::stringstream s;
  io::write_transactions(s, db);
  EXPECT_TRUE(s.str().starts_with("p1\tPICABI,bio1 (5.0-5.5)°C,Lithology class 12\n")) << s.str();
  const auto back = io::read_transactions(s, db.catalog());
  ASSERT_EQ(back.size(), db.size());
  for (std::size_t i = 0; i < db.size(); ++i) {
    EXPECT_EQ(back.transactions()[i].tid, db.transactions()[i].tid);
    EXPECT_EQ(back.transactions()[i].items, db.transactions()[i].items);
  }
}

TEST(Transactions, UnknownLabelIsDataError) {
  const auto db = labelled_db();
  std::stringstream s("p9\tNOSUCH\n");
  EXPECT_THROW(io::read_transactions(s, db.catalog()), DataError);
}

TEST(Catalog, RoundTrip) {
  const auto db = labelled_db();
  std::stringstream s;
  io::write_catalog(s, db.catalog());
  EXPECT_EQ(s.str().substr(0, 40), "item_id,label,class\n0,PICABI,species\n1,b");
  EXPECT_EQ(io::read_catalog(s), db.catalog());
}

TEST(Itemsets, RoundTripKeepsHeaderAndSupports) {
  const auto db = labelled_db();
  const auto freq = fpgrowth(db, 0.5);
  std::stringstream s;
  io::write_itemsets(s, freq, db.catalog(), db.size(), 2);
  const auto back = io::read_itemsets(s, db.catalog());
  EXPECT_EQ(back.n, 4u);
  EXPECT_EQ(back.minsup_abs, 2u);
  EXPECT_EQ(back.itemsets, freq);
}

TEST(Rules, TableAndFullPrecision) {
  const auto db = labelled_db();
  const auto rules = generate_rules(fpgrowth(db, 0.25), db.size(), RuleFilter{});
  ASSERT_FALSE(rules.empty());

  std::stringstream table;
  io::write_rules(table, rules, db.catalog(), io::Precision::Table);
  std::string header;
  std::getline(table, header);
  EXPECT_EQ(header, "antecedent;consequent;support;confidence;lift");
  std::string first;
  std::getline(table, first);
  EXPECT_EQ(std::count(first.begin(), first.end(), ';'), 4);

  std::stringstream full;
  io::write_rules(full, rules, db.catalog(), io::Precision::Full);
  const auto rows = io::read_rules(full);
  ASSERT_EQ(rows.size(), rules.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].confidence, rules[i].metrics.confidence);
    EXPECT_EQ(rows[i].lift, rules[i].metrics.lift);
    EXPECT_EQ(rows[i].support, rules[i].metrics.rsupp);
    EXPECT_EQ(rows[i].consequent.size(), 1u);
  }
}

TEST(Rules, ReadsMultiItemSides) {
  std::stringstream s("antecedent;consequent;support;confidence;lift\nA|B;C;0.010;0.700;2.000\n");
  const auto rows = io::read_rules(s);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].antecedent, (std::vector<std::string>{"A", "B"}));
  EXPECT_DOUBLE_EQ(rows[0].confidence, 0.7);
  std::stringstream bad("antecedent;consequent;support;confidence;lift\nA;C;x;0.7;2\n");
  EXPECT_THROW(io::read_rules(bad), DataError);
}

TEST(AtomicWrite, FailureLeavesNoPartialFile) {
  const auto dir = std::filesystem::temp_directory_path() / "fpm_io_atomic";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  EXPECT_THROW(io::write_file_atomic(path,
                                     [](std::ostream& o) {
                                       o << "half";
                                       throw DataError("boom");
                                     }),
               DataError);
  EXPECT_FALSE(std::filesystem::exists(path));
  EXPECT_TRUE(std::filesystem::is_empty(dir));

  io::write_file_atomic(path, [](std::ostream& o) { o << "whole\n"; });
  EXPECT_EQ(io::read_file(path), "whole\n");
  std::filesystem::remove_all(dir);
}

TEST(BinningReport, StatusColumn) {
  std::vector<BinAudit> audit{{"bio4", "fixed_width(width=50)", 7, 7, false},
                              {"bio1", "fixed_width(width=0.5)", 40, 38, true},
                              {"Lithology class", "categorical", std::nullopt, 12, false}};
  std::stringstream s;
  io::write_binning_report(s, audit);
  const auto text = s.str();
  EXPECT_NE(text.find("bio4,fixed_width(width=50),7,7,ok"), std::string::npos);
  EXPECT_NE(text.find("bio1,fixed_width(width=0.5),40,38,warning"), std::string::npos);
  EXPECT_NE(text.find("Lithology class,categorical,-,12,n/a"), std::string::npos);
}

}  // namespace
}  // namespace fpm
