#pragma once

#include <cstddef>
#include <vector>

#include "fpm/model.hpp"

// Reference implementations used to check the miner. They recount supports
// by rescanning the raw transactions and never share code paths with the
// FP-Growth miner or the rule generator.
namespace fpm::oracle {

inline constexpr std::size_t kBruteForceMaxItems = 24;

// Exhaustive subset enumeration; refuses catalogs above kBruteForceMaxItems.
std::vector<FrequentItemset> brute_force_frequent(const TransactionDB& db, double minsup_rel);
std::vector<FrequentItemset> brute_force_frequent(const TransactionDB& db, Count minsup_abs);

// Level-wise Apriori without hash trees: each level joins L(k) with itself,
// prunes candidates with an infrequent k-subset and counts survivors with
// one full scan.
std::vector<FrequentItemset> apriori(const TransactionDB& db, double minsup_rel);
std::vector<FrequentItemset> apriori(const TransactionDB& db, Count minsup_abs);

// Every rule X -> Y with X, Y disjoint and X u Y frequent, scored by direct
// scans, confidence >= min_conf. Unbounded consequent size, no class filter.
std::vector<AssociationRule> oracle_rules(const TransactionDB& db, double minsup_rel, double min_conf);

}  // namespace fpm::oracle
