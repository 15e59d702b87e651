#include "fpm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace fpm::synth {

namespace {

std::size_t sample_cumulative(Rng& rng, const std::vector<double>& cumulative) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::size_t poisson(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  std::size_t k = 0;
  double p = rng.uniform();
  while (p > limit) {
    ++k;
    p *= rng.uniform();
  }
  return k;
}

}  // namespace

TransactionDB generate(const Shape& shape) {
  Rng rng(shape.seed);
  const std::size_t n_items = std::max<std::size_t>(1, shape.items);

  // Zipf-like popularity over a seeded permutation of the items.
  std::vector<ItemId> perm(n_items);
  std::iota(perm.begin(), perm.end(), ItemId{0});
  for (std::size_t i = n_items; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.between(0, i - 1)]);
  }
  std::vector<double> popularity(n_items);
  double acc = 0.0;
  for (std::size_t r = 0; r < n_items; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), 0.7);
    popularity[r] = acc;
  }
  auto popular_item = [&] { return perm[sample_cumulative(rng, popularity)]; };

  std::vector<std::vector<ItemId>> patterns(shape.patterns);
  for (auto& p : patterns) {
    const auto size = std::min<std::size_t>(n_items, rng.between(2, 6));
    while (p.size() < size) {
      const auto item = popular_item();
      if (std::find(p.begin(), p.end(), item) == p.end()) p.push_back(item);
    }
  }

  std::vector<std::vector<ItemId>> rows(shape.transactions);
  const double extra = std::max(0.0, shape.mean_length - 1.0);
  for (auto& row : rows) {
    const std::size_t target = std::min(n_items, 1 + poisson(rng, extra));
    std::vector<bool> present(n_items, false);
    std::size_t size = 0;
    auto add = [&](ItemId item) {
      if (!present[item] && size < target) {
        present[item] = true;
        ++size;
      }
    };
    for (std::size_t attempts = 0; size < target && attempts < 8 * target; ++attempts) {
      if (!patterns.empty() && rng.chance(0.5)) {
        for (ItemId item : patterns[rng.between(0, patterns.size() - 1)]) {
          if (rng.chance(0.85)) add(item);
        }
      } else {
        add(popular_item());
      }
    }
    for (ItemId item = 0; item < n_items; ++item) {
      if (present[item]) row.push_back(item);
    }
  }
  return make_db(rows, n_items);
}

TransactionDB random_small(Rng& rng, std::size_t max_items, std::size_t max_transactions) {
  const auto n_items = rng.between(1, std::max<std::size_t>(1, max_items));
  const auto n_rows = rng.between(1, std::max<std::size_t>(1, max_transactions));
  const double density = rng.uniform(0.1, 0.7);
  std::vector<std::vector<ItemId>> rows(n_rows);
  for (auto& row : rows) {
    // Occasionally copy an earlier row so that longer itemsets recur.
    if (&row != &rows.front() && rng.chance(0.2)) {
      row = rows[rng.between(0, static_cast<std::uint64_t>(&row - &rows.front()) - 1)];
      continue;
    }
    for (ItemId item = 0; item < n_items; ++item) {
      if (rng.chance(density)) row.push_back(item);
    }
  }
  return make_db(rows, n_items);
}

std::uint64_t dataset_hash(const TransactionDB& db) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& t : db.transactions()) {
    mix(t.tid);
    mix("\t");
    for (ItemId id : t.items) {
      mix(std::to_string(id));
      mix(",");
    }
    mix("\n");
  }
  return h;
}

}  // namespace fpm::synth
