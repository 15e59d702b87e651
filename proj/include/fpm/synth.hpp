#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "fpm/model.hpp"

namespace fpm::synth {

// Deterministic helpers on top of mt19937_64, whose output sequence is fixed
// by the standard (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + static_cast<std::uint64_t>(uniform() * static_cast<double>(hi - lo + 1));
  }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// Correlated market-basket style data: a pool of recurring patterns over a
// Zipf-like item popularity, mixed with independent noise items.
struct Shape {
  std::size_t items = 200;
  std::size_t transactions = 10000;
  double mean_length = 10.0;
  std::size_t patterns = 60;
  std::uint64_t seed = 42;
};

TransactionDB generate(const Shape& shape);

// Small random database for oracle comparisons: up to max_items items and
// max_transactions rows with a random per-case density.
TransactionDB random_small(Rng& rng, std::size_t max_items, std::size_t max_transactions);

// FNV-1a over the serialized transactions.
std::uint64_t dataset_hash(const TransactionDB& db);

}  // namespace fpm::synth
