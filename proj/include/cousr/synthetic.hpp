#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "cousr/measures.hpp"
#include "cousr/seqdb.hpp"

namespace cousr {

/// Parameters of a synthetic benchmark database.
struct SyntheticSpec {
  std::size_t num_sequences = 1000;
  std::size_t num_items = 100;
  double avg_length = 8.0;  // items per sequence
  std::uint64_t seed = 1;

  /// "n_seq,n_items,avg_len,seed". Throws std::invalid_argument.
  static SyntheticSpec parse(std::string_view text);
};

/// Zipf-distributed items, quantities uniform in 1..5, unit utilities
/// uniform in 1..10, itemsets of 1..3 items. Deterministic per seed.
SequenceDatabase generate_synthetic(const SyntheticSpec& spec);

/// Shape limits for the small databases used in oracle comparisons.
struct SmallDatabaseSpec {
  std::size_t max_sequences = 8;
  std::size_t max_items = 8;
  std::size_t max_itemset = 3;
};

SequenceDatabase generate_small_database(std::mt19937_64& rng, const SmallDatabaseSpec& spec = {});

/// Thresholds spread so that small databases yield anywhere from no rules to
/// most of their rules.
Thresholds random_thresholds(std::mt19937_64& rng, const SequenceDatabase& db);

}  // namespace cousr
