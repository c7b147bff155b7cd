#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cousr/measures.hpp"
#include "cousr/seqdb.hpp"

namespace cousr {

/// Exhaustive reference enumeration. It reads the database directly and
/// re-derives every measure from its definition; it uses no bit vectors,
/// utility-lists or miner code.
struct OracleLimits {
  std::size_t max_items = 12;
  std::size_t max_sequences = 16;
};

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Visits every ordered pair (X, Y) of disjoint non-empty subsets of the
/// occurring items, 3^m - 2*2^m + 1 pairs for m items. Confidence and lift
/// are reported as 0 when their denominator is 0 (the rule then has no
/// support either), and a bond with no occurring item is reported as 0.
void for_each_candidate_rule(const SequenceDatabase& db, const OracleLimits& limits,
                             const std::function<void(const ScoredRule&)>& visit);

std::vector<ScoredRule> enumerate_all_rules(const SequenceDatabase& db, const OracleLimits& limits = {});

/// Rules with u >= min_util, conf >= min_conf, lift >= min_lift and both
/// bonds >= min_bond, in canonical rule order.
std::vector<ScoredRule> oracle_chusrs(const SequenceDatabase& db, const Thresholds& t,
                                      const OracleLimits& limits = {});

}  // namespace cousr
