#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cousr/measures.hpp"
#include "cousr/miner.hpp"
#include "cousr/seqdb.hpp"

namespace cousr {

/// Header line of the rule CSV.
inline constexpr const char* kRulesCsvHeader =
    "antecedent;consequent;utility;support;confidence;lift;bond_x;bond_y";

/// One row per rule, in the given order. Items are comma-joined ids (or
/// alias labels); decimals carry at most six fractional digits.
void write_rules_csv(std::ostream& out, const std::vector<ScoredRule>& rules,
                     const ItemAliases* aliases = nullptr);

/// A rule CSV row as read back, measures still in their printed form.
struct RuleRow {
  std::vector<Item> antecedent;
  std::vector<Item> consequent;
  std::string utility;
  std::string support;
  std::string confidence;
  std::string lift;
  std::string bond_x;
  std::string bond_y;
};

/// Reads a CSV written without aliases. Throws std::invalid_argument.
std::vector<RuleRow> read_rules_csv(std::istream& in);

/// Summary of one mining run.
struct RunReport {
  std::string variant;
  Thresholds thresholds;
  bool conf_prune = false;
  std::size_t num_sequences = 0;
  std::size_t rule_count = 0;
  MinerStats stats;
  /// Peak resident set size in KiB, 0 where the platform does not expose it.
  std::size_t peak_rss_kib = 0;
};

/// Pretty-printed JSON object.
std::string to_json(const RunReport& report);

/// VmHWM from /proc/self/status; 0 if unavailable.
std::size_t peak_rss_kib();

}  // namespace cousr
