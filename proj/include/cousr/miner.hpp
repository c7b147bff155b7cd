#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cousr/bitvector.hpp"
#include "cousr/measures.hpp"
#include "cousr/rulecore.hpp"
#include "cousr/seqdb.hpp"

namespace cousr {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which co-occurrence pruning structures are switched on.
enum class Variant { kBase, kS6, kS7, kS6S7 };

std::string_view to_string(Variant v);
/// "base", "s6", "s7" or "s6s7"; throws ConfigError otherwise.
Variant parse_variant(std::string_view text);

struct MinerConfig {
  Thresholds thresholds;
  bool use_bond_matrix = false;  // skip candidates via pairwise bond
  bool use_esucs = false;        // skip candidates via pairwise rule SEU
  /// Skip consequent growth of rules below min_conf. Off by default; it can
  /// drop rules reachable only through a later antecedent growth.
  bool conf_prune = false;
  std::optional<std::size_t> max_side;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 1;

  static MinerConfig for_variant(const Thresholds& t, Variant v);

  /// Throws ConfigError when a threshold is out of range.
  void validate() const;
};

/// Reasons a candidate or subtree is dropped during the search.
enum class PruneReason {
  kUnpromisingItem,  // item SEU below min_util
  kRuleSeu,          // 1*1 rule SEU below min_util
  kBond,             // bond of the grown side below min_bond
  kRightBound,       // ul_total below min_util, no consequent growth
  kLeftBound,        // ul_left_total below min_util, no antecedent growth
  kBondMatrix,       // pairwise bond below min_bond
  kEsucs,            // pairwise rule SEU below min_util
  kConfidence,       // optional confidence gate on consequent growth
};

std::string_view to_string(PruneReason r);

/// For kUnpromisingItem the antecedent holds the item and the consequent is
/// empty. For candidate-level reasons the sides are those of the dropped
/// candidate; for the two bound gates they are those of the rule whose
/// growth was skipped.
struct PruneEvent {
  PruneReason reason;
  std::vector<Item> antecedent;
  std::vector<Item> consequent;
};

/// Called serially, even when the search runs on several threads.
using PruneObserver = std::function<void(const PruneEvent&)>;

struct MinerStats {
  std::uint64_t promising_items = 0;
  std::uint64_t initial_rules = 0;
  std::uint64_t pruned_unpromising_items = 0;  // item SEU
  std::uint64_t pruned_rule_seu = 0;           // 1*1 rule SEU
  std::uint64_t pruned_bond = 0;               // side bond
  std::uint64_t pruned_right_bound = 0;        // consequent-growth gate
  std::uint64_t pruned_left_bound = 0;         // antecedent-growth gate
  std::uint64_t pruned_bond_matrix = 0;        // pairwise bond table
  std::uint64_t pruned_esucs = 0;              // pairwise rule SEU table
  std::uint64_t pruned_confidence = 0;
  std::uint64_t candidates = 0;
  std::uint64_t utility_lists_built = 0;
  std::uint64_t utility_list_tuples = 0;
  double elapsed_ms = 0.0;

  MinerStats& operator+=(const MinerStats& o);
};

struct MiningResult {
  std::vector<ScoredRule> rules;  // canonical rule order
  MinerStats stats;
};

struct FilteredDatabase {
  std::vector<Item> promising;
  /// Unpromising items removed and emptied itemsets dropped. Sequences keep
  /// their slots (possibly with no itemsets) so sids and |SD| are unchanged.
  SequenceDatabase db;
};

FilteredDatabase filter_unpromising_items(const SequenceDatabase& db, Utility min_util);

/// A rule under search with the sequence sets needed for its measures.
struct RuleContext {
  UtilityList ul;
  BitVector sids_x;     // sequences containing all of X
  BitVector sids_y;     // sequences containing all of Y
  BitVector sids_or_x;  // sequences containing any of X
  BitVector sids_or_y;  // sequences containing any of Y

  const Rule& rule() const { return ul.rule; }
};

struct InitialRules {
  std::vector<RuleContext> rules;  // sorted by rule
  Esucs esucs;
  std::uint64_t pruned_by_seu = 0;
};

/// All 1*1 rules of a filtered database whose SEU reaches min_util, built in
/// the same pass as the ESUCS.
InitialRules enumerate_initial_rules(const IndexedDatabase& db, const ItemBitVectors& bvs,
                                     Utility min_util);

/// Depth-first growth from a set of rules over shared read-only structures.
/// Consequent growth may be followed by antecedent growth, never the reverse.
class ExpansionSearch {
 public:
  ExpansionSearch(const IndexedDatabase& db, const ItemBitVectors& bvs, const BondMatrix* bond_matrix,
                  const Esucs* esucs, const MinerConfig& cfg, const PruneObserver* observer);

  /// Emits `ctx` if it qualifies, then runs whichever growth its bounds allow.
  void explore(const RuleContext& ctx);

  /// Grow the consequent by one item. Requires ul_total(ctx.ul) >= min_util.
  void right_expansion(const RuleContext& ctx);
  /// Grow the antecedent by one item. Requires ul_left_total(ctx.ul) >= min_util.
  void left_expansion(const RuleContext& ctx);

  std::vector<ScoredRule>& emitted() { return emitted_; }
  MinerStats& stats() { return stats_; }

 private:
  void maybe_emit(const RuleContext& ctx, const Ratio& conf, const Ratio& lift);
  void prune(PruneReason reason, const std::vector<Item>& x, const std::vector<Item>& y);
  std::vector<Item> candidates(const UtilityList& ul, Direction d) const;

  const IndexedDatabase& db_;
  const ItemBitVectors& bvs_;
  const BondMatrix* bond_matrix_;
  const Esucs* esucs_;
  const MinerConfig& cfg_;
  const PruneObserver* observer_;
  std::vector<ScoredRule> emitted_;
  MinerStats stats_;
};

/// Every rule meeting all four thresholds, independent of which pruning
/// structures are enabled. Throws ConfigError or DataError.
MiningResult mine(const SequenceDatabase& db, const MinerConfig& cfg,
                  const PruneObserver& observer = {});

}  // namespace cousr
