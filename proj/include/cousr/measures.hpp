#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cousr/bitvector.hpp"
#include "cousr/numeric.hpp"
#include "cousr/seqdb.hpp"

namespace cousr {

/// A sequential rule X => Y over disjoint, non-empty item sets.
class Rule {
 public:
  /// Sorts both sides. Throws std::invalid_argument if a side is empty,
  /// holds a repeated item, or the sides intersect.
  Rule(std::vector<Item> antecedent, std::vector<Item> consequent);

  const std::vector<Item>& antecedent() const { return antecedent_; }
  const std::vector<Item>& consequent() const { return consequent_; }

  /// Largest item of each side.
  Item last_antecedent() const { return antecedent_.back(); }
  Item last_consequent() const { return consequent_.back(); }

  bool contains(Item i) const;

  /// "k*m" where k = |X| and m = |Y|.
  std::string size_label() const;

  /// "1,2 => 7" (or with aliases "a,b => g").
  std::string to_string(const ItemAliases* aliases = nullptr) const;

  /// Canonical order: antecedent lexicographic, then consequent.
  friend auto operator<=>(const Rule&, const Rule&) = default;

 private:
  std::vector<Item> antecedent_;
  std::vector<Item> consequent_;
};

/// Thrown when a ratio measure has a zero denominator.
class MeasureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Per-item occurrence bit vectors over a database of `size()` sequences.
class ItemBitVectors {
 public:
  ItemBitVectors() = default;
  explicit ItemBitVectors(std::size_t num_sequences)
      : num_sequences_(num_sequences), empty_(num_sequences) {}

  std::size_t num_sequences() const { return num_sequences_; }

  /// All-zero vector for items never seen.
  const BitVector& of(Item i) const;
  BitVector& mutable_of(Item i);

  const std::map<Item, BitVector>& all() const { return vectors_; }

 private:
  std::size_t num_sequences_ = 0;
  std::map<Item, BitVector> vectors_;
  BitVector empty_;
};

ItemBitVectors build_item_bitvectors(const SequenceDatabase& db);

/// Number of sequences containing every item of `items`.
std::size_t itemset_support(std::span<const Item> items, const ItemBitVectors& bvs);

/// Number of sequences containing at least one item of `items`.
std::size_t itemset_dissup(std::span<const Item> items, const ItemBitVectors& bvs);

/// sup / dissup. `defined` is false when no item of the set occurs, in which
/// case value is 0.
struct Bond {
  Ratio value;
  bool defined = false;
};

Bond bond(std::span<const Item> items, const ItemBitVectors& bvs);
Bond bond_from_counts(std::size_t support, std::size_t dissup);

/// Every item of X sits in an earlier itemset than every item of Y.
bool rule_occurs(const Rule& r, const Sequence& s);

BitVector rule_sids(const Rule& r, const SequenceDatabase& db);

/// |sids(r)| / |sids(X)|. Throws MeasureError when |sids(X)| == 0.
Ratio confidence(const BitVector& sids_rule, const BitVector& sids_antecedent);
Ratio confidence(std::size_t rule_support, std::size_t antecedent_support);

/// n * |sids(r)| / (|sids(X)| * |sids(Y)|). Throws MeasureError when either
/// side has zero support.
Ratio lift(const BitVector& sids_rule, const BitVector& sids_antecedent,
           const BitVector& sids_consequent, std::size_t num_sequences);
Ratio lift(std::size_t rule_support, std::size_t antecedent_support,
           std::size_t consequent_support, std::size_t num_sequences);

/// Sum over supporting sequences of the utilities of the items of X and Y.
Utility rule_utility(const Rule& r, const SequenceDatabase& db);

/// Sum of sequence utilities over the sequences containing `i`.
Utility seu_of_item(Item i, const SequenceDatabase& db);

/// Sum of sequence utilities over the sequences flagged in `sids_rule`.
Utility seu_of_rule(const BitVector& sids_rule, const SequenceDatabase& db);

/// The four emission thresholds; all comparisons are inclusive.
struct Thresholds {
  Utility min_util;
  Ratio min_conf;
  Ratio min_bond;
  Ratio min_lift;
};

/// A rule together with every measure reported for it.
struct ScoredRule {
  Rule rule;
  Utility utility;
  std::uint32_t support = 0;
  Ratio confidence;
  Ratio lift;
  Ratio bond_antecedent;
  Ratio bond_consequent;

  friend bool operator==(const ScoredRule&, const ScoredRule&) = default;
};

}  // namespace cousr
