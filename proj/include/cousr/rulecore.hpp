#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "cousr/measures.hpp"
#include "cousr/numeric.hpp"
#include "cousr/seqdb.hpp"

namespace cousr {

enum class Direction { kLeft, kRight };

/// Items of one sequence that can still grow a rule occurring in it.
///
/// An item can extend the antecedent if it is larger than every antecedent
/// item, is not in the rule, and sits before the first consequent item. It
/// can extend the consequent if it is larger than every consequent item, is
/// not in the rule, and sits after the last antecedent item.
struct ExpansionClasses {
  std::vector<Item> only_left;
  std::vector<Item> only_right;
  std::vector<Item> left_right;
};

/// Throws std::invalid_argument if `r` does not occur in `s`.
ExpansionClasses classify_expansion_items(const Rule& r, const Sequence& s);

struct UtilityListRow {
  std::uint32_t sid = 0;
  Utility iutil;   // utility of the rule's own items
  Utility lutil;   // only-left items
  Utility rutil;   // only-right items
  Utility lrutil;  // left-right items

  friend bool operator==(const UtilityListRow&, const UtilityListRow&) = default;
};

/// Itemset positions bounding the rule in one sequence.
struct RowBounds {
  std::uint32_t last_antecedent_pos = 0;
  std::uint32_t first_consequent_pos = 0;

  friend bool operator==(const RowBounds&, const RowBounds&) = default;
};

/// One row per supporting sequence, ascending sid. `bounds` runs parallel to
/// `rows`.
struct UtilityList {
  Rule rule;
  std::vector<UtilityListRow> rows;
  std::vector<RowBounds> bounds;

  std::size_t support() const { return rows.size(); }
  Utility utility() const;
};

/// Sum of all four utility fields; bounds the rule and all its descendants.
Utility ul_total(const UtilityList& ul);
/// Sum without rutil; bounds the rule and its antecedent-only descendants.
Utility ul_left_total(const UtilityList& ul);

/// Builds a utility-list from scratch straight from the database, through
/// classify_expansion_items. Works for any rule size.
UtilityList build_utility_list(const Rule& r, const SequenceDatabase& db);

/// Sequence with its items sorted by id for binary-search lookup.
struct IndexedEntry {
  Item item;
  std::uint32_t position;  // 1-based itemset index
  Utility utility;
};

struct IndexedSequence {
  std::uint32_t sid = 0;
  std::vector<IndexedEntry> entries;
  Utility utility;

  const IndexedEntry* find(Item i) const;
  /// First entry with item > i.
  std::span<const IndexedEntry> after(Item i) const;
};

/// Read-only search view of a database, optionally restricted to a subset of
/// items. Every input sequence keeps its slot (possibly empty) so that sids
/// and the sequence count stay those of the input.
class IndexedDatabase {
 public:
  static IndexedDatabase build(const SequenceDatabase& db);
  static IndexedDatabase build(const SequenceDatabase& db, std::span<const Item> keep);

  std::size_t num_sequences() const { return sequences_.size(); }
  const std::vector<IndexedSequence>& sequences() const { return sequences_; }
  const IndexedSequence& by_sid(std::uint32_t sid) const { return sequences_[sid - 1]; }

  /// Distinct items present, ascending.
  const std::vector<Item>& items() const { return items_; }

 private:
  std::vector<IndexedSequence> sequences_;
  std::vector<Item> items_;
};

ItemBitVectors build_item_bitvectors(const IndexedDatabase& db);

/// Utility-list of a 1*1 rule. Throws std::invalid_argument for larger rules.
UtilityList build_initial_utility_list(const Rule& r, const IndexedDatabase& db);

/// Utility-list of `parent.rule` grown by `i` on the given side, derived
/// from the parent's rows. Throws std::invalid_argument if `i` is already in
/// the rule or is not larger than every item of the side being extended.
UtilityList expand_utility_list(const UtilityList& parent, Item i, Direction direction,
                                const IndexedDatabase& db);

/// Sparse pair table keyed by ordered (a, b) item pairs.
template <typename Value>
class PairTable {
 public:
  std::optional<Value> get(Item a, Item b) const {
    const auto it = map_.find(key(a, b));
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  Value& at_or_insert(Item a, Item b) { return map_[key(a, b)]; }
  std::size_t size() const { return map_.size(); }

  /// Entries sorted by (a, b).
  std::vector<std::pair<std::pair<Item, Item>, Value>> sorted_entries() const {
    std::vector<std::pair<std::pair<Item, Item>, Value>> out;
    out.reserve(map_.size());
    for (const auto& [k, v] : map_) {
      out.push_back({{Item{static_cast<std::uint32_t>(k >> 32)}, Item{static_cast<std::uint32_t>(k)}}, v});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

 private:
  static std::uint64_t key(Item a, Item b) {
    return (static_cast<std::uint64_t>(id_of(a)) << 32) | id_of(b);
  }
  std::unordered_map<std::uint64_t, Value> map_;
};

/// bond({a, b}) for every co-occurring pair, stored once with a < b.
class BondMatrix {
 public:
  /// Symmetric lookup; nullopt when the pair never co-occurs or a == b.
  std::optional<Ratio> get(Item a, Item b) const {
    if (a == b) return std::nullopt;
    return a < b ? table_.get(a, b) : table_.get(b, a);
  }
  std::size_t size() const { return table_.size(); }
  const PairTable<Ratio>& table() const { return table_; }

 private:
  friend BondMatrix build_bond_matrix(const IndexedDatabase&, const ItemBitVectors&);
  PairTable<Ratio> table_;
};

BondMatrix build_bond_matrix(const IndexedDatabase& db, const ItemBitVectors& bvs);

/// SEU of the 1*1 rule a => b for every ordered pair where a => b occurs.
class Esucs {
 public:
  std::optional<Utility> get(Item a, Item b) const { return table_.get(a, b); }
  std::size_t size() const { return table_.size(); }
  const PairTable<Utility>& table() const { return table_; }

  void add(Item a, Item b, Utility u) { table_.at_or_insert(a, b) += u; }

 private:
  PairTable<Utility> table_;
};

Esucs build_esucs(const IndexedDatabase& db);

/// Utility-lists of every 1*1 rule whose ESUCS entry reaches `min_util`,
/// built in one pass over the database and sorted by rule.
std::vector<UtilityList> build_initial_utility_lists(const IndexedDatabase& db, const Esucs& esucs,
                                                     Utility min_util);

/// Tab-separated dumps for fixtures and debugging.
void dump_utility_list(const UtilityList& ul, std::ostream& out);
void dump_bond_matrix(const BondMatrix& m, std::ostream& out);
void dump_esucs(const Esucs& e, std::ostream& out);

}  // namespace cousr
