#include "cousr/measures.hpp"

#include <algorithm>

namespace cousr {

namespace {

std::string join_items(const std::vector<Item>& items, const ItemAliases* aliases) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ',';
    out += aliases ? aliases->name(items[k]) : std::to_string(id_of(items[k]));
  }
  return out;
}

}  // namespace

Rule::Rule(std::vector<Item> antecedent, std::vector<Item> consequent)
    : antecedent_(std::move(antecedent)), consequent_(std::move(consequent)) {
  if (antecedent_.empty() || consequent_.empty()) {
    throw std::invalid_argument("rule sides must be non-empty");
  }
  std::sort(antecedent_.begin(), antecedent_.end());
  std::sort(consequent_.begin(), consequent_.end());
  if (std::adjacent_find(antecedent_.begin(), antecedent_.end()) != antecedent_.end() ||
      std::adjacent_find(consequent_.begin(), consequent_.end()) != consequent_.end()) {
    throw std::invalid_argument("rule side repeats an item");
  }
  for (Item i : antecedent_) {
    if (std::binary_search(consequent_.begin(), consequent_.end(), i)) {
      throw std::invalid_argument("antecedent and consequent share item " + std::to_string(id_of(i)));
    }
  }
}

bool Rule::contains(Item i) const {
  return std::binary_search(antecedent_.begin(), antecedent_.end(), i) ||
         std::binary_search(consequent_.begin(), consequent_.end(), i);
}

std::string Rule::size_label() const {
  return std::to_string(antecedent_.size()) + "*" + std::to_string(consequent_.size());
}

std::string Rule::to_string(const ItemAliases* aliases) const {
  return join_items(antecedent_, aliases) + " => " + join_items(consequent_, aliases);
}

const BitVector& ItemBitVectors::of(Item i) const {
  const auto it = vectors_.find(i);
  if (it != vectors_.end()) return it->second;
  return empty_;
}

BitVector& ItemBitVectors::mutable_of(Item i) {
  auto it = vectors_.find(i);
  if (it == vectors_.end()) it = vectors_.emplace(i, BitVector(num_sequences_)).first;
  return it->second;
}

ItemBitVectors build_item_bitvectors(const SequenceDatabase& db) {
  ItemBitVectors bvs(db.size());
  for (std::size_t j = 0; j < db.sequences.size(); ++j) {
    for (const Itemset& set : db.sequences[j].itemsets) {
      for (const ItemQuantity& iq : set) bvs.mutable_of(iq.item).set(j);
    }
  }
  return bvs;
}

std::size_t itemset_support(std::span<const Item> items, const ItemBitVectors& bvs) {
  if (items.empty()) return 0;
  BitVector acc = bvs.of(items.front());
  for (std::size_t k = 1; k < items.size(); ++k) acc &= bvs.of(items[k]);
  return acc.count();
}

std::size_t itemset_dissup(std::span<const Item> items, const ItemBitVectors& bvs) {
  BitVector acc(bvs.num_sequences());
  for (Item i : items) acc |= bvs.of(i);
  return acc.count();
}

Bond bond_from_counts(std::size_t support, std::size_t dissup) {
  if (dissup == 0) return {Ratio(), false};
  return {Ratio(support, dissup), true};
}

Bond bond(std::span<const Item> items, const ItemBitVectors& bvs) {
  return bond_from_counts(itemset_support(items, bvs), itemset_dissup(items, bvs));
}

bool rule_occurs(const Rule& r, const Sequence& s) {
  const auto positions = item_positions(s);
  std::uint32_t max_left = 0;
  for (Item i : r.antecedent()) {
    const auto it = positions.find(i);
    if (it == positions.end()) return false;
    max_left = std::max(max_left, it->second);
  }
  for (Item i : r.consequent()) {
    const auto it = positions.find(i);
    if (it == positions.end() || it->second <= max_left) return false;
  }
  return true;
}

BitVector rule_sids(const Rule& r, const SequenceDatabase& db) {
  BitVector sids(db.size());
  for (std::size_t j = 0; j < db.sequences.size(); ++j) {
    if (rule_occurs(r, db.sequences[j])) sids.set(j);
  }
  return sids;
}

Ratio confidence(std::size_t rule_support, std::size_t antecedent_support) {
  if (antecedent_support == 0) throw MeasureError("confidence undefined: antecedent never occurs");
  return Ratio(rule_support, antecedent_support);
}

Ratio confidence(const BitVector& sids_rule, const BitVector& sids_antecedent) {
  return confidence(sids_rule.count(), sids_antecedent.count());
}

Ratio lift(std::size_t rule_support, std::size_t antecedent_support, std::size_t consequent_support,
           std::size_t num_sequences) {
  if (antecedent_support == 0 || consequent_support == 0) {
    throw MeasureError("lift undefined: a rule side never occurs");
  }
  return Ratio(static_cast<std::uint64_t>(num_sequences) * rule_support,
               static_cast<std::uint64_t>(antecedent_support) * consequent_support);
}

Ratio lift(const BitVector& sids_rule, const BitVector& sids_antecedent,
           const BitVector& sids_consequent, std::size_t num_sequences) {
  return lift(sids_rule.count(), sids_antecedent.count(), sids_consequent.count(), num_sequences);
}

Utility rule_utility(const Rule& r, const SequenceDatabase& db) {
  Utility total;
  for (const Sequence& s : db.sequences) {
    if (!rule_occurs(r, s)) continue;
    for (Item i : r.antecedent()) total += item_utility(i, s, db.utilities);
    for (Item i : r.consequent()) total += item_utility(i, s, db.utilities);
  }
  return total;
}

Utility seu_of_item(Item i, const SequenceDatabase& db) {
  Utility total;
  for (const Sequence& s : db.sequences) {
    if (item_positions(s).contains(i)) total += sequence_utility(s, db.utilities);
  }
  return total;
}

Utility seu_of_rule(const BitVector& sids_rule, const SequenceDatabase& db) {
  Utility total;
  for (std::size_t j = 0; j < db.sequences.size(); ++j) {
    if (sids_rule.test(j)) total += sequence_utility(db.sequences[j], db.utilities);
  }
  return total;
}

}  // namespace cousr
