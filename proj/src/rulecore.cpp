#include "cousr/rulecore.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace cousr {

namespace {

enum class ItemClass { kNone, kOnlyLeft, kOnlyRight, kLeftRight };

// Membership test for the expansion classes. `in_rule` must be true when
// `item` belongs to either side of the rule.
ItemClass classify(Item item, std::uint32_t position, bool in_rule, const Rule& r,
                   const RowBounds& b) {
  if (in_rule) return ItemClass::kNone;
  const bool can_left = item > r.last_antecedent() && position < b.first_consequent_pos;
  const bool can_right = item > r.last_consequent() && position > b.last_antecedent_pos;
  if (can_left && can_right) return ItemClass::kLeftRight;
  if (can_left) return ItemClass::kOnlyLeft;
  if (can_right) return ItemClass::kOnlyRight;
  return ItemClass::kNone;
}

Utility* field_for(UtilityListRow& row, ItemClass c) {
  switch (c) {
    case ItemClass::kOnlyLeft:
      return &row.lutil;
    case ItemClass::kOnlyRight:
      return &row.rutil;
    case ItemClass::kLeftRight:
      return &row.lrutil;
    case ItemClass::kNone:
      break;
  }
  return nullptr;
}

// Row of `r` in `seq` from scratch over the indexed entries.
UtilityListRow make_row(const IndexedSequence& seq, const Rule& r, const RowBounds& b) {
  UtilityListRow row;
  row.sid = seq.sid;
  const Item lowest = std::min(r.last_antecedent(), r.last_consequent());
  for (const IndexedEntry& e : seq.entries) {
    const bool in_rule = r.contains(e.item);
    if (in_rule) {
      row.iutil += e.utility;
      continue;
    }
    if (e.item <= lowest) continue;
    if (Utility* f = field_for(row, classify(e.item, e.position, false, r, b))) *f += e.utility;
  }
  return row;
}

void check_order(const Rule& r, Item i, Direction d) {
  if (r.contains(i)) throw std::invalid_argument("expansion item already in rule");
  const Item last = d == Direction::kLeft ? r.last_antecedent() : r.last_consequent();
  if (i <= last) {
    throw std::invalid_argument("expansion item " + std::to_string(id_of(i)) +
                                " is not larger than every item of the extended side");
  }
}

}  // namespace

ExpansionClasses classify_expansion_items(const Rule& r, const Sequence& s) {
  if (!rule_occurs(r, s)) throw std::invalid_argument("rule does not occur in sequence");
  const auto positions = item_positions(s);
  RowBounds b{0, std::numeric_limits<std::uint32_t>::max()};
  for (Item i : r.antecedent()) b.last_antecedent_pos = std::max(b.last_antecedent_pos, positions.at(i));
  for (Item i : r.consequent()) b.first_consequent_pos = std::min(b.first_consequent_pos, positions.at(i));

  ExpansionClasses classes;
  for (const auto& [item, pos] : positions) {
    switch (classify(item, pos, r.contains(item), r, b)) {
      case ItemClass::kOnlyLeft:
        classes.only_left.push_back(item);
        break;
      case ItemClass::kOnlyRight:
        classes.only_right.push_back(item);
        break;
      case ItemClass::kLeftRight:
        classes.left_right.push_back(item);
        break;
      case ItemClass::kNone:
        break;
    }
  }
  return classes;
}

Utility UtilityList::utility() const {
  Utility total;
  for (const auto& row : rows) total += row.iutil;
  return total;
}

Utility ul_total(const UtilityList& ul) {
  Utility total;
  for (const auto& row : ul.rows) total += row.iutil + row.lutil + row.rutil + row.lrutil;
  return total;
}

Utility ul_left_total(const UtilityList& ul) {
  Utility total;
  for (const auto& row : ul.rows) total += row.iutil + row.lutil + row.lrutil;
  return total;
}

UtilityList build_utility_list(const Rule& r, const SequenceDatabase& db) {
  UtilityList ul{r, {}, {}};
  for (const Sequence& s : db.sequences) {
    if (!rule_occurs(r, s)) continue;
    const auto positions = item_positions(s);
    RowBounds b{0, std::numeric_limits<std::uint32_t>::max()};
    for (Item i : r.antecedent()) b.last_antecedent_pos = std::max(b.last_antecedent_pos, positions.at(i));
    for (Item i : r.consequent()) b.first_consequent_pos = std::min(b.first_consequent_pos, positions.at(i));

    UtilityListRow row;
    row.sid = s.sid;
    for (Item i : r.antecedent()) row.iutil += item_utility(i, s, db.utilities);
    for (Item i : r.consequent()) row.iutil += item_utility(i, s, db.utilities);
    const ExpansionClasses c = classify_expansion_items(r, s);
    for (Item i : c.only_left) row.lutil += item_utility(i, s, db.utilities);
    for (Item i : c.only_right) row.rutil += item_utility(i, s, db.utilities);
    for (Item i : c.left_right) row.lrutil += item_utility(i, s, db.utilities);
    ul.rows.push_back(row);
    ul.bounds.push_back(b);
  }
  return ul;
}

const IndexedEntry* IndexedSequence::find(Item i) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), i,
                                   [](const IndexedEntry& e, Item v) { return e.item < v; });
  return it != entries.end() && it->item == i ? &*it : nullptr;
}

std::span<const IndexedEntry> IndexedSequence::after(Item i) const {
  const auto it = std::upper_bound(entries.begin(), entries.end(), i,
                                   [](Item v, const IndexedEntry& e) { return v < e.item; });
  return {it, entries.end()};
}

IndexedDatabase IndexedDatabase::build(const SequenceDatabase& db) {
  const auto items = occurring_items(db);
  return build(db, items);
}

IndexedDatabase IndexedDatabase::build(const SequenceDatabase& db, std::span<const Item> keep) {
  const std::set<Item> kept(keep.begin(), keep.end());
  std::set<Item> present;
  IndexedDatabase out;
  out.sequences_.reserve(db.size());
  for (std::size_t j = 0; j < db.sequences.size(); ++j) {
    const Sequence& s = db.sequences[j];
    IndexedSequence seq;
    seq.sid = static_cast<std::uint32_t>(j + 1);
    for (std::size_t k = 0; k < s.itemsets.size(); ++k) {
      for (const ItemQuantity& iq : s.itemsets[k]) {
        if (!kept.contains(iq.item)) continue;
        const auto price = db.utilities.find(iq.item);
        if (price == db.utilities.end()) {
          throw DataError("item " + std::to_string(id_of(iq.item)) + " has no utility entry");
        }
        const Utility u = price->second.times(iq.quantity);
        seq.entries.push_back({iq.item, static_cast<std::uint32_t>(k + 1), u});
        seq.utility += u;
        present.insert(iq.item);
      }
    }
    std::sort(seq.entries.begin(), seq.entries.end(),
              [](const IndexedEntry& a, const IndexedEntry& b) { return a.item < b.item; });
    out.sequences_.push_back(std::move(seq));
  }
  out.items_.assign(present.begin(), present.end());
  return out;
}

ItemBitVectors build_item_bitvectors(const IndexedDatabase& db) {
  ItemBitVectors bvs(db.num_sequences());
  for (const IndexedSequence& seq : db.sequences()) {
    for (const IndexedEntry& e : seq.entries) bvs.mutable_of(e.item).set(seq.sid - 1);
  }
  return bvs;
}

UtilityList build_initial_utility_list(const Rule& r, const IndexedDatabase& db) {
  if (r.antecedent().size() != 1 || r.consequent().size() != 1) {
    throw std::invalid_argument("initial utility-lists are for 1*1 rules, got " + r.size_label());
  }
  UtilityList ul{r, {}, {}};
  const Item x = r.last_antecedent();
  const Item y = r.last_consequent();
  for (const IndexedSequence& seq : db.sequences()) {
    const IndexedEntry* ex = seq.find(x);
    const IndexedEntry* ey = seq.find(y);
    if (ex == nullptr || ey == nullptr || ex->position >= ey->position) continue;
    const RowBounds b{ex->position, ey->position};
    ul.rows.push_back(make_row(seq, r, b));
    ul.bounds.push_back(b);
  }
  return ul;
}

UtilityList expand_utility_list(const UtilityList& parent, Item i, Direction direction,
                                const IndexedDatabase& db) {
  const Rule& old_rule = parent.rule;
  check_order(old_rule, i, direction);

  std::vector<Item> antecedent = old_rule.antecedent();
  std::vector<Item> consequent = old_rule.consequent();
  (direction == Direction::kLeft ? antecedent : consequent).push_back(i);
  UtilityList child{Rule(std::move(antecedent), std::move(consequent)), {}, {}};
  const Rule& new_rule = child.rule;

  // Every item classified for the child was classified for the parent, so
  // only entries above the smaller of the parent's last items can move.
  const Item lowest = std::min(old_rule.last_antecedent(), old_rule.last_consequent());

  for (std::size_t k = 0; k < parent.rows.size(); ++k) {
    const UtilityListRow& row = parent.rows[k];
    const RowBounds& b = parent.bounds[k];
    const IndexedSequence& seq = db.by_sid(row.sid);
    const IndexedEntry* added = seq.find(i);
    if (added == nullptr) continue;

    RowBounds nb = b;
    if (direction == Direction::kLeft) {
      if (added->position >= b.first_consequent_pos) continue;
      nb.last_antecedent_pos = std::max(b.last_antecedent_pos, added->position);
    } else {
      if (added->position <= b.last_antecedent_pos) continue;
      nb.first_consequent_pos = std::min(b.first_consequent_pos, added->position);
    }

    UtilityListRow next = row;
    next.iutil += added->utility;
    // Move each affected item's utility from its old class to its new one.
    // The added item itself leaves its class; items may also migrate between
    // classes when the bounds tighten.
    for (const IndexedEntry& e : seq.after(lowest)) {
      const ItemClass before = classify(e.item, e.position, old_rule.contains(e.item), old_rule, b);
      const ItemClass after = classify(e.item, e.position, new_rule.contains(e.item), new_rule, nb);
      if (before == after) continue;
      if (Utility* f = field_for(next, before)) *f -= e.utility;
      if (Utility* f = field_for(next, after)) *f += e.utility;
    }
    child.rows.push_back(next);
    child.bounds.push_back(nb);
  }
  return child;
}

BondMatrix build_bond_matrix(const IndexedDatabase& db, const ItemBitVectors& bvs) {
  PairTable<std::uint32_t> co_support;
  for (const IndexedSequence& seq : db.sequences()) {
    for (std::size_t p = 0; p < seq.entries.size(); ++p) {
      for (std::size_t q = p + 1; q < seq.entries.size(); ++q) {
        ++co_support.at_or_insert(seq.entries[p].item, seq.entries[q].item);
      }
    }
  }
  BondMatrix m;
  for (const auto& [pair, sup] : co_support.sorted_entries()) {
    const std::size_t dissup = bvs.of(pair.first).count() + bvs.of(pair.second).count() - sup;
    m.table_.at_or_insert(pair.first, pair.second) = Ratio(sup, dissup);
  }
  return m;
}

Esucs build_esucs(const IndexedDatabase& db) {
  Esucs e;
  for (const IndexedSequence& seq : db.sequences()) {
    for (const IndexedEntry& a : seq.entries) {
      for (const IndexedEntry& b : seq.entries) {
        if (a.position < b.position) e.add(a.item, b.item, seq.utility);
      }
    }
  }
  return e;
}

std::vector<UtilityList> build_initial_utility_lists(const IndexedDatabase& db, const Esucs& esucs,
                                                     Utility min_util) {
  std::vector<UtilityList> lists;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (const IndexedSequence& seq : db.sequences()) {
    for (const IndexedEntry& a : seq.entries) {
      for (const IndexedEntry& b : seq.entries) {
        if (a.position >= b.position) continue;
        const auto seu = esucs.get(a.item, b.item);
        if (!seu || *seu < min_util) continue;
        const std::uint64_t key = (static_cast<std::uint64_t>(id_of(a.item)) << 32) | id_of(b.item);
        auto [it, inserted] = slot.emplace(key, lists.size());
        if (inserted) lists.push_back(UtilityList{Rule({a.item}, {b.item}), {}, {}});
        UtilityList& ul = lists[it->second];
        const RowBounds bounds{a.position, b.position};
        ul.rows.push_back(make_row(seq, ul.rule, bounds));
        ul.bounds.push_back(bounds);
      }
    }
  }
  std::sort(lists.begin(), lists.end(),
            [](const UtilityList& x, const UtilityList& y) { return x.rule < y.rule; });
  return lists;
}

void dump_utility_list(const UtilityList& ul, std::ostream& out) {
  out << "# " << ul.rule.to_string() << "\n";
  out << "sid\tiutil\tlutil\trutil\tlrutil\n";
  for (const auto& row : ul.rows) {
    out << row.sid << '\t' << row.iutil.to_string() << '\t' << row.lutil.to_string() << '\t'
        << row.rutil.to_string() << '\t' << row.lrutil.to_string() << '\n';
  }
}

void dump_bond_matrix(const BondMatrix& m, std::ostream& out) {
  out << "a\tb\tbond\n";
  for (const auto& [pair, value] : m.table().sorted_entries()) {
    out << id_of(pair.first) << '\t' << id_of(pair.second) << '\t' << value.to_string() << '\n';
  }
}

void dump_esucs(const Esucs& e, std::ostream& out) {
  out << "a\tb\tseu\n";
  for (const auto& [pair, value] : e.table().sorted_entries()) {
    out << id_of(pair.first) << '\t' << id_of(pair.second) << '\t' << value.to_string() << '\n';
  }
}

}  // namespace cousr
