#include "cousr/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

namespace cousr {

namespace {

using Mask = std::uint32_t;

// One sequence over local item indices: the union of the first p itemsets
// and the union of the remaining ones, for every split point p.
struct SplitView {
  Mask all = 0;
  std::vector<Mask> prefix;  // prefix[p] = I_1 | ... | I_p, p = 0..l
  std::vector<Mask> suffix;  // suffix[p] = I_{p+1} | ... | I_l
  std::vector<Utility> utility;  // per local item, 0 when absent
};

bool occurs(const SplitView& s, Mask x, Mask y) {
  const std::size_t l = s.prefix.size() - 1;
  for (std::size_t p = 1; p < l; ++p) {
    if ((x & ~s.prefix[p]) == 0 && (y & ~s.suffix[p]) == 0) return true;
  }
  return false;
}

std::vector<Item> items_of(Mask m, const std::vector<Item>& items) {
  std::vector<Item> out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (m & (Mask{1} << k)) out.push_back(items[k]);
  }
  return out;
}

}  // namespace

void for_each_candidate_rule(const SequenceDatabase& db, const OracleLimits& limits,
                             const std::function<void(const ScoredRule&)>& visit) {
  std::vector<Item> items;
  for (const Sequence& s : db.sequences) {
    for (const Itemset& set : s.itemsets) {
      for (const ItemQuantity& iq : set) items.push_back(iq.item);
    }
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());

  if (items.size() > limits.max_items || items.size() > 31) {
    throw OracleLimitError("oracle limit exceeded: " + std::to_string(items.size()) + " items (max " +
                           std::to_string(limits.max_items) + ")");
  }
  if (db.sequences.size() > limits.max_sequences) {
    throw OracleLimitError("oracle limit exceeded: " + std::to_string(db.sequences.size()) +
                           " sequences (max " + std::to_string(limits.max_sequences) + ")");
  }

  std::map<Item, std::size_t> local;
  for (std::size_t k = 0; k < items.size(); ++k) local[items[k]] = k;

  std::vector<SplitView> views;
  for (const Sequence& s : db.sequences) {
    SplitView v;
    v.utility.assign(items.size(), Utility());
    std::vector<Mask> sets;
    for (const Itemset& set : s.itemsets) {
      Mask m = 0;
      for (const ItemQuantity& iq : set) {
        const std::size_t k = local.at(iq.item);
        m |= Mask{1} << k;
        const auto price = db.utilities.find(iq.item);
        if (price == db.utilities.end()) {
          throw DataError("item " + std::to_string(id_of(iq.item)) + " has no utility entry");
        }
        v.utility[k] += price->second.times(iq.quantity);
      }
      sets.push_back(m);
      v.all |= m;
    }
    const std::size_t l = sets.size();
    v.prefix.assign(l + 1, 0);
    v.suffix.assign(l + 1, 0);
    for (std::size_t p = 1; p <= l; ++p) v.prefix[p] = v.prefix[p - 1] | sets[p - 1];
    for (std::size_t p = l; p-- > 0;) v.suffix[p] = v.suffix[p + 1] | sets[p];
    views.push_back(std::move(v));
  }

  const std::size_t n = db.sequences.size();
  auto support_of = [&](Mask m) {
    std::uint64_t c = 0;
    for (const SplitView& v : views) c += (v.all & m) == m ? 1 : 0;
    return c;
  };
  auto dissup_of = [&](Mask m) {
    std::uint64_t c = 0;
    for (const SplitView& v : views) c += (v.all & m) != 0 ? 1 : 0;
    return c;
  };
  auto ratio_or_zero = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? Ratio() : Ratio(num, den);
  };

  const Mask full = items.empty() ? 0 : static_cast<Mask>((std::uint64_t{1} << items.size()) - 1);
  for (Mask x = 1; x <= full && full != 0; ++x) {
    const Mask rest = full & ~x;
    const std::uint64_t sup_x = support_of(x);
    const std::uint64_t dis_x = dissup_of(x);
    for (Mask y = rest; y != 0; y = (y - 1) & rest) {
      std::uint64_t sup_r = 0;
      Utility u;
      for (const SplitView& v : views) {
        if (!occurs(v, x, y)) continue;
        ++sup_r;
        for (std::size_t k = 0; k < items.size(); ++k) {
          if ((x | y) & (Mask{1} << k)) u += v.utility[k];
        }
      }
      const std::uint64_t sup_y = support_of(y);
      ScoredRule sr{Rule(items_of(x, items), items_of(y, items)),
                    u,
                    static_cast<std::uint32_t>(sup_r),
                    ratio_or_zero(sup_r, sup_x),
                    ratio_or_zero(n * sup_r, sup_x * sup_y),
                    ratio_or_zero(sup_x, dis_x),
                    ratio_or_zero(sup_y, dissup_of(y))};
      visit(sr);
    }
  }
}

std::vector<ScoredRule> enumerate_all_rules(const SequenceDatabase& db, const OracleLimits& limits) {
  std::vector<ScoredRule> out;
  for_each_candidate_rule(db, limits, [&](const ScoredRule& r) { out.push_back(r); });
  std::sort(out.begin(), out.end(), [](const ScoredRule& a, const ScoredRule& b) { return a.rule < b.rule; });
  return out;
}

std::vector<ScoredRule> oracle_chusrs(const SequenceDatabase& db, const Thresholds& t,
                                      const OracleLimits& limits) {
  std::vector<ScoredRule> out;
  for_each_candidate_rule(db, limits, [&](const ScoredRule& r) {
    // A rule that never occurs is not a rule of the database.
    if (r.support == 0) return;
    if (r.utility >= t.min_util && r.confidence >= t.min_conf && r.lift >= t.min_lift &&
        r.bond_antecedent >= t.min_bond && r.bond_consequent >= t.min_bond) {
      out.push_back(r);
    }
  });
  std::sort(out.begin(), out.end(), [](const ScoredRule& a, const ScoredRule& b) { return a.rule < b.rule; });
  return out;
}

}  // namespace cousr
