#include "cousr/miner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <thread>

namespace cousr {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kBase:
      return "base";
    case Variant::kS6:
      return "s6";
    case Variant::kS7:
      return "s7";
    case Variant::kS6S7:
      return "s6s7";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "base") return Variant::kBase;
  if (text == "s6") return Variant::kS6;
  if (text == "s7") return Variant::kS7;
  if (text == "s6s7") return Variant::kS6S7;
  throw ConfigError("unknown variant '" + std::string(text) + "' (expected base, s6, s7 or s6s7)");
}

std::string_view to_string(PruneReason r) {
  switch (r) {
    case PruneReason::kUnpromisingItem:
      return "unpromising-item";
    case PruneReason::kRuleSeu:
      return "rule-seu";
    case PruneReason::kBond:
      return "bond";
    case PruneReason::kRightBound:
      return "right-bound";
    case PruneReason::kLeftBound:
      return "left-bound";
    case PruneReason::kBondMatrix:
      return "bond-matrix";
    case PruneReason::kEsucs:
      return "esucs";
    case PruneReason::kConfidence:
      return "confidence";
  }
  return "?";
}

MinerConfig MinerConfig::for_variant(const Thresholds& t, Variant v) {
  MinerConfig cfg;
  cfg.thresholds = t;
  cfg.use_bond_matrix = v == Variant::kS6 || v == Variant::kS6S7;
  cfg.use_esucs = v == Variant::kS7 || v == Variant::kS6S7;
  return cfg;
}

void MinerConfig::validate() const {
  const Ratio one = Ratio::integer(1);
  if (thresholds.min_util < Utility()) throw ConfigError("min-util must be >= 0");
  if (thresholds.min_conf > one) throw ConfigError("min-conf must lie in [0, 1]");
  if (thresholds.min_bond > one) throw ConfigError("min-bond must lie in [0, 1]");
  if (max_side && *max_side == 0) throw ConfigError("max-side must be >= 1");
}

MinerStats& MinerStats::operator+=(const MinerStats& o) {
  promising_items += o.promising_items;
  initial_rules += o.initial_rules;
  pruned_unpromising_items += o.pruned_unpromising_items;
  pruned_rule_seu += o.pruned_rule_seu;
  pruned_bond += o.pruned_bond;
  pruned_right_bound += o.pruned_right_bound;
  pruned_left_bound += o.pruned_left_bound;
  pruned_bond_matrix += o.pruned_bond_matrix;
  pruned_esucs += o.pruned_esucs;
  pruned_confidence += o.pruned_confidence;
  candidates += o.candidates;
  utility_lists_built += o.utility_lists_built;
  utility_list_tuples += o.utility_list_tuples;
  elapsed_ms += o.elapsed_ms;
  return *this;
}

FilteredDatabase filter_unpromising_items(const SequenceDatabase& db, Utility min_util) {
  std::map<Item, Utility> seu;
  for (const Sequence& s : db.sequences) {
    const Utility su = sequence_utility(s, db.utilities);
    for (const Itemset& set : s.itemsets) {
      for (const ItemQuantity& iq : set) seu[iq.item] += su;
    }
  }
  FilteredDatabase out;
  std::set<Item> keep;
  for (const auto& [item, value] : seu) {
    if (value >= min_util) {
      out.promising.push_back(item);
      keep.insert(item);
    }
  }
  out.db.utilities = db.utilities;
  out.db.sequences.reserve(db.size());
  for (const Sequence& s : db.sequences) {
    Sequence filtered{s.sid, {}};
    for (const Itemset& set : s.itemsets) {
      Itemset kept;
      for (const ItemQuantity& iq : set) {
        if (keep.contains(iq.item)) kept.push_back(iq);
      }
      if (!kept.empty()) filtered.itemsets.push_back(std::move(kept));
    }
    out.db.sequences.push_back(std::move(filtered));
  }
  return out;
}

InitialRules enumerate_initial_rules(const IndexedDatabase& db, const ItemBitVectors& bvs,
                                     Utility min_util) {
  InitialRules out;
  out.esucs = build_esucs(db);
  for (const auto& [pair, seu] : out.esucs.table().sorted_entries()) {
    if (seu < min_util) ++out.pruned_by_seu;
  }
  for (UtilityList& ul : build_initial_utility_lists(db, out.esucs, min_util)) {
    const BitVector& bx = bvs.of(ul.rule.last_antecedent());
    const BitVector& by = bvs.of(ul.rule.last_consequent());
    out.rules.push_back(RuleContext{std::move(ul), bx, by, bx, by});
  }
  return out;
}

ExpansionSearch::ExpansionSearch(const IndexedDatabase& db, const ItemBitVectors& bvs,
                                 const BondMatrix* bond_matrix, const Esucs* esucs,
                                 const MinerConfig& cfg, const PruneObserver* observer)
    : db_(db),
      bvs_(bvs),
      bond_matrix_(bond_matrix),
      esucs_(esucs),
      cfg_(cfg),
      observer_(observer && *observer ? observer : nullptr) {}

void ExpansionSearch::prune(PruneReason reason, const std::vector<Item>& x,
                            const std::vector<Item>& y) {
  if (observer_ != nullptr) (*observer_)(PruneEvent{reason, x, y});
}

void ExpansionSearch::maybe_emit(const RuleContext& ctx, const Ratio& conf, const Ratio& lift) {
  const Thresholds& t = cfg_.thresholds;
  const Utility u = ctx.ul.utility();
  if (u < t.min_util || conf < t.min_conf || lift < t.min_lift) return;
  const Ratio bond_x = Ratio(ctx.sids_x.count(), ctx.sids_or_x.count());
  const Ratio bond_y = Ratio(ctx.sids_y.count(), ctx.sids_or_y.count());
  if (bond_x < t.min_bond || bond_y < t.min_bond) return;
  emitted_.push_back(ScoredRule{ctx.rule(), u, static_cast<std::uint32_t>(ctx.ul.support()), conf,
                                lift, bond_x, bond_y});
}

void ExpansionSearch::explore(const RuleContext& ctx) {
  const std::size_t sup = ctx.ul.support();
  const Ratio conf = confidence(sup, ctx.sids_x.count());
  const Ratio lft = lift(sup, ctx.sids_x.count(), ctx.sids_y.count(), db_.num_sequences());
  maybe_emit(ctx, conf, lft);

  const Utility min_util = cfg_.thresholds.min_util;
  if (ul_total(ctx.ul) >= min_util) {
    if (cfg_.conf_prune && conf < cfg_.thresholds.min_conf) {
      ++stats_.pruned_confidence;
      prune(PruneReason::kConfidence, ctx.rule().antecedent(), ctx.rule().consequent());
    } else {
      right_expansion(ctx);
    }
  } else {
    ++stats_.pruned_right_bound;
    prune(PruneReason::kRightBound, ctx.rule().antecedent(), ctx.rule().consequent());
  }
  if (ul_left_total(ctx.ul) >= min_util) {
    left_expansion(ctx);
  } else {
    ++stats_.pruned_left_bound;
    prune(PruneReason::kLeftBound, ctx.rule().antecedent(), ctx.rule().consequent());
  }
}

std::vector<Item> ExpansionSearch::candidates(const UtilityList& ul, Direction d) const {
  const Rule& r = ul.rule;
  const Item last = d == Direction::kLeft ? r.last_antecedent() : r.last_consequent();
  std::vector<Item> out;
  for (std::size_t k = 0; k < ul.rows.size(); ++k) {
    const RowBounds& b = ul.bounds[k];
    for (const IndexedEntry& e : db_.by_sid(ul.rows[k].sid).after(last)) {
      const bool feasible = d == Direction::kLeft ? e.position < b.first_consequent_pos
                                                  : e.position > b.last_antecedent_pos;
      if (feasible && !r.contains(e.item)) out.push_back(e.item);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void ExpansionSearch::right_expansion(const RuleContext& ctx) {
  const Rule& r = ctx.rule();
  if (cfg_.max_side && r.consequent().size() >= *cfg_.max_side) return;
  const Thresholds& t = cfg_.thresholds;
  const Item x = r.last_antecedent();
  const Item y = r.last_consequent();
  const std::size_t sup_x = ctx.sids_x.count();

  for (Item i : candidates(ctx.ul, Direction::kRight)) {
    ++stats_.candidates;
    auto grown = [&] {
      std::vector<Item> ys = r.consequent();
      ys.push_back(i);
      return ys;
    };
    if (esucs_ != nullptr) {
      const auto seu = esucs_->get(x, i);
      if (!seu || *seu < t.min_util) {
        ++stats_.pruned_esucs;
        prune(PruneReason::kEsucs, r.antecedent(), grown());
        continue;
      }
    }
    if (bond_matrix_ != nullptr) {
      const auto b = bond_matrix_->get(y, i);
      if (!b || *b < t.min_bond) {
        ++stats_.pruned_bond_matrix;
        prune(PruneReason::kBondMatrix, r.antecedent(), grown());
        continue;
      }
    }
    const BitVector& bv_i = bvs_.of(i);
    if (Ratio(ctx.sids_y.and_count(bv_i), ctx.sids_or_y.or_count(bv_i)) < t.min_bond) {
      ++stats_.pruned_bond;
      prune(PruneReason::kBond, r.antecedent(), grown());
      continue;
    }

    RuleContext next{expand_utility_list(ctx.ul, i, Direction::kRight, db_), ctx.sids_x,
                     ctx.sids_y & bv_i, ctx.sids_or_x, ctx.sids_or_y | bv_i};
    ++stats_.utility_lists_built;
    stats_.utility_list_tuples += next.ul.rows.size();

    const std::size_t sup = next.ul.support();
    const Ratio conf = confidence(sup, sup_x);
    const Ratio lft = lift(sup, sup_x, next.sids_y.count(), db_.num_sequences());
    maybe_emit(next, conf, lft);

    if (ul_total(next.ul) >= t.min_util) {
      if (cfg_.conf_prune && conf < t.min_conf) {
        ++stats_.pruned_confidence;
        prune(PruneReason::kConfidence, next.rule().antecedent(), next.rule().consequent());
      } else {
        right_expansion(next);
      }
    } else {
      ++stats_.pruned_right_bound;
      prune(PruneReason::kRightBound, next.rule().antecedent(), next.rule().consequent());
    }
    if (ul_left_total(next.ul) >= t.min_util) {
      left_expansion(next);
    } else {
      ++stats_.pruned_left_bound;
      prune(PruneReason::kLeftBound, next.rule().antecedent(), next.rule().consequent());
    }
  }
}

void ExpansionSearch::left_expansion(const RuleContext& ctx) {
  const Rule& r = ctx.rule();
  if (cfg_.max_side && r.antecedent().size() >= *cfg_.max_side) return;
  const Thresholds& t = cfg_.thresholds;
  const Item x = r.last_antecedent();
  const Item y = r.last_consequent();
  const std::size_t sup_y = ctx.sids_y.count();

  for (Item i : candidates(ctx.ul, Direction::kLeft)) {
    ++stats_.candidates;
    auto grown = [&] {
      std::vector<Item> xs = r.antecedent();
      xs.push_back(i);
      return xs;
    };
    if (esucs_ != nullptr) {
      const auto seu = esucs_->get(i, y);
      if (!seu || *seu < t.min_util) {
        ++stats_.pruned_esucs;
        prune(PruneReason::kEsucs, grown(), r.consequent());
        continue;
      }
    }
    if (bond_matrix_ != nullptr) {
      const auto b = bond_matrix_->get(x, i);
      if (!b || *b < t.min_bond) {
        ++stats_.pruned_bond_matrix;
        prune(PruneReason::kBondMatrix, grown(), r.consequent());
        continue;
      }
    }
    const BitVector& bv_i = bvs_.of(i);
    if (Ratio(ctx.sids_x.and_count(bv_i), ctx.sids_or_x.or_count(bv_i)) < t.min_bond) {
      ++stats_.pruned_bond;
      prune(PruneReason::kBond, grown(), r.consequent());
      continue;
    }

    RuleContext next{expand_utility_list(ctx.ul, i, Direction::kLeft, db_), ctx.sids_x & bv_i,
                     ctx.sids_y, ctx.sids_or_x | bv_i, ctx.sids_or_y};
    ++stats_.utility_lists_built;
    stats_.utility_list_tuples += next.ul.rows.size();

    const std::size_t sup = next.ul.support();
    const std::size_t sup_x = next.sids_x.count();
    const Ratio conf = confidence(sup, sup_x);
    const Ratio lft = lift(sup, sup_x, sup_y, db_.num_sequences());
    maybe_emit(next, conf, lft);

    if (ul_left_total(next.ul) >= t.min_util) {
      left_expansion(next);
    } else {
      ++stats_.pruned_left_bound;
      prune(PruneReason::kLeftBound, next.rule().antecedent(), next.rule().consequent());
    }
  }
}

MiningResult mine(const SequenceDatabase& db, const MinerConfig& cfg, const PruneObserver& observer) {
  cfg.validate();
  check_utility_coverage(db);
  const auto start = std::chrono::steady_clock::now();

  MiningResult result;
  MinerStats& stats = result.stats;
  const Utility min_util = cfg.thresholds.min_util;

  const FilteredDatabase filtered = filter_unpromising_items(db, min_util);
  const auto all_items = occurring_items(db);
  stats.promising_items = filtered.promising.size();
  stats.pruned_unpromising_items = all_items.size() - filtered.promising.size();
  if (observer) {
    for (Item i : all_items) {
      if (!std::binary_search(filtered.promising.begin(), filtered.promising.end(), i)) {
        observer(PruneEvent{PruneReason::kUnpromisingItem, {i}, {}});
      }
    }
  }

  const IndexedDatabase index = IndexedDatabase::build(filtered.db, filtered.promising);
  const ItemBitVectors bvs = build_item_bitvectors(index);
  std::optional<BondMatrix> bond_matrix;
  if (cfg.use_bond_matrix) bond_matrix = build_bond_matrix(index, bvs);

  InitialRules initial = enumerate_initial_rules(index, bvs, min_util);
  stats.initial_rules = initial.rules.size();
  stats.pruned_rule_seu = initial.pruned_by_seu;
  stats.utility_lists_built = initial.rules.size();
  for (const RuleContext& ctx : initial.rules) stats.utility_list_tuples += ctx.ul.rows.size();
  if (observer) {
    for (const auto& [pair, seu] : initial.esucs.table().sorted_entries()) {
      if (seu < min_util) observer(PruneEvent{PruneReason::kRuleSeu, {pair.first}, {pair.second}});
    }
  }

  const Esucs* esucs = cfg.use_esucs ? &initial.esucs : nullptr;
  const BondMatrix* bm = bond_matrix ? &*bond_matrix : nullptr;

  unsigned workers = cfg.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : cfg.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, initial.rules.size())));

  std::mutex observer_mutex;
  PruneObserver serialized;
  if (observer) {
    serialized = [&](const PruneEvent& e) {
      std::lock_guard lock(observer_mutex);
      observer(e);
    };
  }

  std::vector<ExpansionSearch> searches;
  searches.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) searches.emplace_back(index, bvs, bm, esucs, cfg, &serialized);

  if (workers == 1) {
    for (const RuleContext& ctx : initial.rules) searches[0].explore(ctx);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = next++; k < initial.rules.size(); k = next++) searches[w].explore(initial.rules[k]);
      });
    }
  }

  for (ExpansionSearch& s : searches) {
    stats += s.stats();
    auto& rules = s.emitted();
    result.rules.insert(result.rules.end(), std::make_move_iterator(rules.begin()),
                        std::make_move_iterator(rules.end()));
  }
  std::sort(result.rules.begin(), result.rules.end(),
            [](const ScoredRule& a, const ScoredRule& b) { return a.rule < b.rule; });

  stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace cousr
