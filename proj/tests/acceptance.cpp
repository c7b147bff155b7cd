// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cousr/measures.hpp"
#include "cousr/miner.hpp"
#include "cousr/oracle.hpp"
#include "cousr/rulecore.hpp"
#include "cousr/synthetic.hpp"
#include "support.hpp"

using namespace cousr;
using namespace cousr::testing;

namespace {

constexpr Variant kVariants[] = {Variant::kBase, Variant::kS6, Variant::kS7, Variant::kS6S7};

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_ < 5) notes_ << (failures_ > 0 ? "; " : "") << what;
    if (!ok) ++failures_;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failed check(s): " + notes_.str()};
  }

 private:
  std::size_t failures_ = 0;
  std::ostringstream notes_;
};

MiningResult run(const SequenceDatabase& db, const Thresholds& t, Variant v = Variant::kS6S7) {
  return mine(db, MinerConfig::for_variant(t, v));
}

bool superset(const std::vector<Item>& big, const std::vector<Item>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// `to` extends `from` only with items above every item of `from`.
bool grows(const std::vector<Item>& from, const std::vector<Item>& to) {
  if (!superset(to, from)) return false;
  for (Item i : to) {
    if (!std::binary_search(from.begin(), from.end(), i) && i <= from.back()) return false;
  }
  return true;
}

Outcome golden_example() {
  Checker check;
  const SequenceDatabase db = example_db();
  const std::vector<Rule> expected{Rule({a, b, c, d}, {g}), Rule({a, b, d}, {g}), Rule({a, d}, {g}),
                                   Rule({b, d}, {g})};
  const std::int64_t utilities[] = {55, 74, 54, 53};
  const auto start = std::chrono::steady_clock::now();
  for (Variant v : kVariants) {
    const auto rules = run(db, example_thresholds(), v).rules;
    const std::string tag = std::string(to_string(v)) + ": ";
    check.expect(rules_of(rules) == expected, tag + "rule set differs");
    if (rules.size() != expected.size()) continue;
    for (std::size_t k = 0; k < rules.size(); ++k) {
      check.expect(rules[k].utility == units(utilities[k]), tag + "utility of " + rules[k].rule.to_string());
      check.expect(rules[k].confidence == Ratio(1, 1), tag + "confidence of " + rules[k].rule.to_string());
      check.expect(rules[k].lift == Ratio(5, 4), tag + "lift of " + rules[k].rule.to_string());
    }
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  check.expect(ms < 1000.0, "took " + std::to_string(ms) + " ms");
  return check.done("4 rules, u = 55/74/54/53, conf 1, lift 1.25, all variants");
}

Outcome intermediate_values() {
  Checker check;
  const SequenceDatabase db = example_db();
  const auto bvs = build_item_bitvectors(db);
  const BitVector ab_sids = rule_sids(Rule({a}, {b}), db);
  check.expect(confidence(ab_sids, bvs.of(a)) == Ratio(2, 5), "conf(a=>b)");
  check.expect(rule_utility(Rule({a}, {b}), db) == units(24), "u(a=>b)");
  check.expect(seu_of_rule(ab_sids, db) == units(62), "SEU(a=>b)");
  check.expect(bond(items({a, b}), bvs).value == Ratio(1, 1), "bond({a,b})");
  check.expect(lift(rule_sids(Rule({a, b}, {g}), db), bvs.of(a) & bvs.of(b), bvs.of(g), db.size()) == Ratio(1, 1),
           "lift({a,b}=>{g})");
  const std::int64_t su[] = {21, 34, 28, 22, 42};
  for (std::size_t k = 0; k < db.size(); ++k) {
    check.expect(sequence_utility(db.sequences[k], db.utilities) == units(su[k]), "SU(S" + std::to_string(k + 1) + ")");
  }
  check.expect(bvs.of(a).to_string() == "11111", "bv(a)");
  check.expect(bvs.of(c).to_string() == "01001", "bv(c)");
  check.expect(itemset_support(items({a, c}), bvs) == 2, "sup({a,c})");
  check.expect(itemset_dissup(items({a, c}), bvs) == 5, "dissup({a,c})");

  const IndexedDatabase index = IndexedDatabase::build(db);
  const UtilityList ae = build_initial_utility_list(Rule({a}, {e}), index);
  const UtilityListRow s1{1, units(9), units(5), units(2), units(0)};
  check.expect(!ae.rows.empty() && ae.rows.front() == s1, "UL({a}=>{e}) row S1");
  const UtilityList ace = expand_utility_list(ae, c, Direction::kLeft, index);
  const UtilityListRow s2{2, units(16), units(9), units(4), units(0)};
  check.expect(std::find(ace.rows.begin(), ace.rows.end(), s2) != ace.rows.end(), "UL({a,c}=>{e}) row S2");
  return check.done("16 values exact");
}

Outcome oracle_equivalence() {
  Checker check;
  std::mt19937_64 rng(2024);
  constexpr int kDatabases = 2000;
  std::size_t rules = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < kDatabases; ++k) {
    const SequenceDatabase db = generate_small_database(rng);
    const Thresholds t = random_thresholds(rng, db);
    const auto expected = oracle_chusrs(db, t);
    rules += expected.size();
    for (Variant v : kVariants) {
      check.expect(run(db, t, v).rules == expected, "database " + std::to_string(k) + " variant " + std::string(to_string(v)));
    }
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.expect(s < 60.0, "took " + std::to_string(s) + " s");
  return check.done(std::to_string(kDatabases) + " databases x 4 variants, " + std::to_string(rules) +
                " oracle rules, " + std::to_string(s).substr(0, 5) + " s");
}

Outcome strategy_invariance() {
  Checker check;
  std::size_t checked = 0;
  auto compare = [&](const SequenceDatabase& db, const Thresholds& t, const std::string& name) {
    const auto base = run(db, t, Variant::kBase).rules;
    for (Variant v : {Variant::kS6, Variant::kS7, Variant::kS6S7}) {
      check.expect(run(db, t, v).rules == base, name + " " + std::string(to_string(v)));
    }
    ++checked;
  };
  compare(example_db(), example_thresholds(), "example");
  compare(example_db(), Thresholds{}, "example/zero");
  std::mt19937_64 rng(77);
  for (int k = 0; k < 1000; ++k) {
    const SequenceDatabase db = generate_small_database(rng);
    compare(db, random_thresholds(rng, db), "random " + std::to_string(k));
  }
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SequenceDatabase db = generate_synthetic(SyntheticSpec{1000, 40, 6, seed});
    compare(db, Thresholds{units(400), Ratio(1, 10), Ratio(1, 20), Ratio(0, 1)}, "synthetic " + std::to_string(seed));
  }
  return check.done(std::to_string(checked) + " databases, identical rule sets");
}

Outcome pruning_effectiveness() {
  Checker check;
  std::ostringstream summary;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SequenceDatabase db = generate_synthetic(SyntheticSpec{2000, 100, 8, seed});
    for (std::int64_t min_util : {300, 1000}) {
      const Thresholds t{units(min_util), Ratio(1, 10), Ratio(1, 10), Ratio(0, 1)};
      const MinerStats base = run(db, t, Variant::kBase).stats;
      const MinerStats s6 = run(db, t, Variant::kS6).stats;
      const MinerStats s7 = run(db, t, Variant::kS7).stats;
      const MinerStats both = run(db, t, Variant::kS6S7).stats;
      const std::string tag = "seed " + std::to_string(seed) + " minutil " + std::to_string(min_util) + ": ";
      check.expect(both.utility_lists_built <= s6.utility_lists_built, tag + "s6s7 > s6");
      check.expect(s6.utility_lists_built <= base.utility_lists_built, tag + "s6 > base");
      check.expect(both.utility_lists_built <= s7.utility_lists_built, tag + "s6s7 > s7");
      check.expect(s7.utility_lists_built <= base.utility_lists_built, tag + "s7 > base");
      if (min_util == 300) {
        check.expect(s6.pruned_bond_matrix > 0, tag + "no strategy 6 prunes");
        check.expect(s7.pruned_esucs > 0, tag + "no strategy 7 prunes");
      }
      if (seed == 1 && min_util == 300) {
        summary << "ULs base/s6/s7/s6s7 = " << base.utility_lists_built << "/" << s6.utility_lists_built << "/"
                << s7.utility_lists_built << "/" << both.utility_lists_built << ", pruned s6 "
                << s6.pruned_bond_matrix << ", s7 " << s7.pruned_esucs;
      }
    }
  }
  return check.done(summary.str());
}

Outcome threshold_monotonicity() {
  Checker check;
  std::size_t chains = 0;
  auto sweep = [&](const SequenceDatabase& db, const Thresholds& start, const std::vector<std::int64_t>& util_steps,
                   const std::string& name) {
    const std::vector<Ratio> unit_steps{Ratio(0, 1), Ratio(1, 10), Ratio(3, 10), Ratio(1, 2), Ratio(7, 10), Ratio(1, 1)};
    const std::vector<Ratio> lift_steps{Ratio(0, 1), Ratio(1, 2), Ratio(1, 1), Ratio(11, 10), Ratio(3, 2), Ratio(2, 1)};
    for (int which = 0; which < 4; ++which) {
      std::vector<ScoredRule> previous;
      const std::size_t steps = which == 0 ? util_steps.size() : which == 3 ? lift_steps.size() : unit_steps.size();
      for (std::size_t k = 0; k < steps; ++k) {
        Thresholds t = start;
        if (which == 0) t.min_util = units(util_steps[k]);
        if (which == 1) t.min_conf = unit_steps[k];
        if (which == 2) t.min_bond = unit_steps[k];
        if (which == 3) t.min_lift = lift_steps[k];
        const auto rules = run(db, t).rules;
        if (k > 0) check.expect(is_subset(rules, previous), name + " threshold " + std::to_string(which) + " step " + std::to_string(k));
        previous = rules;
      }
      ++chains;
    }
  };
  const std::vector<std::int64_t> small_steps{0, 20, 50, 60, 80, 100, 150};
  sweep(example_db(), Thresholds{units(50), Ratio(0, 1), Ratio(0, 1), Ratio(0, 1)}, small_steps, "example");
  sweep(example_db(), Thresholds{}, small_steps, "example/zero");
  for (std::uint64_t seed = 1; seed <= 2; ++seed) {
    sweep(generate_synthetic(SyntheticSpec{1000, 40, 6, seed}), Thresholds{units(300), Ratio(0, 1), Ratio(0, 1), Ratio(0, 1)},
          {300, 400, 600, 1000, 2000, 4000}, "synthetic " + std::to_string(seed));
  }
  return check.done(std::to_string(chains) + " threshold sweeps form descending chains");
}

Outcome bound_soundness() {
  Checker check;
  std::mt19937_64 rng(99);
  std::size_t events = 0;
  for (int k = 0; k < 600; ++k) {
    const SequenceDatabase db = generate_small_database(rng);
    const Thresholds t = random_thresholds(rng, db);
    const auto qualifying = oracle_chusrs(db, t);
    for (Variant v : kVariants) {
      std::vector<PruneEvent> pruned;
      mine(db, MinerConfig::for_variant(t, v), [&](const PruneEvent& e) { pruned.push_back(e); });
      for (const PruneEvent& e : pruned) {
        ++events;
        for (const ScoredRule& q : qualifying) {
          const auto& x = q.rule.antecedent();
          const auto& y = q.rule.consequent();
          bool descendant = false;
          switch (e.reason) {
            case PruneReason::kUnpromisingItem:
              descendant = q.rule.contains(e.antecedent.front());
              break;
            case PruneReason::kRuleSeu:
            case PruneReason::kBond:
            case PruneReason::kBondMatrix:
            case PruneReason::kEsucs:
            case PruneReason::kConfidence:
              descendant = superset(x, e.antecedent) && superset(y, e.consequent);
              break;
            case PruneReason::kRightBound:
              descendant = grows(e.antecedent, x) && grows(e.consequent, y) && y != e.consequent;
              break;
            case PruneReason::kLeftBound:
              descendant = grows(e.antecedent, x) && x != e.antecedent && y == e.consequent;
              break;
          }
          if (descendant) {
            check.expect(false, std::string(to_string(e.reason)) + " pruned an ancestor of " + q.rule.to_string() +
                                " in database " + std::to_string(k));
          }
        }
      }
    }
  }
  return check.done(std::to_string(events) + " prune events, none with a qualifying descendant");
}

Outcome expansion_equivalence() {
  Checker check;
  std::mt19937_64 rng(4242);
  std::size_t cases = 0;
  while (cases < 20000) {
    const SequenceDatabase db = generate_small_database(rng);
    const IndexedDatabase index = IndexedDatabase::build(db);
    const auto all_items = occurring_items(db);
    for (const auto& r : enumerate_all_rules(db)) {
      if (r.support == 0) continue;
      const UtilityList parent = build_utility_list(r.rule, db);
      for (Item i : all_items) {
        if (r.rule.contains(i)) continue;
        for (Direction dir : {Direction::kLeft, Direction::kRight}) {
          std::vector<Item> x = r.rule.antecedent();
          std::vector<Item> y = r.rule.consequent();
          auto& side = dir == Direction::kLeft ? x : y;
          if (i < side.back()) continue;
          side.push_back(i);
          const UtilityList inc = expand_utility_list(parent, i, dir, index);
          const UtilityList ref = build_utility_list(Rule(x, y), db);
          check.expect(inc.rows == ref.rows && inc.bounds == ref.bounds, "expanding " + r.rule.to_string() + " with " +
                                                                     std::to_string(id_of(i)));
          ++cases;
        }
      }
    }
  }
  return check.done(std::to_string(cases) + " (rule, item, direction) cases field-exact");
}

Outcome performance() {
  Checker check;
  const SyntheticSpec spec{10000, 500, 8, 1};
  const SequenceDatabase db = generate_synthetic(spec);
  const Thresholds t{units(2000), Ratio(1, 5), Ratio(1, 20), Ratio(0, 1)};
  const auto start = std::chrono::steady_clock::now();
  const MiningResult res = run(db, t, Variant::kS6S7);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.expect(s < 30.0, "took " + std::to_string(s) + " s");
  check.expect(!res.rules.empty(), "no rules at the chosen thresholds");
  std::ostringstream out;
  out << "10000 x 500, minutil 2000, " << res.rules.size() << " rules, " << res.stats.utility_lists_built
      << " ULs, " << std::to_string(s).substr(0, 5) << " s single-threaded";
  return check.done(out.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden example", golden_example},
      {"intermediate values", intermediate_values},
      {"oracle equivalence", oracle_equivalence},
      {"strategy-output invariance", strategy_invariance},
      {"pruning effectiveness", pruning_effectiveness},
      {"threshold monotonicity", threshold_monotonicity},
      {"upper-bound soundness", bound_soundness},
      {"incremental expansion equivalence", expansion_equivalence},
      {"performance smoke", performance},
  };
  int failed = 0;
  for (const auto& [name, criterion] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criterion();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (out.pass ? "PASS" : "FAIL") << "  " << name << "  (" << ms << " ms)  " << out.detail << std::endl;
    failed += out.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
