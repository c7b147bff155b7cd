#include "cousr/measures.hpp"

#include <random>

#include "cousr/oracle.hpp"
#include "cousr/synthetic.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cousr;
using namespace cousr::testing;

namespace {

std::size_t naive_count(const SequenceDatabase& db, const std::vector<Item>& x, bool all) {
  std::size_t n = 0;
  for (const Sequence& s : db.sequences) {
    const auto pos = item_positions(s);
    std::size_t present = 0;
    for (Item i : x) present += pos.contains(i) ? 1 : 0;
    if (all ? present == x.size() : present > 0) ++n;
  }
  return n;
}

std::vector<std::vector<Item>> subsets(const std::vector<Item>& universe, std::size_t max_size) {
  std::vector<std::vector<Item>> out;
  const std::size_t m = universe.size();
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    std::vector<Item> s;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask & (1U << k)) s.push_back(universe[k]);
    }
    if (s.size() <= max_size) out.push_back(std::move(s));
  }
  return out;
}

BitVector sids(std::size_t n, std::initializer_list<std::size_t> one_based) {
  BitVector bv(n);
  for (std::size_t s : one_based) bv.set(s - 1);
  return bv;
}

}  // namespace

TEST_CASE("rule invariants") {
  const Rule r({d, a, b}, {g});
  CHECK(r.antecedent() == items({a, b, d}));
  CHECK(r.size_label() == "3*1");
  CHECK(r.to_string() == "1,2,4 => 7");
  CHECK_THROWS_AS(Rule({a}, {a}), std::invalid_argument);
  CHECK_THROWS_AS(Rule({}, {a}), std::invalid_argument);
  CHECK_THROWS_AS(Rule({a}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Rule({a, a}, {b}), std::invalid_argument);
}

TEST_CASE("item bit vectors") {
  const auto bvs = build_item_bitvectors(example_db());
  CHECK(bvs.of(a).to_string() == "11111");
  CHECK(bvs.of(c).to_string() == "01001");
  CHECK(bvs.of(Item{42}).to_string() == "00000");
}

TEST_CASE("support and disjunctive support") {
  const auto bvs = build_item_bitvectors(example_db());
  CHECK(itemset_support(items({a, c}), bvs) == 2);
  CHECK(itemset_support(items({a}), bvs) == 5);
  CHECK(itemset_support(items({a, Item{42}}), bvs) == 0);
  CHECK(itemset_dissup(items({a, c}), bvs) == 5);
  CHECK(itemset_dissup(items({a, b}), bvs) == 5);
  CHECK(itemset_dissup(items({c}), bvs) == itemset_support(items({c}), bvs));
}

TEST_CASE("bond") {
  const auto bvs = build_item_bitvectors(example_db());
  CHECK(bond(items({a, b}), bvs).value == Ratio(1, 1));
  CHECK(bond(items({f}), bvs).value == Ratio(1, 1));
  CHECK(bond(items({a, b, c, d}), bvs).value == Ratio(2, 5));
  const Bond absent = bond(items({Item{42}}), bvs);
  CHECK_FALSE(absent.defined);
  CHECK(absent.value == Ratio(0, 1));
}

TEST_CASE("rule occurrence") {
  const SequenceDatabase db = example_db();
  CHECK(rule_occurs(Rule({a}, {b}), db.sequences[1]));
  CHECK_FALSE(rule_occurs(Rule({a}, {b}), db.sequences[0]));
  CHECK(rule_occurs(Rule({b, d}, {g}), db.sequences[4]));
  CHECK(rule_sids(Rule({a}, {b}), db) == sids(5, {2, 3}));
  CHECK(rule_sids(Rule({a}, {Item{42}}), db) == BitVector(5));
  CHECK(rule_sids(Rule({a, b, d}, {g}), db) == sids(5, {1, 2, 4, 5}));
}

TEST_CASE("confidence") {
  const SequenceDatabase db = example_db();
  const auto bvs = build_item_bitvectors(db);
  CHECK(confidence(rule_sids(Rule({a}, {b}), db), bvs.of(a)) == Ratio(2, 5));
  CHECK(confidence(sids(5, {1, 2}), sids(5, {1, 2})) == Ratio(1, 1));
  const BitVector sx = bvs.of(a) & bvs.of(b) & bvs.of(d);
  CHECK(confidence(rule_sids(Rule({a, b, d}, {e, g}), db), sx) == Ratio(1, 2));
  CHECK_THROWS_AS(confidence(BitVector(5), BitVector(5)), MeasureError);
}

TEST_CASE("lift") {
  const SequenceDatabase db = example_db();
  const auto bvs = build_item_bitvectors(db);
  const BitVector ab = bvs.of(a) & bvs.of(b);
  CHECK(lift(rule_sids(Rule({a, b}, {g}), db), ab, bvs.of(g), 5) == Ratio(1, 1));
  CHECK(lift(rule_sids(Rule({a, b, d}, {g}), db), ab & bvs.of(d), bvs.of(g), 5) == Ratio(5, 4));
  CHECK(lift(0, 3, 2, 5) == Ratio(0, 1));
  CHECK_THROWS_AS(lift(0, 0, 2, 5), MeasureError);
  CHECK_THROWS_AS(lift(0, 2, 0, 5), MeasureError);
}

TEST_CASE("rule utility and SEU") {
  const SequenceDatabase db = example_db();
  CHECK(rule_utility(Rule({a}, {b}), db) == units(24));
  CHECK(rule_utility(Rule({g}, {a}), db) == units(0));
  CHECK(rule_utility(Rule({a, b, c, d}, {g}), db) == units(55));
  CHECK(seu_of_rule(rule_sids(Rule({a}, {b}), db), db) == units(62));
  CHECK(seu_of_item(Item{42}, db) == units(0));
  CHECK(seu_of_item(d, db) == units(119));
}

TEST_CASE("bitset counts equal a naive scan") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 40; ++k) {
    const SequenceDatabase db = generate_small_database(rng, SmallDatabaseSpec{10, 12, 3});
    const auto bvs = build_item_bitvectors(db);
    std::vector<Item> universe;
    for (const auto& [item, price] : db.utilities) universe.push_back(item);
    for (const auto& x : subsets(universe, 4)) {
      REQUIRE(itemset_support(x, bvs) == naive_count(db, x, true));
      REQUIRE(itemset_dissup(x, bvs) == naive_count(db, x, false));
    }
  }
}

TEST_CASE("bond is anti-monotone") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 60; ++k) {
    const SequenceDatabase db = generate_small_database(rng);
    const auto bvs = build_item_bitvectors(db);
    const std::vector<Item> universe = occurring_items(db);
    const auto all = subsets(universe, universe.size());
    for (const auto& x : all) {
      const Bond bx = bond(x, bvs);
      CHECK(bx.value <= Ratio(1, 1));
      if (x.size() == 1) CHECK(bx.value == Ratio(1, 1));
      for (const auto& y : all) {
        if (std::includes(y.begin(), y.end(), x.begin(), x.end())) REQUIRE(bond(y, bvs).value <= bx.value);
      }
    }
  }
}

TEST_CASE("SEU dominates the utility of a rule and its expansions") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 60; ++k) {
    const SequenceDatabase db = generate_small_database(rng, SmallDatabaseSpec{6, 6, 3});
    const auto rules = enumerate_all_rules(db);
    for (const auto& r : rules) {
      const Utility seu = seu_of_rule(rule_sids(r.rule, db), db);
      REQUIRE(r.utility <= seu);
      for (const auto& s : rules) {
        const auto& x = r.rule.antecedent();
        const auto& y = r.rule.consequent();
        const auto& x2 = s.rule.antecedent();
        const auto& y2 = s.rule.consequent();
        if (std::includes(x2.begin(), x2.end(), x.begin(), x.end()) &&
            std::includes(y2.begin(), y2.end(), y.begin(), y.end())) {
          REQUIRE(s.utility <= seu);
        }
      }
    }
  }
}

TEST_CASE("confidence does not grow when the consequent grows") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 60; ++k) {
    const SequenceDatabase db = generate_small_database(rng, SmallDatabaseSpec{6, 6, 3});
    const auto bvs = build_item_bitvectors(db);
    for (const auto& r : enumerate_all_rules(db)) {
      const auto& x = r.rule.antecedent();
      if (itemset_support(x, bvs) == 0) continue;
      for (Item i : occurring_items(db)) {
        if (r.rule.contains(i)) continue;
        std::vector<Item> y = r.rule.consequent();
        y.push_back(i);
        const Rule grown(x, y);
        const std::size_t sx = itemset_support(x, bvs);
        REQUIRE(confidence(rule_sids(grown, db).count(), sx) <= confidence(rule_sids(r.rule, db).count(), sx));
      }
    }
  }
}
