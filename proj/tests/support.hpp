#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "cousr/measures.hpp"
#include "cousr/seqdb.hpp"

namespace cousr::testing {

inline constexpr Item a{1}, b{2}, c{3}, d{4}, e{5}, f{6}, g{7};

inline constexpr const char* kExampleDb =
    "1:1 2:1 -1 5:1 -1 4:5 -1 7:1 -1 -2\n"
    "1:2 4:9 -1 3:2 -1 2:1 -1 5:1 7:2 -1 -2\n"
    "1:1 -1 2:2 -1 6:1 -1 5:2 -1 -2\n"
    "1:1 2:1 4:2 -1 5:1 -1 7:3 -1 -2\n"
    "1:3 2:1 -1 5:1 -1 6:3 -1 3:4 -1 4:3 -1 7:1 -1 -2\n";

inline constexpr const char* kExampleUtilities = "1 3\n2 5\n3 2\n4 1\n5 6\n6 3\n7 2\n";

inline SequenceDatabase example_db() {
  SequenceDatabase db = parse_database(kExampleDb);
  db.utilities = parse_utility_table(kExampleUtilities);
  return db;
}

inline Thresholds example_thresholds() {
  return Thresholds{Utility::from_units(50), Ratio(7, 10), Ratio(3, 10), Ratio(11, 10)};
}

inline Utility units(std::int64_t n) { return Utility::from_units(n); }

inline std::vector<Item> items(std::initializer_list<Item> list) { return list; }

inline std::vector<Rule> rules_of(const std::vector<ScoredRule>& scored) {
  std::vector<Rule> out;
  for (const auto& s : scored) out.push_back(s.rule);
  return out;
}

inline bool is_subset(const std::vector<ScoredRule>& small, const std::vector<ScoredRule>& big) {
  for (const auto& r : small) {
    bool found = false;
    for (const auto& s : big) found = found || s == r;
    if (!found) return false;
  }
  return true;
}

}  // namespace cousr::testing
