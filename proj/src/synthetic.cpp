#include "cousr/synthetic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cousr {

namespace {

// Uniform integer in [lo, hi] from raw engine output, so results do not
// depend on the standard library's distribution implementations.
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<Itemset> split_into_itemsets(std::mt19937_64& rng, std::vector<ItemQuantity> items,
                                         std::size_t max_itemset) {
  std::vector<Itemset> sets;
  std::size_t k = 0;
  while (k < items.size()) {
    const std::size_t len = std::min<std::size_t>(uniform(rng, 1, max_itemset), items.size() - k);
    Itemset set(items.begin() + static_cast<std::ptrdiff_t>(k),
                items.begin() + static_cast<std::ptrdiff_t>(k + len));
    std::sort(set.begin(), set.end(), [](const auto& a, const auto& b) { return a.item < b.item; });
    sets.push_back(std::move(set));
    k += len;
  }
  return sets;
}

}  // namespace

SyntheticSpec SyntheticSpec::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.emplace_back(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 4) {
    throw std::invalid_argument("synthetic spec must be n_seq,n_items,avg_len,seed: '" + std::string(text) + "'");
  }
  SyntheticSpec spec;
  try {
    std::size_t used = 0;
    spec.num_sequences = std::stoul(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("n_seq");
    spec.num_items = std::stoul(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("n_items");
    spec.avg_length = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("avg_len");
    spec.seed = std::stoull(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("seed");
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed synthetic spec: '" + std::string(text) + "'");
  }
  if (spec.num_sequences == 0 || spec.num_items == 0 || !(spec.avg_length >= 1.0)) {
    throw std::invalid_argument("synthetic spec values must be positive: '" + std::string(text) + "'");
  }
  return spec;
}

SequenceDatabase generate_synthetic(const SyntheticSpec& spec) {
  std::mt19937_64 rng(spec.seed);

  // Zipf(s = 1) cumulative weights over item ranks.
  std::vector<double> cdf(spec.num_items);
  double acc = 0.0;
  for (std::size_t r = 0; r < spec.num_items; ++r) {
    acc += 1.0 / static_cast<double>(r + 1);
    cdf[r] = acc;
  }
  for (double& c : cdf) c /= acc;

  // Ranks map to shuffled ids so popular items are spread over the id order.
  std::vector<std::uint32_t> ids(spec.num_items);
  for (std::size_t r = 0; r < ids.size(); ++r) ids[r] = static_cast<std::uint32_t>(r + 1);
  for (std::size_t r = ids.size(); r > 1; --r) std::swap(ids[r - 1], ids[uniform(rng, 0, r - 1)]);

  SequenceDatabase db;
  for (std::uint32_t id = 1; id <= spec.num_items; ++id) {
    db.utilities[Item{id}] = Utility::from_units(static_cast<std::int64_t>(uniform(rng, 1, 10)));
  }

  const auto max_len = std::min<std::size_t>(
      std::max<std::size_t>(1, spec.num_items / 2), static_cast<std::size_t>(std::llround(2.0 * spec.avg_length)) - 1);
  for (std::size_t s = 0; s < spec.num_sequences; ++s) {
    const std::size_t len = uniform(rng, 1, std::max<std::size_t>(1, max_len));
    std::set<std::uint32_t> chosen;
    std::vector<ItemQuantity> items;
    while (items.size() < len) {
      const double u = unit(rng);
      const auto rank = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      const std::uint32_t id = ids[std::min(rank, ids.size() - 1)];
      if (!chosen.insert(id).second) continue;
      items.push_back({Item{id}, static_cast<std::uint32_t>(uniform(rng, 1, 5))});
    }
    db.sequences.push_back(Sequence{static_cast<std::uint32_t>(s + 1), split_into_itemsets(rng, items, 3)});
  }
  return db;
}

SequenceDatabase generate_small_database(std::mt19937_64& rng, const SmallDatabaseSpec& spec) {
  SequenceDatabase db;
  const std::size_t num_items = uniform(rng, 2, spec.max_items);
  const std::size_t num_sequences = uniform(rng, 1, spec.max_sequences);
  for (std::uint32_t id = 1; id <= num_items; ++id) {
    db.utilities[Item{id}] = Utility::from_units(static_cast<std::int64_t>(uniform(rng, 1, 10)));
  }
  for (std::size_t s = 0; s < num_sequences; ++s) {
    std::vector<std::uint32_t> pool(num_items);
    for (std::size_t k = 0; k < num_items; ++k) pool[k] = static_cast<std::uint32_t>(k + 1);
    for (std::size_t k = pool.size(); k > 1; --k) std::swap(pool[k - 1], pool[uniform(rng, 0, k - 1)]);
    const std::size_t len = uniform(rng, 1, num_items);
    std::vector<ItemQuantity> items;
    for (std::size_t k = 0; k < len; ++k) {
      items.push_back({Item{pool[k]}, static_cast<std::uint32_t>(uniform(rng, 1, 5))});
    }
    db.sequences.push_back(
        Sequence{static_cast<std::uint32_t>(s + 1), split_into_itemsets(rng, items, spec.max_itemset)});
  }
  return db;
}

Thresholds random_thresholds(std::mt19937_64& rng, const SequenceDatabase& db) {
  std::int64_t total = 0;
  for (const Sequence& s : db.sequences) total += sequence_utility(s, db.utilities).raw() / Utility::kScale;
  Thresholds t;
  // Skew toward small utility thresholds, where most of the search happens.
  const double f = unit(rng);
  t.min_util = Utility::from_units(static_cast<std::int64_t>(f * f * f * static_cast<double>(total)));
  t.min_conf = Ratio(uniform(rng, 0, 10), 10);
  t.min_bond = Ratio(uniform(rng, 0, 10), 10);
  static constexpr std::uint64_t kLiftTenths[] = {0, 0, 5, 10, 11, 15, 20};
  t.min_lift = Ratio(kLiftTenths[uniform(rng, 0, std::size(kLiftTenths) - 1)], 10);
  return t;
}

}  // namespace cousr
