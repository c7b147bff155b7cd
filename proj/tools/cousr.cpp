// Command-line front end: mine, verify, bench, dump.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cousr/miner.hpp"
#include "cousr/oracle.hpp"
#include "cousr/report.hpp"
#include "cousr/rulecore.hpp"
#include "cousr/seqdb.hpp"
#include "cousr/synthetic.hpp"

namespace {

using namespace cousr;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitOracleLimit = 4;

struct ThresholdFlags {
  std::string min_util = "0";
  std::string min_conf = "0";
  std::string min_bond = "0";
  std::string min_lift = "0";

  void add_to(CLI::App* cmd, bool util_list = false) {
    cmd->add_option("--min-util", min_util, util_list ? "Utility thresholds, comma-separated" : "Minimum utility");
    cmd->add_option("--min-conf", min_conf, "Minimum confidence in [0,1]");
    cmd->add_option("--min-bond", min_bond, "Minimum bond in [0,1]");
    cmd->add_option("--min-lift", min_lift, "Minimum lift");
  }

  Thresholds parse(const std::string& util) const {
    try {
      return Thresholds{Utility::parse(util, Utility::Rounding::kCeil), Ratio::parse(min_conf),
                        Ratio::parse(min_bond), Ratio::parse(min_lift)};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  Thresholds parse() const { return parse(min_util); }
};

unsigned worker_count() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COUSR_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

template <typename Parse>
auto read_file(const std::string& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse(in);
}

SequenceDatabase load_database(const std::string& db_path, const std::string& utils_path) {
  SequenceDatabase db = read_file(db_path, [](std::istream& in) { return parse_database(in); });
  db.utilities = read_file(utils_path, [](std::istream& in) { return parse_utility_table(in); });
  check_utility_coverage(db);
  return db;
}

// Writes through a temporary file so readers never see a partial file.
void write_atomically(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

void print_rule_diff(const std::vector<ScoredRule>& mined, const std::vector<ScoredRule>& expected) {
  auto contains = [](const std::vector<ScoredRule>& v, const ScoredRule& r) {
    return std::find(v.begin(), v.end(), r) != v.end();
  };
  for (const auto& r : mined) {
    if (!contains(expected, r)) std::cerr << "  + miner only:  " << r.rule.to_string() << " u=" << r.utility.to_string() << "\n";
  }
  for (const auto& r : expected) {
    if (!contains(mined, r)) std::cerr << "  - oracle only: " << r.rule.to_string() << " u=" << r.utility.to_string() << "\n";
  }
}

struct MineOptions {
  std::string db, utils, alias, variant = "s6s7", out = "-", report;
  ThresholdFlags thresholds;
  bool conf_prune = false;
  std::size_t max_side = 0;
};

MinerConfig make_config(const Thresholds& t, const std::string& variant, bool conf_prune, std::size_t max_side) {
  MinerConfig cfg = MinerConfig::for_variant(t, parse_variant(variant));
  cfg.conf_prune = conf_prune;
  if (max_side > 0) cfg.max_side = max_side;
  cfg.threads = worker_count();
  return cfg;
}

int run_mine(const MineOptions& o) {
  const SequenceDatabase db = load_database(o.db, o.utils);
  std::optional<ItemAliases> aliases;
  if (!o.alias.empty()) aliases = read_file(o.alias, [](std::istream& in) { return parse_aliases(in); });

  const MinerConfig cfg = make_config(o.thresholds.parse(), o.variant, o.conf_prune, o.max_side);
  const MiningResult result = mine(db, cfg);

  std::ostringstream csv;
  write_rules_csv(csv, result.rules, aliases ? &*aliases : nullptr);
  write_atomically(o.out, csv.str());

  RunReport report{o.variant, cfg.thresholds, cfg.conf_prune, db.size(), result.rules.size(), result.stats,
                   peak_rss_kib()};
  if (!o.report.empty()) {
    write_atomically(o.report, to_json(report));
  } else {
    std::cerr << result.rules.size() << " rules, " << result.stats.utility_lists_built
              << " utility-lists, " << result.stats.elapsed_ms << " ms\n";
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string db, utils;
  ThresholdFlags thresholds;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::size_t max_items = OracleLimits{}.max_items;
  std::size_t max_sequences = OracleLimits{}.max_sequences;
};

// Compares all four variants against the oracle; returns mismatch count.
std::size_t verify_one(const SequenceDatabase& db, const Thresholds& t, const OracleLimits& limits) {
  const auto expected = oracle_chusrs(db, t, limits);
  std::size_t mismatches = 0;
  for (Variant v : {Variant::kBase, Variant::kS6, Variant::kS7, Variant::kS6S7}) {
    MinerConfig cfg = MinerConfig::for_variant(t, v);
    const auto mined = mine(db, cfg).rules;
    if (mined != expected) {
      ++mismatches;
      std::cerr << "mismatch for variant " << to_string(v) << " (min-util " << t.min_util.to_string()
                << ", min-conf " << t.min_conf.to_string() << ", min-bond " << t.min_bond.to_string()
                << ", min-lift " << t.min_lift.to_string() << ")\n";
      print_rule_diff(mined, expected);
    }
  }
  return mismatches;
}

int run_verify(const VerifyOptions& o) {
  const OracleLimits limits{o.max_items, o.max_sequences};
  if (o.random > 0) {
    std::mt19937_64 rng(o.seed);
    std::size_t failures = 0;
    for (std::size_t k = 0; k < o.random; ++k) {
      const SequenceDatabase db = generate_small_database(rng);
      const Thresholds t = random_thresholds(rng, db);
      if (verify_one(db, t, limits) > 0) {
        ++failures;
        std::cerr << "database #" << k << ":\n" << serialize_database(db);
      }
    }
    std::cout << o.random << " databases, " << failures << " mismatching\n";
    return failures == 0 ? kExitOk : kExitMismatch;
  }
  if (o.db.empty() || o.utils.empty()) throw ConfigError("verify needs --db and --utils, or --random N");
  const SequenceDatabase db = load_database(o.db, o.utils);
  const std::size_t mismatches = verify_one(db, o.thresholds.parse(), limits);
  std::cout << (mismatches == 0 ? "miner matches oracle\n" : "miner differs from oracle\n");
  return mismatches == 0 ? kExitOk : kExitMismatch;
}

struct BenchOptions {
  std::string db, utils, synthetic, variants = "base,s6,s7,s6s7", out = "-";
  std::optional<std::uint64_t> seed;
  ThresholdFlags thresholds;
  bool conf_prune = false;
  std::size_t max_side = 0;
};

int run_bench(const BenchOptions& o) {
  SequenceDatabase db;
  if (!o.synthetic.empty()) {
    try {
      SyntheticSpec spec = SyntheticSpec::parse(o.synthetic);
      if (o.seed) spec.seed = *o.seed;
      db = generate_synthetic(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    if (o.db.empty() || o.utils.empty()) throw ConfigError("bench needs --db and --utils, or --synthetic");
    db = load_database(o.db, o.utils);
  }

  std::ostringstream csv;
  csv << "variant,minutil,rules,pruned_s6,pruned_s7,uls_built,ms\n";
  for (const std::string& util : split_list(o.thresholds.min_util)) {
    const Thresholds t = o.thresholds.parse(util);
    for (const std::string& variant : split_list(o.variants)) {
      const MinerConfig cfg = make_config(t, variant, o.conf_prune, o.max_side);
      const MiningResult r = mine(db, cfg);
      csv << variant << ',' << t.min_util.to_string() << ',' << r.rules.size() << ','
          << r.stats.pruned_bond_matrix << ',' << r.stats.pruned_esucs << ','
          << r.stats.utility_lists_built << ',' << static_cast<long long>(r.stats.elapsed_ms + 0.5) << '\n';
    }
  }
  write_atomically(o.out, csv.str());
  return kExitOk;
}

struct DumpOptions {
  std::string db, utils, what = "ul", rule;
};

Rule parse_rule_spec(const std::string& text) {
  const auto arrow = text.find("=>");
  if (arrow == std::string::npos) throw ConfigError("rule must look like '1,2=>3': '" + text + "'");
  auto side = [](const std::string& s) {
    std::vector<Item> items;
    for (const std::string& tok : split_list(s)) {
      try {
        items.push_back(Item{static_cast<std::uint32_t>(std::stoul(tok))});
      } catch (const std::exception&) {
        throw ConfigError("bad item '" + tok + "'");
      }
    }
    return items;
  };
  try {
    return Rule(side(text.substr(0, arrow)), side(text.substr(arrow + 2)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int run_dump(const DumpOptions& o) {
  const SequenceDatabase db = load_database(o.db, o.utils);
  const IndexedDatabase index = IndexedDatabase::build(db);
  if (o.what == "bond") {
    dump_bond_matrix(build_bond_matrix(index, build_item_bitvectors(index)), std::cout);
  } else if (o.what == "esucs") {
    dump_esucs(build_esucs(index), std::cout);
  } else if (o.what == "ul") {
    dump_utility_list(build_utility_list(parse_rule_spec(o.rule), db), std::cout);
  } else {
    throw ConfigError("--what must be ul, bond or esucs");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlated high-utility sequential rule miner"};
  app.require_subcommand(1);

  MineOptions mine_opts;
  auto* mine_cmd = app.add_subcommand("mine", "Mine rules and write them as CSV");
  mine_cmd->add_option("--db", mine_opts.db, "Sequence database")->required();
  mine_cmd->add_option("--utils", mine_opts.utils, "Unit utility table")->required();
  mine_opts.thresholds.add_to(mine_cmd);
  mine_cmd->add_option("--variant", mine_opts.variant, "base, s6, s7 or s6s7");
  mine_cmd->add_option("--out", mine_opts.out, "Rule CSV path ('-' for stdout)");
  mine_cmd->add_option("--report", mine_opts.report, "JSON run report path");
  mine_cmd->add_option("--alias", mine_opts.alias, "Item label file ('label id' per line)");
  mine_cmd->add_flag("--conf-prune", mine_opts.conf_prune, "Skip consequent growth below min-conf");
  mine_cmd->add_option("--max-side", mine_opts.max_side, "Cap on items per rule side");

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Compare the miner against the brute-force oracle");
  verify_cmd->add_option("--db", verify_opts.db, "Sequence database");
  verify_cmd->add_option("--utils", verify_opts.utils, "Unit utility table");
  verify_opts.thresholds.add_to(verify_cmd);
  verify_cmd->add_option("--random", verify_opts.random, "Number of generated databases to check");
  verify_cmd->add_option("--seed", verify_opts.seed, "Seed for --random");
  verify_cmd->add_option("--max-items", verify_opts.max_items, "Oracle item limit");
  verify_cmd->add_option("--max-sequences", verify_opts.max_sequences, "Oracle sequence limit");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep thresholds and variants, emit CSV");
  bench_cmd->add_option("--db", bench_opts.db, "Sequence database");
  bench_cmd->add_option("--utils", bench_opts.utils, "Unit utility table");
  bench_cmd->add_option("--synthetic", bench_opts.synthetic, "n_seq,n_items,avg_len,seed");
  bench_cmd->add_option("--seed", bench_opts.seed, "Overrides the seed of --synthetic");
  bench_opts.thresholds.add_to(bench_cmd, true);
  bench_cmd->add_option("--variant", bench_opts.variants, "Variants, comma-separated");
  bench_cmd->add_option("--out", bench_opts.out, "CSV path ('-' for stdout)");
  bench_cmd->add_flag("--conf-prune", bench_opts.conf_prune, "Skip consequent growth below min-conf");
  bench_cmd->add_option("--max-side", bench_opts.max_side, "Cap on items per rule side");

  DumpOptions dump_opts;
  auto* dump_cmd = app.add_subcommand("dump", "Print a utility-list, the bond matrix or the ESUCS as TSV");
  dump_cmd->add_option("--db", dump_opts.db, "Sequence database")->required();
  dump_cmd->add_option("--utils", dump_opts.utils, "Unit utility table")->required();
  dump_cmd->add_option("--what", dump_opts.what, "ul, bond or esucs");
  dump_cmd->add_option("--rule", dump_opts.rule, "Rule for --what ul, e.g. '1=>5'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*mine_cmd) return run_mine(mine_opts);
    if (*verify_cmd) return run_verify(verify_opts);
    if (*bench_cmd) return run_bench(bench_opts);
    if (*dump_cmd) return run_dump(dump_opts);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DataError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OracleLimitError& e) {
    std::cerr << e.what() << "\n";
    return kExitOracleLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
