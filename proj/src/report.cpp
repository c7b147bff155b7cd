#include "cousr/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cousr {

namespace {

std::string join(const std::vector<Item>& items, const ItemAliases* aliases) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ',';
    out += aliases ? aliases->name(items[k]) : std::to_string(id_of(items[k]));
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<Item> parse_items(const std::string& s) {
  std::vector<Item> items;
  for (const std::string& tok : split(s, ',')) {
    std::uint32_t id = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || id == 0) {
      throw std::invalid_argument("bad item id '" + tok + "' in rule CSV");
    }
    items.push_back(Item{id});
  }
  return items;
}

}  // namespace

void write_rules_csv(std::ostream& out, const std::vector<ScoredRule>& rules, const ItemAliases* aliases) {
  out << kRulesCsvHeader << '\n';
  for (const ScoredRule& r : rules) {
    out << join(r.rule.antecedent(), aliases) << ';' << join(r.rule.consequent(), aliases) << ';'
        << r.utility.to_string() << ';' << r.support << ';' << r.confidence.to_string() << ';'
        << r.lift.to_string() << ';' << r.bond_antecedent.to_string() << ';'
        << r.bond_consequent.to_string() << '\n';
  }
}

std::vector<RuleRow> read_rules_csv(std::istream& in) {
  std::vector<RuleRow> rows;
  std::string line;
  if (!std::getline(in, line) || line != kRulesCsvHeader) {
    throw std::invalid_argument("rule CSV: missing header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ';');
    if (f.size() != 8) throw std::invalid_argument("rule CSV: expected 8 fields in '" + line + "'");
    rows.push_back(RuleRow{parse_items(f[0]), parse_items(f[1]), f[2], f[3], f[4], f[5], f[6], f[7]});
  }
  return rows;
}

std::string to_json(const RunReport& report) {
  const MinerStats& s = report.stats;
  nlohmann::ordered_json j;
  j["config"] = {
      {"variant", report.variant},
      {"min_util", report.thresholds.min_util.to_string()},
      {"min_conf", report.thresholds.min_conf.to_string()},
      {"min_bond", report.thresholds.min_bond.to_string()},
      {"min_lift", report.thresholds.min_lift.to_string()},
      {"conf_prune", report.conf_prune},
  };
  j["sequences"] = report.num_sequences;
  j["rules"] = report.rule_count;
  j["promising_items"] = s.promising_items;
  j["initial_rules"] = s.initial_rules;
  j["pruned"] = {
      {"s1_unpromising_items", s.pruned_unpromising_items},
      {"s2_rule_seu", s.pruned_rule_seu},
      {"s3_bond", s.pruned_bond},
      {"s4_right_bound", s.pruned_right_bound},
      {"s5_left_bound", s.pruned_left_bound},
      {"s6_bond_matrix", s.pruned_bond_matrix},
      {"s7_esucs", s.pruned_esucs},
      {"confidence", s.pruned_confidence},
  };
  j["candidates"] = s.candidates;
  j["utility_lists_built"] = s.utility_lists_built;
  j["utility_list_tuples"] = s.utility_list_tuples;
  j["wall_ms"] = s.elapsed_ms;
  j["peak_rss_kib"] = report.peak_rss_kib;
  return j.dump(2) + "\n";
}

std::size_t peak_rss_kib() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream in(line.substr(6));
      std::size_t kib = 0;
      in >> kib;
      return kib;
    }
  }
  return 0;
}

}  // namespace cousr
