#include "cousr/seqdb.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace cousr {

namespace {

const char* kind_name(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::kMalformedToken:
      return "malformed token";
    case ParseError::Kind::kDuplicateItem:
      return "duplicate item in sequence";
    case ParseError::Kind::kEmptyItemset:
      return "empty itemset";
    case ParseError::Kind::kMissingTerminator:
      return "missing terminator";
    case ParseError::Kind::kConflictingUtility:
      return "conflicting utility";
  }
  return "parse error";
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

// Whitespace-separated tokens up to an optional '#' comment.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

bool parse_uint(std::string_view s, std::uint32_t& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + kind_name(kind) + (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      line_(line),
      column_(column) {}

SequenceDatabase parse_database(std::istream& in) {
  SequenceDatabase db;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    Sequence seq;
    seq.sid = static_cast<std::uint32_t>(db.sequences.size() + 1);
    Itemset current;
    std::set<std::uint32_t> seen;
    bool terminated = false;

    for (const Token& tok : tokens) {
      if (terminated) {
        throw ParseError(ParseError::Kind::kMalformedToken, line_no, tok.column,
                         "token after -2: '" + std::string(tok.text) + "'");
      }
      if (tok.text == "-1") {
        if (current.empty()) throw ParseError(ParseError::Kind::kEmptyItemset, line_no, tok.column, "");
        std::sort(current.begin(), current.end(),
                  [](const ItemQuantity& a, const ItemQuantity& b) { return a.item < b.item; });
        seq.itemsets.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (tok.text == "-2") {
        if (!current.empty()) {
          throw ParseError(ParseError::Kind::kMissingTerminator, line_no, tok.column,
                           "itemset not closed with -1");
        }
        terminated = true;
        continue;
      }
      const auto colon = tok.text.find(':');
      std::uint32_t id = 0;
      std::uint32_t qty = 0;
      if (colon == std::string_view::npos || !parse_uint(tok.text.substr(0, colon), id) ||
          !parse_uint(tok.text.substr(colon + 1), qty) || id == 0 || qty == 0) {
        throw ParseError(ParseError::Kind::kMalformedToken, line_no, tok.column,
                         "'" + std::string(tok.text) + "'");
      }
      if (!seen.insert(id).second) {
        throw ParseError(ParseError::Kind::kDuplicateItem, line_no, tok.column,
                         "item " + std::to_string(id));
      }
      current.push_back({Item{id}, qty});
    }
    if (!terminated) {
      throw ParseError(ParseError::Kind::kMissingTerminator, line_no, line.size() + 1,
                       "sequence not closed with -2");
    }
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

SequenceDatabase parse_database(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_database(in);
}

UtilityTable parse_utility_table(std::istream& in) {
  UtilityTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError(ParseError::Kind::kMalformedToken, line_no, tokens.front().column,
                       "expected 'item utility'");
    }
    std::uint32_t id = 0;
    if (!parse_uint(tokens[0].text, id) || id == 0) {
      throw ParseError(ParseError::Kind::kMalformedToken, line_no, tokens[0].column,
                       "'" + std::string(tokens[0].text) + "'");
    }
    Utility value;
    try {
      value = Utility::parse(tokens[1].text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ParseError::Kind::kMalformedToken, line_no, tokens[1].column, e.what());
    }
    auto [it, inserted] = table.emplace(Item{id}, value);
    if (!inserted && it->second != value) {
      throw ParseError(ParseError::Kind::kConflictingUtility, line_no, tokens[1].column,
                       "item " + std::to_string(id) + " already priced at " + it->second.to_string());
    }
  }
  return table;
}

UtilityTable parse_utility_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_utility_table(in);
}

void serialize_database(const SequenceDatabase& db, std::ostream& out) {
  for (const Sequence& seq : db.sequences) {
    for (const Itemset& set : seq.itemsets) {
      for (const ItemQuantity& iq : set) out << id_of(iq.item) << ':' << iq.quantity << ' ';
      out << "-1 ";
    }
    out << "-2\n";
  }
}

std::string serialize_database(const SequenceDatabase& db) {
  std::ostringstream out;
  serialize_database(db, out);
  return out.str();
}

void check_utility_coverage(const SequenceDatabase& db) {
  for (const Sequence& seq : db.sequences) {
    for (const Itemset& set : seq.itemsets) {
      for (const ItemQuantity& iq : set) {
        if (!db.utilities.contains(iq.item)) {
          throw DataError("item " + std::to_string(id_of(iq.item)) + " in sequence " +
                          std::to_string(seq.sid) + " has no utility entry");
        }
      }
    }
  }
}

Utility item_utility(Item i, const Sequence& s, const UtilityTable& table) {
  const auto price = table.find(i);
  if (price == table.end()) throw DataError("item " + std::to_string(id_of(i)) + " has no utility entry");
  for (const Itemset& set : s.itemsets) {
    for (const ItemQuantity& iq : set) {
      if (iq.item == i) return price->second.times(iq.quantity);
    }
  }
  throw DataError("item " + std::to_string(id_of(i)) + " does not occur in sequence " +
                  std::to_string(s.sid));
}

Utility sequence_utility(const Sequence& s, const UtilityTable& table) {
  Utility total;
  for (const Itemset& set : s.itemsets) {
    for (const ItemQuantity& iq : set) {
      const auto price = table.find(iq.item);
      if (price == table.end()) {
        throw DataError("item " + std::to_string(id_of(iq.item)) + " has no utility entry");
      }
      total += price->second.times(iq.quantity);
    }
  }
  return total;
}

std::map<Item, std::uint32_t> item_positions(const Sequence& s) {
  std::map<Item, std::uint32_t> positions;
  for (std::size_t k = 0; k < s.itemsets.size(); ++k) {
    for (const ItemQuantity& iq : s.itemsets[k]) positions[iq.item] = static_cast<std::uint32_t>(k + 1);
  }
  return positions;
}

std::vector<Item> occurring_items(const SequenceDatabase& db) {
  std::set<Item> items;
  for (const Sequence& seq : db.sequences) {
    for (const Itemset& set : seq.itemsets) {
      for (const ItemQuantity& iq : set) items.insert(iq.item);
    }
  }
  return {items.begin(), items.end()};
}

std::string ItemAliases::name(Item i) const {
  const auto it = labels.find(i);
  return it == labels.end() ? std::to_string(id_of(i)) : it->second;
}

ItemAliases parse_aliases(std::istream& in) {
  ItemAliases aliases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::uint32_t id = 0;
    if (tokens.size() != 2 || !parse_uint(tokens[1].text, id) || id == 0) {
      throw ParseError(ParseError::Kind::kMalformedToken, line_no, tokens.front().column,
                       "expected 'label id'");
    }
    aliases.labels[Item{id}] = std::string(tokens[0].text);
  }
  return aliases;
}

}  // namespace cousr
