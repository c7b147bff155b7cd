#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cousr/numeric.hpp"

namespace cousr {

/// An item identifier. Ids are >= 1; the item order is ascending id order.
enum class Item : std::uint32_t {};

constexpr std::uint32_t id_of(Item i) { return static_cast<std::uint32_t>(i); }

/// One item occurrence inside an itemset.
struct ItemQuantity {
  Item item;
  std::uint32_t quantity;

  friend bool operator==(const ItemQuantity&, const ItemQuantity&) = default;
};

/// Items of one itemset, ascending by item id.
using Itemset = std::vector<ItemQuantity>;

struct Sequence {
  std::uint32_t sid = 0;
  std::vector<Itemset> itemsets;

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

/// External utility (unit price) per item.
using UtilityTable = std::map<Item, Utility>;

/// Immutable after construction; sids are 1..n in order.
struct SequenceDatabase {
  std::vector<Sequence> sequences;
  UtilityTable utilities;

  std::size_t size() const { return sequences.size(); }
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    kMalformedToken,
    kDuplicateItem,
    kEmptyItemset,
    kMissingTerminator,
    kConflictingUtility,
  };

  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& detail);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Raised when a database and its utility table do not fit together.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads one sequence per line: `item:qty` tokens, `-1` closes an itemset,
/// `-2` closes the sequence, `#` starts a comment. Blank and comment-only
/// lines are skipped. The result has no utilities attached.
SequenceDatabase parse_database(std::istream& in);
SequenceDatabase parse_database(std::string_view text);

/// Reads `item utility` lines. Repeating an item with the same value is
/// accepted; a conflicting value is a ParseError.
UtilityTable parse_utility_table(std::istream& in);
UtilityTable parse_utility_table(std::string_view text);

/// Canonical text form accepted by parse_database.
void serialize_database(const SequenceDatabase& db, std::ostream& out);
std::string serialize_database(const SequenceDatabase& db);

/// Throws DataError if some item of `db` has no entry in `db.utilities`.
void check_utility_coverage(const SequenceDatabase& db);

/// q(i,S) * p(i). Throws DataError if `i` is absent from `s` or unpriced.
Utility item_utility(Item i, const Sequence& s, const UtilityTable& table);

/// Sum of item utilities over the whole sequence.
Utility sequence_utility(const Sequence& s, const UtilityTable& table);

/// Item -> 1-based index of the itemset containing it.
std::map<Item, std::uint32_t> item_positions(const Sequence& s);

/// Distinct items of the database, ascending.
std::vector<Item> occurring_items(const SequenceDatabase& db);

/// Optional label file: `label id` per line, used for human-readable output.
struct ItemAliases {
  std::map<Item, std::string> labels;

  std::string name(Item i) const;
};

ItemAliases parse_aliases(std::istream& in);

}  // namespace cousr
