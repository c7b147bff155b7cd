#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cousr {

/// Fixed-point non-negative money amount with six fractional digits.
///
/// Quantities are integers and unit prices are decimals with at most six
/// fractional digits, so every utility in a database is an exact multiple of
/// 1e-6 and all sums and comparisons are exact integer operations.
class Utility {
 public:
  static constexpr std::int64_t kScale = 1'000'000;
  static constexpr int kFractionDigits = 6;

  /// How to treat digits beyond the sixth fractional place when parsing.
  enum class Rounding {
    kExact,  // reject (unit prices)
    kCeil,   // round up (thresholds: u >= t  <=>  u >= ceil(t))
  };

  constexpr Utility() = default;

  static constexpr Utility from_raw(std::int64_t raw) { return Utility(raw); }
  static constexpr Utility from_units(std::int64_t whole) { return Utility(whole * kScale); }
  static constexpr Utility max() { return Utility(INT64_MAX); }

  /// Parses "12", "0.25", "1e18". Values too large to represent saturate to
  /// max(). Throws std::invalid_argument on malformed or negative input.
  static Utility parse(std::string_view text, Rounding rounding = Rounding::kExact);

  constexpr std::int64_t raw() const { return raw_; }
  double to_double() const { return static_cast<double>(raw_) / kScale; }

  /// Decimal rendering, trailing zeros trimmed ("55", "2.5").
  std::string to_string() const;

  constexpr Utility& operator+=(Utility o) {
    raw_ += o.raw_;
    return *this;
  }
  constexpr Utility& operator-=(Utility o) {
    raw_ -= o.raw_;
    return *this;
  }
  friend constexpr Utility operator+(Utility a, Utility b) { return a += b; }
  friend constexpr Utility operator-(Utility a, Utility b) { return a -= b; }

  /// Unit price times an integer quantity.
  constexpr Utility times(std::uint64_t quantity) const {
    return Utility(raw_ * static_cast<std::int64_t>(quantity));
  }

  friend constexpr auto operator<=>(Utility, Utility) = default;

 private:
  constexpr explicit Utility(std::int64_t raw) : raw_(raw) {}
  std::int64_t raw_ = 0;
};

/// Exact non-negative rational, always stored in lowest terms.
///
/// Used for every count ratio (confidence, lift, bond) and for the matching
/// thresholds, so that threshold tests never depend on floating point.
class Ratio {
 public:
  constexpr Ratio() = default;
  /// Throws std::invalid_argument when den == 0.
  Ratio(std::uint64_t num, std::uint64_t den);

  static Ratio integer(std::uint64_t v) { return Ratio(v, 1); }

  /// Parses a non-negative decimal such as "0.7", "1.25", "2", "5e-1".
  static Ratio parse(std::string_view text);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Rounded half-up to `digits` fractional digits, trailing zeros trimmed.
  std::string to_string(int digits = 6) const;

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);
  friend bool operator==(const Ratio& a, const Ratio& b) = default;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace cousr
