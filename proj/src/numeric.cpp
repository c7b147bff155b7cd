#include "cousr/numeric.hpp"

#include <numeric>
#include <stdexcept>

namespace cousr {

namespace {

using i128 = __int128;

constexpr i128 kSaturate = static_cast<i128>(1) << 100;

// A decimal literal split into integer mantissa and base-10 exponent:
// value = mantissa * 10^exponent.
struct Decimal {
  i128 mantissa = 0;
  int exponent = 0;
  bool saturated = false;
};

Decimal parse_decimal(std::string_view text) {
  auto fail = [&](const char* what) {
    throw std::invalid_argument(std::string(what) + ": '" + std::string(text) + "'");
  };
  if (text.empty()) fail("empty number");
  std::size_t pos = 0;
  if (text[pos] == '+') ++pos;
  if (pos < text.size() && text[pos] == '-') fail("negative value");

  Decimal d;
  bool any_digit = false;
  bool in_fraction = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      if (d.mantissa < kSaturate) {
        d.mantissa = d.mantissa * 10 + (c - '0');
        if (in_fraction) --d.exponent;
      } else if (!in_fraction) {
        // Further integer digits still scale the value.
        ++d.exponent;
      }
    } else if (c == '.' && !in_fraction) {
      in_fraction = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail("malformed number");

  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail("malformed number");
    ++pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) fail("malformed exponent");
    int e = 0;
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c < '0' || c > '9') fail("malformed exponent");
      if (e < 10000) e = e * 10 + (c - '0');
    }
    d.exponent += neg ? -e : e;
  }
  return d;
}

// Scales d by 10^shift. Returns false on overflow past `limit`.
bool scale(const Decimal& d, int shift, i128 limit, i128& out, bool& inexact, bool ceil) {
  i128 v = d.mantissa;
  inexact = false;
  if (v == 0) {
    out = 0;
    return true;
  }
  if (shift >= 0) {
    for (int k = 0; k < shift; ++k) {
      v *= 10;
      if (v > limit) return false;
    }
  } else {
    for (int k = 0; k < -shift && v != 0; ++k) {
      if (v % 10 != 0) inexact = true;
      v /= 10;
    }
    if (inexact && ceil) ++v;
  }
  if (v > limit || d.saturated) return false;
  out = v;
  return true;
}

}  // namespace

Utility Utility::parse(std::string_view text, Rounding rounding) {
  const Decimal d = parse_decimal(text);
  i128 raw = 0;
  bool inexact = false;
  if (!scale(d, d.exponent + kFractionDigits, INT64_MAX, raw, inexact,
             rounding == Rounding::kCeil)) {
    return max();
  }
  if (inexact && rounding == Rounding::kExact) {
    throw std::invalid_argument("more than 6 fractional digits: '" + std::string(text) + "'");
  }
  return Utility(static_cast<std::int64_t>(raw));
}

std::string Utility::to_string() const {
  std::string out = raw_ < 0 ? "-" : "";
  const std::uint64_t mag = raw_ < 0 ? static_cast<std::uint64_t>(-(raw_ + 1)) + 1
                                     : static_cast<std::uint64_t>(raw_);
  out += std::to_string(mag / kScale);
  std::uint64_t frac = mag % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, kFractionDigits - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

Ratio::Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("ratio with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

Ratio Ratio::parse(std::string_view text) {
  Decimal d = parse_decimal(text);
  // Bring the exponent to <= 0 so the value is mantissa / 10^k.
  constexpr i128 kLimit = static_cast<i128>(UINT64_MAX);
  while (d.exponent > 0) {
    d.mantissa *= 10;
    --d.exponent;
    if (d.mantissa > kLimit) throw std::invalid_argument("ratio too large: '" + std::string(text) + "'");
  }
  i128 den = 1;
  while (d.exponent < 0) {
    if (d.mantissa % 10 == 0 && d.mantissa != 0) {
      d.mantissa /= 10;
    } else {
      den *= 10;
      if (den > kLimit) throw std::invalid_argument("too many digits: '" + std::string(text) + "'");
    }
    ++d.exponent;
  }
  if (d.mantissa > kLimit || d.saturated) {
    throw std::invalid_argument("ratio too large: '" + std::string(text) + "'");
  }
  return Ratio(static_cast<std::uint64_t>(d.mantissa), static_cast<std::uint64_t>(den));
}

std::string Ratio::to_string(int digits) const {
  using u128 = unsigned __int128;
  u128 scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  const u128 scaled = (static_cast<u128>(num_) * scale * 2 + den_) / (static_cast<u128>(den_) * 2);
  const u128 whole = scaled / scale;
  u128 frac = scaled % scale;

  auto u128_str = [](u128 v) {
    if (v == 0) return std::string("0");
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  };
  std::string out = u128_str(whole);
  if (frac != 0) {
    std::string f = u128_str(frac);
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    out += '.';
    out += f;
  }
  return out;
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  using u128 = unsigned __int128;
  const u128 lhs = static_cast<u128>(a.num_) * b.den_;
  const u128 rhs = static_cast<u128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace cousr
