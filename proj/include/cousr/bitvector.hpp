#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cousr {

/// Fixed-length set of sequence indices; bit j stands for sequence sid j+1.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  void set(std::size_t j) { words_[j / 64] |= std::uint64_t{1} << (j % 64); }
  bool test(std::size_t j) const { return (words_[j / 64] >> (j % 64)) & 1U; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  /// |this & other| without materializing the intersection.
  std::size_t and_count(const BitVector& other) const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      n += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
    }
    return n;
  }

  std::size_t or_count(const BitVector& other) const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      n += static_cast<std::size_t>(std::popcount(words_[k] | other.words_[k]));
    }
    return n;
  }

  BitVector& operator&=(const BitVector& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  BitVector& operator|=(const BitVector& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
    return *this;
  }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  /// "01001": character j is bit j, i.e. sequence j+1 reads left to right.
  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t j = 0; j < size_; ++j) {
      if (test(j)) s[j] = '1';
    }
    return s;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cousr
