#ifndef UNAVOID_BITSET_HPP
#define UNAVOID_BITSET_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace unavoid {

/// Runtime-sized bit vector over 64-bit words.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int size) : size_(size), words_(word_count(size), 0) {}

  static constexpr int word_count(int size) { return (size + 63) / 64; }

  int size() const { return size_; }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(int i, bool value) { value ? set(i) : reset(i); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Population count of (*this & other).
  int and_count(const Bitset& other) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
    return c;
  }

  /// Number of set bits with index in [lo, hi).
  int count_range(int lo, int hi) const {
    int c = 0;
    for (int i = lo; i < hi;) {
      if ((i & 63) == 0 && i + 64 <= hi) {
        c += std::popcount(words_[i >> 6]);
        i += 64;
      } else {
        c += test(i);
        ++i;
      }
    }
    return c;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  std::span<const std::uint64_t> words() const { return words_; }

  /// Indices of set bits in increasing order.
  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto word = words_[w];
      while (word) {
        out.push_back(static_cast<int>(w * 64) + std::countr_zero(word));
        word &= word - 1;
      }
    }
    return out;
  }

 private:
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace unavoid

#endif  // UNAVOID_BITSET_HPP
