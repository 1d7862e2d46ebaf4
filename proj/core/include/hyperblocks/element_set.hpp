#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hyperblocks {

/// Fixed-capacity bitset over element indices of a hyperfield.
///
/// Group elements occupy indices [0, r) and zero is index r, so a hyperfield
/// with up to kCapacity elements fits. All operations are allocation free.
class ElementSet {
 public:
  static constexpr std::size_t kCapacity = 128;

  constexpr ElementSet() = default;

  static constexpr ElementSet single(std::uint32_t i) {
    ElementSet s;
    s.insert(i);
    return s;
  }

  /// The set {0, 1, ..., n-1}.
  static constexpr ElementSet prefix(std::uint32_t n) {
    ElementSet s;
    for (std::size_t w = 0; w < kWords; ++w) {
      const std::size_t lo = w * 64;
      if (n >= lo + 64) {
        s.words_[w] = ~std::uint64_t{0};
      } else if (n > lo) {
        s.words_[w] = (std::uint64_t{1} << (n - lo)) - 1;
      }
    }
    return s;
  }

  constexpr void insert(std::uint32_t i) { words_[i >> 6] |= bit(i); }
  constexpr void erase(std::uint32_t i) { words_[i >> 6] &= ~bit(i); }
  constexpr void toggle(std::uint32_t i) { words_[i >> 6] ^= bit(i); }
  constexpr bool contains(std::uint32_t i) const { return (words_[i >> 6] & bit(i)) != 0; }

  constexpr bool empty() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  constexpr std::uint32_t size() const {
    std::uint32_t n = 0;
    for (auto w : words_) n += static_cast<std::uint32_t>(std::popcount(w));
    return n;
  }

  /// Smallest member, or kCapacity when empty.
  constexpr std::uint32_t first() const {
    for (std::size_t w = 0; w < kWords; ++w) {
      if (words_[w] != 0) {
        return static_cast<std::uint32_t>(w * 64 + std::countr_zero(words_[w]));
      }
    }
    return kCapacity;
  }

  constexpr ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  constexpr ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  constexpr ElementSet& operator^=(const ElementSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  friend constexpr ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend constexpr ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend constexpr bool operator==(const ElementSet&, const ElementSet&) = default;

  constexpr bool is_subset_of(const ElementSet& o) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      if ((words_[w] & ~o.words_[w]) != 0) return false;
    }
    return true;
  }

  /// Calls f(i) for each member in increasing order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    for_each([&](std::uint32_t i) { out.push_back(i); });
    return out;
  }

 private:
  static constexpr std::size_t kWords = kCapacity / 64;
  static constexpr std::uint64_t bit(std::uint32_t i) { return std::uint64_t{1} << (i & 63); }

  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace hyperblocks
