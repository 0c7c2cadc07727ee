#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace ltc {

/// Fixed-universe bitset over box indices; hashable so residual diagrams can
/// key search caches.
class BoxSet {
 public:
  BoxSet() = default;
  explicit BoxSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  static BoxSet full(std::size_t universe) {
    BoxSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.set(i);
    return s;
  }

  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  std::size_t count_and(const BoxSet& other) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return n;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BoxSet&, const BoxSet&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

struct BoxSetHash {
  std::size_t operator()(const BoxSet& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : s.words()) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

}  // namespace ltc
