#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ap3 {

// Subset of {1,...,N} with packed-bit membership; element a lives at bit
// a-1. The interval length N is part of the value, so sets over different
// intervals never compare equal even when they hold the same elements.
class IntervalSet {
 public:
  IntervalSet() = default;

  explicit IntervalSet(std::int64_t n)
      : n_(checked_length(n)), words_(word_count(n), 0) {}

  static IntervalSet full(std::int64_t n) {
    IntervalSet s(n);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static IntervalSet of(std::int64_t n, std::initializer_list<std::int64_t> elems) {
    IntervalSet s(n);
    for (auto a : elems) s.insert(a);
    return s;
  }

  static IntervalSet of(std::int64_t n, const std::vector<std::int64_t>& elems) {
    IntervalSet s(n);
    for (auto a : elems) s.insert(a);
    return s;
  }

  std::int64_t interval_length() const { return n_; }

  bool contains(std::int64_t a) const {
    if (a < 1 || a > n_) return false;
    const auto b = static_cast<std::uint64_t>(a - 1);
    return (words_[b >> 6] >> (b & 63)) & 1u;
  }

  void insert(std::int64_t a) {
    check_element(a);
    const auto b = static_cast<std::uint64_t>(a - 1);
    words_[b >> 6] |= std::uint64_t{1} << (b & 63);
  }

  void erase(std::int64_t a) {
    check_element(a);
    const auto b = static_cast<std::uint64_t>(a - 1);
    words_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }

  std::int64_t size() const {
    std::int64_t total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }

  bool empty() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  std::vector<std::int64_t> elements() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int j = std::countr_zero(w);
        out.push_back(static_cast<std::int64_t>(i * 64 + j) + 1);
        w &= w - 1;
      }
    }
    return out;
  }

  // Raw words, LSB-first; bits at positions >= N are always clear.
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  static std::int64_t checked_length(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("IntervalSet: negative interval length");
    return n;
  }

  static std::size_t word_count(std::int64_t n) {
    return static_cast<std::size_t>((n + 63) / 64);
  }

  void check_element(std::int64_t a) const {
    if (a < 1 || a > n_) {
      throw std::out_of_range("IntervalSet: element " + std::to_string(a) +
                              " outside [1, " + std::to_string(n_) + "]");
    }
  }

  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) {
      words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }
  }

  std::int64_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ap3
