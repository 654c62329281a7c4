#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sqham {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Calls f(index) for every set bit of `words`, in increasing order.
template <class F>
void for_each_bit(std::span<const Word> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word bits = words[w];
    while (bits != 0) {
      const int offset = std::countr_zero(bits);
      f(static_cast<Vertex>(w * kWordBits + static_cast<std::size_t>(offset)));
      bits &= bits - 1;
    }
  }
}

/// Fixed-capacity dynamic bitset over [0, n). Used for neighbourhoods,
/// free-vertex masks and pillar sets.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n) : n_(n), words_(words_for(n), 0) {}
  VertexSet(std::size_t n, std::span<const Word> words)
      : n_(n), words_(words.begin(), words.end()) {
    if (words_.size() != words_for(n)) {
      throw std::invalid_argument("VertexSet: word count does not match n");
    }
  }

  std::size_t capacity() const { return n_; }
  std::span<const Word> words() const { return words_; }

  bool test(Vertex v) const {
    return (words_[v / kWordBits] >> (v % kWordBits)) & 1U;
  }
  void set(Vertex v) { words_[v / kWordBits] |= Word{1} << (v % kWordBits); }
  void reset(Vertex v) { words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (Word w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::optional<Vertex> first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) {
        return static_cast<Vertex>(w * kWordBits +
                                   static_cast<std::size_t>(std::countr_zero(words_[w])));
      }
    }
    return std::nullopt;
  }

  VertexSet& operator&=(std::span<const Word> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& other) { return *this &= other.words(); }
  VertexSet& operator|=(std::span<const Word> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& other) { return *this |= other.words(); }

  template <class F>
  void for_each(F&& f) const {
    for_each_bit(words_, std::forward<F>(f));
  }

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(count());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Word> words_;
};

}  // namespace sqham
