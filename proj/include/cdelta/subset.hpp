#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "cdelta/ring.hpp"

namespace cdelta {

/// A bitset over the element indices of one ring. Binary operations between
/// subsets of different rings throw RingMismatch.
class Subset {
 public:
  Subset() = default;
  Subset(std::uint64_t ring_tag, std::size_t universe);
  static Subset empty_of(const FiniteRing& ring) { return Subset(ring.tag(), ring.order()); }
  static Subset full_of(const FiniteRing& ring);
  static Subset from_indices(const FiniteRing& ring, const std::vector<Index>& indices);

  std::uint64_t ring_tag() const noexcept { return tag_; }
  std::size_t universe() const noexcept { return size_; }

  bool contains(Index a) const noexcept { return (words_[a >> 6] >> (a & 63)) & 1u; }
  void insert(Index a) noexcept { words_[a >> 6] |= std::uint64_t{1} << (a & 63); }
  void erase(Index a) noexcept { words_[a >> 6] &= ~(std::uint64_t{1} << (a & 63)); }

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  std::vector<Index> indices() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(static_cast<Index>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  Subset& operator|=(const Subset& other);
  Subset& operator&=(const Subset& other);
  /// Set difference.
  Subset& operator-=(const Subset& other);

  bool is_subset_of(const Subset& other) const;
  /// Smallest element of *this that is not in `other`.
  std::optional<Index> first_not_in(const Subset& other) const;

  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }
  /// Throws RingMismatch when the tags differ.
  friend bool operator==(const Subset& a, const Subset& b);

 private:
  void require_same(const Subset& other) const;

  std::uint64_t tag_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// {x + shift : x in s}.
Subset translate(const FiniteRing& ring, const Subset& s, Index shift);

}  // namespace cdelta
