#pragma once

/// @file bitstring.hpp
/// Search points and patches (sorted sets of bit positions in which an
/// offspring differs from its parent).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastga/random.hpp"

namespace fastga {

using BitIndex = std::uint32_t;

/// Read-only view of patch indices. Producers keep them strictly increasing.
using PatchView = std::span<const BitIndex>;

/// Fixed-length, word-packed bit vector.
class BitString {
 public:
  BitString() = default;
  /// All-zero string of length n; n must be at least 1.
  explicit BitString(std::size_t n);

  static BitString ones(std::size_t n);
  static BitString random(std::size_t n, Rng& rng);
  /// Parses a string of '0'/'1' characters, leftmost character is bit 0.
  static BitString from_string(std::string_view bits);

  std::size_t size() const noexcept { return n_; }
  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  /// Packed storage, bit i in word i / 64; bits past size() are zero.
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// XORs the patch into the string. Indices must be < size().
  void apply(PatchView patch) noexcept;
  std::size_t count_ones() const noexcept;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Owning patch with a validated invariant: indices strictly increasing and
/// below the problem size.
class Patch {
 public:
  Patch() = default;
  /// Throws std::invalid_argument if `indices` is not strictly increasing or
  /// any index is >= n.
  Patch(std::vector<BitIndex> indices, std::size_t n);

  PatchView view() const noexcept { return indices_; }
  std::span<const BitIndex> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }

  friend bool operator==(const Patch&, const Patch&) = default;

 private:
  std::vector<BitIndex> indices_;
};

/// Checks the patch invariant against a problem of size n.
bool is_valid_patch(PatchView patch, std::size_t n) noexcept;

/// Draws a uniformly random k-subset of [0, range) into `out`, sorted.
///
/// `marks` is caller-owned scratch of at least `range` zero bytes; it is
/// returned zeroed. Expected cost O(k) plus a sort, or O(range) when k is a
/// large fraction of range.
void sample_sorted_subset(std::size_t range, std::size_t k, Rng& rng,
                          std::vector<std::uint8_t>& marks, std::vector<BitIndex>& out);

/// Keeps every index of `patch` independently with probability `bias`.
/// Throws std::invalid_argument unless bias is in (0, 1].
Patch subsample_patch(const Patch& patch, double bias, Rng& rng);

}  // namespace fastga
