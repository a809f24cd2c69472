#include "fastga/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fastga {

BitString::BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {
  if (n == 0) throw std::invalid_argument("bit string length must be at least 1");
}

BitString BitString::ones(std::size_t n) {
  BitString s(n);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  if (const std::size_t tail = n & 63; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

BitString BitString::random(std::size_t n, Rng& rng) {
  BitString s(n);
  for (auto& w : s.words_) w = rng();
  if (const std::size_t tail = n & 63; tail != 0) {
    s.words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

BitString BitString::from_string(std::string_view bits) {
  BitString s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      s.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string literal may only contain '0' and '1'");
    }
  }
  return s;
}

void BitString::apply(PatchView patch) noexcept {
  for (BitIndex i : patch) flip(i);
}

std::size_t BitString::count_ones() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

bool is_valid_patch(PatchView patch, std::size_t n) noexcept {
  for (std::size_t i = 0; i < patch.size(); ++i) {
    if (patch[i] >= n) return false;
    if (i > 0 && patch[i - 1] >= patch[i]) return false;
  }
  return true;
}

Patch::Patch(std::vector<BitIndex> indices, std::size_t n) : indices_(std::move(indices)) {
  if (!is_valid_patch(indices_, n)) {
    throw std::invalid_argument("patch indices must be strictly increasing and below n");
  }
}

void sample_sorted_subset(std::size_t range, std::size_t k, Rng& rng,
                          std::vector<std::uint8_t>& marks, std::vector<BitIndex>& out) {
  out.clear();
  if (k == 0) return;
  // Floyd's algorithm: one draw per selected element.
  for (std::size_t j = range - k; j < range; ++j) {
    const auto t = static_cast<std::size_t>(uniform_below(rng, j + 1));
    const std::size_t pick = marks[t] ? j : t;
    marks[pick] = 1;
    out.push_back(static_cast<BitIndex>(pick));
  }
  if (k * 16 >= range) {
    // Dense: a linear scan of the marks is cheaper than sorting.
    out.clear();
    for (std::size_t i = 0; i < range; ++i) {
      if (marks[i]) {
        out.push_back(static_cast<BitIndex>(i));
        marks[i] = 0;
      }
    }
  } else {
    for (BitIndex i : out) marks[i] = 0;
    std::sort(out.begin(), out.end());
  }
}

Patch subsample_patch(const Patch& patch, double bias, Rng& rng) {
  if (!(bias > 0.0) || bias > 1.0) {
    throw std::invalid_argument("subsample bias must be in (0, 1]");
  }
  std::vector<BitIndex> kept;
  kept.reserve(patch.size());
  for (BitIndex i : patch.indices()) {
    if (bias == 1.0 || uniform01(rng) < bias) kept.push_back(i);
  }
  const std::size_t bound = patch.empty() ? 1 : patch.indices().back() + std::size_t{1};
  return Patch(std::move(kept), bound);
}

}  // namespace fastga
