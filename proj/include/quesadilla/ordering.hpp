#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace quesadilla {

using Mode = std::uint32_t;

// Orderings are short (rank <= kMaxRank), so a bitmask covers every set of
// modes this library can encounter.
inline constexpr Mode kMaxRank = 64;

class ModeSet {
 public:
  constexpr ModeSet() = default;

  constexpr void insert(Mode m) { bits_ |= bit(m); }
  constexpr bool contains(Mode m) const { return (bits_ & bit(m)) != 0; }
  constexpr bool subset_of(ModeSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const;

  friend constexpr bool operator==(ModeSet, ModeSet) = default;

 private:
  static constexpr std::uint64_t bit(Mode m) { return std::uint64_t{1} << m; }
  std::uint64_t bits_ = 0;
};

// A complete lexicographic ordering: a permutation of the modes 0..r-1,
// highest comparison priority first. Coordinates compare by the first mode,
// ties break by the second, and so on.
class Ordering {
 public:
  // Throws std::invalid_argument unless `modes` is a permutation of 0..r-1.
  explicit Ordering(std::vector<Mode> modes);

  // The identity ordering (0, 1, ..., rank-1).
  static Ordering simple(Mode rank);

  Mode rank() const { return static_cast<Mode>(modes_.size()); }
  Mode at(std::size_t position) const { return modes_[position]; }

  // Position of mode `m` in this ordering; throws if absent.
  std::size_t position_of(Mode m) const;
  bool is_simple() const;

  const std::vector<Mode>& modes() const { return modes_; }
  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

  friend bool operator==(const Ordering&, const Ordering&) = default;

 private:
  std::vector<Mode> modes_;
};

// All r! complete orderings of the given rank, in lexicographic order of
// their mode sequences. Rank is capped at 8 (40320 orderings).
std::vector<Ordering> all_orderings(Mode rank);

// Text form used on the command line and in benchmark output: a string of
// 1-based digits ("2134") for rank <= 9, comma-separated 1-based indices
// ("10,2,1,...") otherwise.
Ordering parse_ordering(std::string_view text);
std::string format_ordering(const Ordering& ord);

}  // namespace quesadilla
