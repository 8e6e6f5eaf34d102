#include "quesadilla/ordering.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace quesadilla {

int ModeSet::size() const { return std::popcount(bits_); }

Ordering::Ordering(std::vector<Mode> modes) : modes_(std::move(modes)) {
  const std::size_t r = modes_.size();
  if (r == 0 || r > kMaxRank) {
    throw std::invalid_argument("ordering rank must be in 1.." +
                                std::to_string(kMaxRank));
  }
  ModeSet seen;
  for (Mode m : modes_) {
    if (m >= r) {
      throw std::invalid_argument("ordering contains mode " +
                                  std::to_string(m) + " outside 0.." +
                                  std::to_string(r - 1));
    }
    if (seen.contains(m)) {
      throw std::invalid_argument("ordering repeats mode " + std::to_string(m));
    }
    seen.insert(m);
  }
}

Ordering Ordering::simple(Mode rank) {
  std::vector<Mode> modes(rank);
  std::iota(modes.begin(), modes.end(), Mode{0});
  return Ordering(std::move(modes));
}

std::size_t Ordering::position_of(Mode m) const {
  auto it = std::find(modes_.begin(), modes_.end(), m);
  if (it == modes_.end()) {
    throw std::invalid_argument("mode " + std::to_string(m) +
                                " does not appear in the ordering");
  }
  return static_cast<std::size_t>(it - modes_.begin());
}

bool Ordering::is_simple() const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i] != i) return false;
  }
  return true;
}

std::vector<Ordering> all_orderings(Mode rank) {
  if (rank < 1 || rank > 8) {
    throw std::invalid_argument("all_orderings supports rank 1..8");
  }
  std::vector<Mode> modes(rank);
  std::iota(modes.begin(), modes.end(), Mode{0});
  std::vector<Ordering> out;
  do {
    out.push_back(Ordering(modes));
  } while (std::next_permutation(modes.begin(), modes.end()));
  return out;
}

Ordering parse_ordering(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty ordering");
  std::vector<Mode> modes;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = text.find(',', start);
      const std::string_view tok =
          text.substr(start, comma == std::string_view::npos ? comma
                                                             : comma - start);
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(tok.begin(), tok.end(), value);
      if (ec != std::errc{} || ptr != tok.end() || value == 0) {
        throw std::invalid_argument("bad ordering element '" +
                                    std::string(tok) + "'");
      }
      modes.push_back(static_cast<Mode>(value - 1));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') {
        throw std::invalid_argument(
            "ordering digits must be 1-9; use the comma form for larger "
            "ranks");
      }
      modes.push_back(static_cast<Mode>(c - '1'));
    }
  }
  return Ordering(std::move(modes));
}

std::string format_ordering(const Ordering& ord) {
  std::string out;
  if (ord.rank() <= 9) {
    for (Mode m : ord) out.push_back(static_cast<char>('1' + m));
  } else {
    for (Mode m : ord) {
      if (!out.empty()) out.push_back(',');
      out += std::to_string(m + 1);
    }
  }
  return out;
}

}  // namespace quesadilla
