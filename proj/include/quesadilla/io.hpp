#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quesadilla/coo.hpp"

namespace quesadilla {

// Parse failure with the 1-based line number it occurred on.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ReadOptions {
  // Stable-sort the rows into the simple ordering after loading. Every sort
  // strategy expects simply ordered input, so this defaults to on; pass
  // false for files known to be sorted already (or to inspect raw order).
  bool canonicalize = true;

  // Dimensions the file does not carry. When absent, each dimension is the
  // largest index seen in that mode (so trailing empty slices are lost).
  std::optional<std::vector<std::uint32_t>> declared_dims;
};

// Reads a FROSTT-style .tns text file: one row per line, rank 1-based
// indices followed by a value, '#' lines and blank lines skipped. Indices
// are shifted to 0-based in memory. Throws ParseError on ragged lines,
// indices < 1, indices beyond declared dimensions, or malformed numbers —
// and on an empty file with no declared dimensions (the rank is unknowable).
CooTensor read_tns(const std::filesystem::path& path,
                   const ReadOptions& opts = {});

// Writes the same format: 1-based indices, one row per line in storage
// order, values printed with shortest round-trip formatting. Reading the
// file back yields an equal tensor (given the same declared dims, or none if
// no mode has a trailing empty slice).
void write_tns(const CooTensor& tensor, const std::filesystem::path& path);

struct GenSpec {
  std::vector<std::uint32_t> dims;
  std::size_t nnz = 0;
  std::uint64_t seed = 0;

  enum class Duplicates { Allow, Distinct };
  Duplicates duplicates = Duplicates::Allow;
};

// Deterministic random tensor: coordinates uniform over the dims box, values
// uniform in [0,1), rows canonically sorted to the simple ordering. The
// generator is std::mt19937_64 seeded with spec.seed; per row, the modes are
// drawn first (rng() % dim each) and the value last, so output is identical
// across platforms. Distinct mode resamples duplicate rows and throws
// std::invalid_argument if nnz exceeds the number of cells.
CooTensor generate(const GenSpec& spec);

}  // namespace quesadilla
