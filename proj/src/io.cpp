#include "quesadilla/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>
#include <unordered_set>

#include "quesadilla/sort.hpp"

namespace quesadilla {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

void canonicalize(CooTensor& t) {
  sort_rows_by(t, 0, t.nnz(), Ordering::simple(t.rank()).modes());
}

}  // namespace

CooTensor read_tns(const std::filesystem::path& path, const ReadOptions& opts) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  }

  CooTensor t;
  std::size_t fields_per_line = 0;  // r + 1 once known
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::uint32_t> max_index;  // 1-based maxima per mode

  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string_view> fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;

    if (fields_per_line == 0) {
      if (fields.size() < 2) {
        throw ParseError(lineno,
                         "expected at least one index and a value, got " +
                             std::to_string(fields.size()) + " fields");
      }
      if (opts.declared_dims &&
          opts.declared_dims->size() != fields.size() - 1) {
        throw ParseError(lineno, "file has rank " +
                                     std::to_string(fields.size() - 1) +
                                     " but " +
                                     std::to_string(opts.declared_dims->size()) +
                                     " dimensions were declared");
      }
      fields_per_line = fields.size();
      max_index.assign(fields_per_line - 1, 0);
    } else if (fields.size() != fields_per_line) {
      throw ParseError(lineno, "expected " + std::to_string(fields_per_line) +
                                   " fields, got " +
                                   std::to_string(fields.size()));
    }

    for (std::size_t m = 0; m + 1 < fields.size(); ++m) {
      const std::string_view tok = fields[m];
      std::uint32_t index = 0;
      auto [ptr, ec] = std::from_chars(tok.begin(), tok.end(), index);
      if (ec != std::errc{} || ptr != tok.end()) {
        throw ParseError(lineno, "invalid index '" + std::string(tok) + "'");
      }
      if (index < 1) {
        throw ParseError(lineno, "indices are 1-based; got " +
                                     std::string(tok) + " in mode " +
                                     std::to_string(m + 1));
      }
      if (opts.declared_dims && index > (*opts.declared_dims)[m]) {
        throw ParseError(lineno, "index " + std::string(tok) +
                                     " exceeds declared dimension " +
                                     std::to_string((*opts.declared_dims)[m]) +
                                     " of mode " + std::to_string(m + 1));
      }
      max_index[m] = std::max(max_index[m], index);
      t.coords.push_back(index - 1);
    }
    const std::string_view tok = fields.back();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.begin(), tok.end(), value);
    if (ec != std::errc{} || ptr != tok.end()) {
      throw ParseError(lineno, "invalid value '" + std::string(tok) + "'");
    }
    t.values.push_back(value);
  }

  if (fields_per_line == 0) {
    if (!opts.declared_dims) {
      throw ParseError(lineno,
                       "empty file: rank is unknowable without declared "
                       "dimensions");
    }
    t.dims = *opts.declared_dims;
  } else if (opts.declared_dims) {
    t.dims = *opts.declared_dims;
  } else {
    t.dims = max_index;  // max 1-based index == 0-based extent
  }
  t.check_valid();
  if (opts.canonicalize) canonicalize(t);
  return t;
}

void write_tns(const CooTensor& tensor, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  const std::size_t r = tensor.rank();
  std::string line;
  char buf[64];
  for (std::size_t j = 0; j < tensor.nnz(); ++j) {
    line.clear();
    for (std::size_t m = 0; m < r; ++m) {
      auto res = std::to_chars(buf, buf + sizeof buf,
                               tensor.coords[j * r + m] + 1);
      line.append(buf, res.ptr);
      line.push_back(' ');
    }
    auto res = std::to_chars(buf, buf + sizeof buf, tensor.values[j]);
    line.append(buf, res.ptr);
    line.push_back('\n');
    out << line;
  }
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

CooTensor generate(const GenSpec& spec) {
  if (spec.dims.empty()) {
    throw std::invalid_argument("generator needs at least one dimension");
  }
  for (std::uint32_t d : spec.dims) {
    if (d == 0) throw std::invalid_argument("dimensions must be positive");
  }

  if (spec.duplicates == GenSpec::Duplicates::Distinct) {
    // Saturating cell count; anything >= nnz is feasible.
    std::uint64_t cells = 1;
    for (std::uint32_t d : spec.dims) {
      if (cells > std::numeric_limits<std::uint64_t>::max() / d) {
        cells = std::numeric_limits<std::uint64_t>::max();
        break;
      }
      cells *= d;
    }
    if (cells < spec.nnz) {
      throw std::invalid_argument(
          "distinct generation needs nnz <= product of dimensions");
    }
  }

  const std::size_t r = spec.dims.size();
  CooTensor t;
  t.dims = spec.dims;
  t.coords.reserve(spec.nnz * r);
  t.values.reserve(spec.nnz);

  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint32_t> row(r);
  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < spec.nnz; ++j) {
    for (;;) {
      for (std::size_t m = 0; m < r; ++m) {
        row[m] = static_cast<std::uint32_t>(rng() % spec.dims[m]);
      }
      if (spec.duplicates == GenSpec::Duplicates::Allow) break;
      std::string key(reinterpret_cast<const char*>(row.data()),
                      r * sizeof(std::uint32_t));
      if (seen.insert(std::move(key)).second) break;
    }
    t.coords.insert(t.coords.end(), row.begin(), row.end());
    t.values.push_back(
        static_cast<double>(rng() >> 11) * 0x1.0p-53);  // uniform in [0,1)
  }

  canonicalize(t);
  return t;
}

}  // namespace quesadilla
