#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "quesadilla/io.hpp"
#include "quesadilla/transpose.hpp"
#include "test_util.hpp"

using namespace quesadilla;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("quesadilla-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

fs::path write_text(const TempDir& dir, const std::string& name,
                    const std::string& text) {
  const fs::path p = dir.file(name);
  std::ofstream out(p);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("basic parsing shifts 1-based indices down") {
  TempDir dir;
  const fs::path p = write_text(dir, "a.tns", "1 2 4 3.5\n");
  const CooTensor t = read_tns(p);
  CHECK(t.rank() == 3);
  CHECK(t.nnz() == 1);
  CHECK(t.row(0)[0] == 0);
  CHECK(t.row(0)[1] == 1);
  CHECK(t.row(0)[2] == 3);
  CHECK(t.values[0] == 3.5);
  CHECK(t.dims == std::vector<std::uint32_t>{1, 2, 4});
}

TEST_CASE("comments and blank lines are skipped, loads are canonicalized") {
  TempDir dir;
  const fs::path p = write_text(dir, "a.tns",
                                "# a comment\n"
                                "\n"
                                "2 1 -4.25e2\n"
                                "1 2 1e3\n"
                                "  # indented comment\n"
                                "1 1 0.5\n");
  const CooTensor t = read_tns(p);
  REQUIRE(t.nnz() == 3);
  CHECK(is_sorted_under(t, Ordering::simple(2)));
  CHECK(t.values == std::vector<double>{0.5, 1e3, -4.25e2});

  ReadOptions raw;
  raw.canonicalize = false;
  const CooTensor untouched = read_tns(p, raw);
  CHECK_FALSE(is_sorted_under(untouched, Ordering::simple(2)));
  CHECK(untouched.values == std::vector<double>{-4.25e2, 1e3, 0.5});
}

TEST_CASE("empty file needs declared dimensions") {
  TempDir dir;
  const fs::path p = write_text(dir, "empty.tns", "# nothing here\n");
  CHECK_THROWS_AS(read_tns(p), ParseError);
  ReadOptions opts;
  opts.declared_dims = std::vector<std::uint32_t>{5, 6};
  const CooTensor t = read_tns(p, opts);
  CHECK(t.nnz() == 0);
  CHECK(t.rank() == 2);
  CHECK(t.dims == std::vector<std::uint32_t>{5, 6});
}

TEST_CASE("parse errors carry the offending line number") {
  TempDir dir;
  SUBCASE("ragged line") {
    const fs::path p =
        write_text(dir, "bad.tns", "1 1 1.0\n2 2 2 2.0\n");
    CHECK_THROWS_WITH_AS(read_tns(p), doctest::Contains("line 2"), ParseError);
  }
  SUBCASE("zero index") {
    const fs::path p = write_text(dir, "bad.tns", "1 1 1.0\n0 1 2.0\n");
    CHECK_THROWS_WITH_AS(read_tns(p), doctest::Contains("line 2"), ParseError);
  }
  SUBCASE("negative index") {
    const fs::path p = write_text(dir, "bad.tns", "-1 1 1.0\n");
    CHECK_THROWS_AS(read_tns(p), ParseError);
  }
  SUBCASE("malformed value") {
    const fs::path p = write_text(dir, "bad.tns", "1 1 oops\n");
    CHECK_THROWS_WITH_AS(read_tns(p), doctest::Contains("line 1"), ParseError);
  }
  SUBCASE("index past a declared dimension") {
    const fs::path p = write_text(dir, "bad.tns", "3 1 1.0\n");
    ReadOptions opts;
    opts.declared_dims = std::vector<std::uint32_t>{2, 2};
    CHECK_THROWS_AS(read_tns(p, opts), ParseError);
  }
  SUBCASE("declared rank disagrees with the data") {
    const fs::path p = write_text(dir, "bad.tns", "1 1 1.0\n");
    ReadOptions opts;
    opts.declared_dims = std::vector<std::uint32_t>{2, 2, 2};
    CHECK_THROWS_AS(read_tns(p, opts), ParseError);
  }
}

TEST_CASE("write then read is a fixpoint") {
  TempDir dir;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) {
    const Mode r = 1 + static_cast<Mode>(rng() % 4);
    const CooTensor t = testutil::random_tensor(r, rng(), 400, 9);
    const fs::path p = dir.file("t" + std::to_string(i) + ".tns");
    write_tns(t, p);
    ReadOptions opts;
    opts.declared_dims = t.dims;  // keep trailing empty slices
    const CooTensor back = read_tns(p, opts);
    CHECK(back == t);
    write_tns(back, p);
    CHECK(read_tns(p, opts) == back);
  }
}

TEST_CASE("golden fixture survives a file round trip") {
  TempDir dir;
  const CooTensor t = testutil::golden_input();
  const fs::path p = dir.file("golden.tns");
  write_tns(t, p);
  ReadOptions opts;
  opts.declared_dims = t.dims;
  CHECK(read_tns(p, opts) == t);
}

TEST_CASE("writing preserves row order so sortedness survives") {
  TempDir dir;
  const CooTensor t = testutil::random_tensor(3, 17, 300, 8);
  const CooTensor shuffled = transpose(t, Ordering({2, 0, 1}),
                                       SortStrategy::quesadilla());
  const fs::path p = dir.file("x.tns");
  write_tns(shuffled, p);
  ReadOptions opts;
  opts.canonicalize = false;
  opts.declared_dims = shuffled.dims;
  CHECK(read_tns(p, opts) == shuffled);
}

TEST_CASE("generator determinism and canonical order") {
  GenSpec spec;
  spec.dims = {30, 7, 11};
  spec.nnz = 500;
  spec.seed = 42;
  const CooTensor a = generate(spec);
  const CooTensor b = generate(spec);
  CHECK(a == b);
  spec.seed = 43;
  CHECK_FALSE(generate(spec) == a);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenSpec s;
    s.dims = {9, 5};
    s.nnz = 40;
    s.seed = seed;
    CHECK(is_sorted_under(generate(s), Ordering::simple(2)));
  }
}

TEST_CASE("distinct generation fills a full grid by pigeonhole") {
  GenSpec spec;
  spec.dims = {4, 4};
  spec.nnz = 16;
  spec.seed = 1;
  spec.duplicates = GenSpec::Duplicates::Distinct;
  const CooTensor t = generate(spec);
  REQUIRE(t.nnz() == 16);
  std::size_t j = 0;
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = 0; b < 4; ++b, ++j) {
      CHECK(t.coord(j, 0) == a);
      CHECK(t.coord(j, 1) == b);
    }
  }
}

TEST_CASE("infeasible distinct generation is rejected") {
  GenSpec spec;
  spec.dims = {2, 3};
  spec.nnz = 7;
  spec.duplicates = GenSpec::Duplicates::Distinct;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("missing file is reported") {
  CHECK_THROWS(read_tns("/nonexistent/nowhere.tns"));
}
