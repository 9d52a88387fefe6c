#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "derangekit/oeis.hpp"

using namespace derangekit;
namespace fs = std::filesystem;

namespace {

const char* kFixtureDir = DERANGEKIT_FIXTURE_DIR;
const char* kTestDataDir = DERANGEKIT_TESTDATA_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    std::mt19937_64 rng(std::random_device{}());
    path = fs::temp_directory_path() /
           ("derangekit-test-" + std::to_string(rng()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

FetchOptions offline_with_fixtures() {
  FetchOptions o;
  o.mode = FetchMode::Offline;
  o.fixture_dir = kFixtureDir;
  o.cache_dir = "/nonexistent/derangekit-cache";
  return o;
}

std::vector<BigInt> ints(std::initializer_list<long long> xs) {
  return {xs.begin(), xs.end()};
}

}  // namespace

TEST_CASE("b-file parsing skips comments and enforces contiguity") {
  BFile bf = parse_bfile("A000079",
                         "# powers of two\n\n0 1\n1 2\n2 4\n 3 8\n",
                         BFileSource::Fixture);
  CHECK(bf.first_index == 0);
  CHECK(bf.values == ints({1, 2, 4, 8}));
  CHECK(bf.last_index() == 3);

  CHECK_THROWS_AS(parse_bfile("A000079", "0 1\n2 4\n", BFileSource::Fixture),
                  BFileFormatError);
  CHECK_THROWS_AS(parse_bfile("A000079", "0 one\n", BFileSource::Fixture),
                  BFileFormatError);
  CHECK_THROWS_AS(parse_bfile("A000079", "zero 1\n", BFileSource::Fixture),
                  BFileFormatError);
  CHECK_THROWS_AS(parse_bfile("A000079", "# nothing\n", BFileSource::Fixture),
                  BFileFormatError);
}

TEST_CASE("fetch validates the A-number") {
  CHECK_THROWS_AS(fetch_bfile("A0002444", offline_with_fixtures()),
                  InvalidANumberError);
  CHECK_THROWS_AS(fetch_bfile("2444", offline_with_fixtures()),
                  InvalidANumberError);
}

TEST_CASE("offline fetch reads fixtures and misses cleanly") {
  BFile bf = fetch_bfile("A000079", offline_with_fixtures());
  CHECK(bf.source == BFileSource::Fixture);
  CHECK(bf.first_index == 0);
  CHECK(bf.values[0] == 1);
  CHECK(bf.values[1] == 2);
  CHECK(bf.values[10] == 1024);

  FetchOptions empty;
  empty.mode = FetchMode::Offline;
  empty.cache_dir = "/nonexistent/derangekit-cache";
  CHECK_THROWS_AS(fetch_bfile("A000079", empty), CacheMissError);
}

TEST_CASE("cached b-files read back identically") {
  TempDir cache;
  // place a file in the cache the same way the network path would
  const std::string body = "0 1\n1 1\n2 2\n3 6\n4 24\n5 120\n6 720\n7 5040\n";
  detail::write_file_atomic(cache.path / "b000142.txt", body);

  FetchOptions o;
  o.mode = FetchMode::Offline;
  o.cache_dir = cache.path.string();
  BFile bf = fetch_bfile("A000142", o);
  CHECK(bf.source == BFileSource::Cache);
  CHECK(bf.values == ints({1, 1, 2, 6, 24, 120, 720, 5040}));
  BFile again = fetch_bfile("A000142", o);
  CHECK(again.values == bf.values);
  CHECK(again.first_index == bf.first_index);
}

TEST_CASE("identical term lists match at shift zero") {
  BFile ref = fetch_bfile("A002378", offline_with_fixtures());
  std::vector<BigInt> gen(ref.values.begin(), ref.values.begin() + 12);
  MatchReport rep = compare_with_shift(ref.first_index, gen, ref);
  CHECK(rep.verdict == Verdict::Match);
  CHECK(rep.shift == 0);
  CHECK(rep.compared_terms >= 8);
}

TEST_CASE("index conventions differing by one are absorbed by the shift") {
  // two choices for each of n positions but one: n(n-1) against n(n+1)
  std::vector<BigInt> gen;
  for (int n = 1; n <= 10; ++n) gen.push_back(BigInt(n) * (n - 1));
  BFile ref = fetch_bfile("A002378", offline_with_fixtures());
  MatchReport rep = compare_with_shift(1, gen, ref);
  CHECK(rep.verdict == Verdict::Match);
  CHECK(rep.shift == -1);
}

TEST_CASE("no alignment yields a mismatch") {
  std::vector<BigInt> zeros(12, 0);
  BFile ref = fetch_bfile("A000079", offline_with_fixtures());
  MatchReport rep = compare_with_shift(0, zeros, ref);
  CHECK(rep.verdict == Verdict::Mismatch);
}

TEST_CASE("disjoint ranges are unverifiable") {
  std::vector<BigInt> gen(10, 1);
  BFile ref = fetch_bfile("A000079", offline_with_fixtures());
  MatchReport rep = compare_with_shift(1000, gen, ref);
  CHECK(rep.verdict == Verdict::Unverifiable);
  CHECK(rep.note == "insufficient overlap");
}

TEST_CASE("interior disagreement prevents a match even with long overlap") {
  BFile ref = fetch_bfile("A000290", offline_with_fixtures());
  std::vector<BigInt> gen(ref.values.begin(), ref.values.begin() + 12);
  gen[6] += 1;  // runs of 6 and 5 remain, both below the threshold
  MatchReport rep = compare_with_shift(0, gen, ref);
  CHECK(rep.verdict == Verdict::Mismatch);
  CHECK(rep.compared_terms == 6);
}

TEST_CASE("offline verification of every catalog entry never crashes") {
  std::vector<MatchReport> reports =
      verify_table(builtin_table(), offline_with_fixtures());
  REQUIRE(reports.size() == builtin_table().size());

  int matches = 0, mismatches = 0, unverifiable = 0;
  for (const MatchReport& r : reports) {
    switch (r.verdict) {
      case Verdict::Match: ++matches; break;
      case Verdict::Mismatch: ++mismatches; break;
      case Verdict::Unverifiable: ++unverifiable; break;
    }
    if (r.table_id == "2" && r.row == 9) {
      CHECK(r.verdict == Verdict::Unverifiable);
      CHECK(r.note == "malformed A-number");
    }
  }
  CHECK(matches > 0);
  CHECK(matches + mismatches + unverifiable == 92);
}

TEST_CASE("unbound entries trigger the slice search when data exists") {
  FetchOptions o;
  o.mode = FetchMode::Offline;
  o.fixture_dir = kTestDataDir;  // synthetic reference for A128805
  o.cache_dir = "/nonexistent/derangekit-cache";
  std::vector<MatchReport> reports = verify_table(table_entries("note2"), o);
  REQUIRE(reports.size() == 5);

  CHECK(reports[0].a_number == "A128805");
  CHECK(reports[0].verdict == Verdict::Unverifiable);
  CHECK(reports[0].note.find("searched k=2..6") != std::string::npos);
  CHECK(reports[0].note.find("k=2") != std::string::npos);

  // the other four have no reference data at all
  for (int i = 1; i < 5; ++i) {
    CHECK(reports[i].verdict == Verdict::Unverifiable);
    CHECK(reports[i].note.find("cache miss") != std::string::npos);
  }
}

TEST_CASE("verification verdicts are deterministic") {
  auto a = verify_table(table_entries("3"), offline_with_fixtures());
  auto b = verify_table(table_entries("3"), offline_with_fixtures());
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].verdict == b[i].verdict);
    CHECK(a[i].shift == b[i].shift);
    CHECK(a[i].compared_terms == b[i].compared_terms);
  }
}
