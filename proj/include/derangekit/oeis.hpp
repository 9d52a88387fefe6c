#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#ifdef DERANGEKIT_HAS_TLS
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#endif
#include <httplib.h>

#include "derangekit/catalog.hpp"

namespace derangekit {

class InvalidANumberError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class BFileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CacheMissError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BFileSource { Network, Cache, Fixture };

/// Parsed b-file: one value per consecutive index starting at
/// first_index. Contiguity is an invariant of the parse, not a field.
struct BFile {
  std::string a_number;
  long long first_index = 0;
  std::vector<BigInt> values;
  BFileSource source = BFileSource::Fixture;

  long long last_index() const {
    return first_index + static_cast<long long>(values.size()) - 1;
  }
};

enum class FetchMode { Network, Offline };

struct FetchOptions {
  FetchMode mode = FetchMode::Offline;
  std::string cache_dir;    // empty: DERANGEKIT_CACHE or the platform default
  std::string fixture_dir;  // empty: no fixtures available
};

enum class Verdict { Match, Mismatch, Unverifiable };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::Unverifiable: return "unverifiable";
  }
  return "?";
}

/// Outcome of checking one table entry against reference terms. A match
/// requires at least min_overlap consecutive exact agreements at some
/// shift |s| <= max_shift; compared_terms is the length of the agreeing
/// run (for a mismatch, of the best run found).
struct MatchReport {
  std::string table_id;
  int row = 0;
  std::string a_number;
  Verdict verdict = Verdict::Unverifiable;
  long long shift = 0;
  int compared_terms = 0;
  std::string note;
};

inline std::string default_cache_dir() {
  if (const char* env = std::getenv("DERANGEKIT_CACHE")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    return std::string(xdg) + "/derangekit";
  if (const char* home = std::getenv("HOME"))
    return std::string(home) + "/.cache/derangekit";
  return ".derangekit-cache";
}

/// "A002378" -> "b002378.txt"
inline std::string bfile_name(const std::string& a_number) {
  return "b" + a_number.substr(1) + ".txt";
}

/// Parses the OEIS b-file format: lines of "index value", '#' comments
/// and blank lines ignored. Indices must increase by exactly 1.
inline BFile parse_bfile(const std::string& a_number, const std::string& text,
                         BFileSource source) {
  BFile bf;
  bf.a_number = a_number;
  bf.source = source;
  std::istringstream in(text);
  std::string line;
  long long line_no = 0;
  bool have_first = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    std::istringstream fields(line);
    long long index;
    std::string value;
    if (!(fields >> index >> value))
      throw BFileFormatError("line " + std::to_string(line_no) +
                             ": expected \"index value\"");
    BigInt v;
    try {
      v = BigInt(value);
    } catch (const std::exception&) {
      throw BFileFormatError("line " + std::to_string(line_no) +
                             ": bad integer \"" + value + "\"");
    }
    if (!have_first) {
      bf.first_index = index;
      have_first = true;
    } else if (index != bf.last_index() + 1) {
      throw BFileFormatError("line " + std::to_string(line_no) +
                             ": non-contiguous index " + std::to_string(index));
    }
    bf.values.push_back(std::move(v));
  }
  if (bf.values.empty()) throw BFileFormatError("no terms");
  return bf;
}

namespace detail {

inline std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Atomic write: temp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& p,
                              const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
  }
  std::filesystem::rename(tmp, p);
}

// Single request in flight, at least one second apart.
inline void polite_pause() {
  static std::mutex mu;
  static std::chrono::steady_clock::time_point last{};
  std::lock_guard<std::mutex> lock(mu);
  const auto now = std::chrono::steady_clock::now();
  const auto gap = std::chrono::seconds(1);
  if (last.time_since_epoch().count() != 0 && now - last < gap)
    std::this_thread::sleep_for(gap - (now - last));
  last = std::chrono::steady_clock::now();
}

inline std::string http_get_bfile(const std::string& a_number) {
  polite_pause();
#ifdef DERANGEKIT_HAS_TLS
  httplib::Client client("https://oeis.org");
#else
  httplib::Client client("http://oeis.org");
#endif
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  const std::string path = "/" + a_number + "/" + bfile_name(a_number);
  auto res = client.Get(path);
  if (!res)
    throw NetworkError("request for " + a_number + " failed: " +
                       httplib::to_string(res.error()));
  if (res->status != 200)
    throw NetworkError("request for " + a_number + " returned status " +
                       std::to_string(res->status));
  return res->body;
}

}  // namespace detail

/// Retrieves a b-file. Offline mode reads the cache, then the fixture
/// directory. Network mode fetches over HTTP (politely: sequential, one
/// second between requests) and stores the body in the cache before
/// parsing it.
inline BFile fetch_bfile(const std::string& a_number,
                         const FetchOptions& options = {}) {
  if (!well_formed_a_number(a_number))
    throw InvalidANumberError("invalid A-number \"" + a_number + "\"");
  namespace fs = std::filesystem;
  const fs::path cache_dir =
      options.cache_dir.empty() ? default_cache_dir() : options.cache_dir;
  const fs::path cached = cache_dir / bfile_name(a_number);

  if (auto text = detail::read_file(cached))
    return parse_bfile(a_number, *text, BFileSource::Cache);
  if (!options.fixture_dir.empty()) {
    if (auto text = detail::read_file(fs::path(options.fixture_dir) /
                                      bfile_name(a_number)))
      return parse_bfile(a_number, *text, BFileSource::Fixture);
  }
  if (options.mode == FetchMode::Offline)
    throw CacheMissError("cache miss for " + a_number +
                         " (offline mode, no cached file or fixture)");

  const std::string body = detail::http_get_bfile(a_number);
  detail::write_file_atomic(cached, body);
  return parse_bfile(a_number, body, BFileSource::Network);
}

/// Aligns generated terms (starting at generated_start) against a
/// reference, trying shifts by increasing |s|; generated(i) is compared
/// with reference(i + s). Returns the first shift whose longest run of
/// consecutive exact agreements reaches min_overlap; otherwise a
/// mismatch describing the best alignment, or unverifiable when no shift
/// gives enough overlap.
inline MatchReport compare_with_shift(long long generated_start,
                                      const std::vector<BigInt>& generated,
                                      const BFile& reference,
                                      int max_shift = 3, int min_overlap = 8) {
  MatchReport rep;
  rep.a_number = reference.a_number;
  const long long glen = static_cast<long long>(generated.size());

  bool any_overlap = false;
  long long best_shift = 0;
  int best_run = -1;
  for (int magnitude = 0; magnitude <= max_shift; ++magnitude) {
    for (int sign : {+1, -1}) {
      if (magnitude == 0 && sign < 0) continue;
      const long long s = sign * magnitude;
      const long long lo =
          std::max(generated_start, reference.first_index - s);
      const long long hi =
          std::min(generated_start + glen, reference.last_index() + 1 - s);
      if (hi - lo < min_overlap) continue;
      any_overlap = true;
      int run = 0, longest = 0;
      for (long long i = lo; i < hi; ++i) {
        const BigInt& g = generated[i - generated_start];
        const BigInt& r =
            reference.values[i + s - reference.first_index];
        run = g == r ? run + 1 : 0;
        longest = std::max(longest, run);
      }
      if (longest >= min_overlap) {
        rep.verdict = Verdict::Match;
        rep.shift = s;
        rep.compared_terms = longest;
        return rep;
      }
      if (longest > best_run) {
        best_run = longest;
        best_shift = s;
      }
    }
  }

  if (!any_overlap) {
    rep.verdict = Verdict::Unverifiable;
    rep.note = "insufficient overlap";
    return rep;
  }
  rep.verdict = Verdict::Mismatch;
  rep.shift = best_shift;
  rep.compared_terms = best_run;
  rep.note = "best alignment agrees on " + std::to_string(best_run) +
             " consecutive terms";
  return rep;
}

/// Checks every entry: generates terms from its binding, fetches the
/// reference and compares. Malformed entries are reported without
/// fetching; unbound entries get a slice search over block-derangement
/// column sizes k = 2..6. Any per-entry failure degrades that entry to
/// unverifiable; the batch never throws.
inline std::vector<MatchReport> verify_table(
    const std::vector<TableEntry>& entries, const FetchOptions& options = {},
    int terms = 12, int max_shift = 3, int min_overlap = 8) {
  std::vector<MatchReport> out;
  out.reserve(entries.size());
  for (const TableEntry& e : entries) {
    MatchReport rep;
    rep.table_id = e.table_id;
    rep.row = e.row;
    rep.a_number = e.a_number;
    rep.verdict = Verdict::Unverifiable;

    if (e.malformed) {
      rep.note = "malformed A-number";
      out.push_back(std::move(rep));
      continue;
    }

    BFile ref;
    try {
      ref = fetch_bfile(e.a_number, options);
    } catch (const std::exception& ex) {
      rep.note = ex.what();
      out.push_back(std::move(rep));
      continue;
    }

    if (!e.binding) {
      // Parameterization unknown: search block-derangement slices D(., k)
      // for one that reproduces the reference, reporting findings only.
      std::string found;
      for (int k = 2; k <= 6; ++k) {
        ParameterBinding b;
        b.family = Family::BlockDerangement;
        b.n = IndexExpr{1, 0};
        b.k = IndexExpr{0, k};
        b.start_index = 0;
        std::vector<BigInt> gen;
        try {
          gen = generate_terms(b, 0, terms);
        } catch (const std::exception&) {
          continue;
        }
        MatchReport probe =
            compare_with_shift(0, gen, ref, max_shift, min_overlap);
        if (probe.verdict == Verdict::Match) {
          if (!found.empty()) found += ", ";
          found += "k=" + std::to_string(k) +
                   " (shift " + std::to_string(probe.shift) + ")";
        }
      }
      rep.note = "unbound - searched k=2..6" +
                 (found.empty() ? std::string("; no slice matched")
                                : "; matched " + found);
      out.push_back(std::move(rep));
      continue;
    }

    std::vector<BigInt> gen;
    try {
      gen = generate_terms(*e.binding, e.binding->start_index, terms);
    } catch (const std::exception& ex) {
      rep.note = std::string("term generation failed: ") + ex.what();
      out.push_back(std::move(rep));
      continue;
    }

    MatchReport cmp = compare_with_shift(e.binding->start_index, gen, ref,
                                         max_shift, min_overlap);
    rep.verdict = cmp.verdict;
    rep.shift = cmp.shift;
    rep.compared_terms = cmp.compared_terms;
    rep.note = cmp.note;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace derangekit
