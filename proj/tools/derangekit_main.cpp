// Command-line front end: exact counts, brute-force cross-checks, sequence
// generation from the built-in catalog, and verification of catalog claims
// against OEIS b-files.
//
// Exit codes: 0 success, 1 domain/validation error, 2 usage error,
// 3 verification found mismatches.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "derangekit/derangekit.hpp"

namespace {

using namespace derangekit;

// Malformed invocation at the semantic level (unknown family, bad row).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Family parse_family(const std::string& name) {
  for (Family f : {Family::D11, Family::D12, Family::D21, Family::D22,
                   Family::S22, Family::I1, Family::BlockDerangement})
    if (name == family_name(f)) return f;
  throw UsageError("unknown family \"" + name +
                   "\" (expected d11, d12, d21, d22, s22, i1 or blockderange)");
}

// "5", "n", "n-1", "n+2" or "2n" (any free-index name letterless digits
// aside); used by `seq --family`.
IndexExpr parse_index_expr(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw UsageError("empty parameter expression");
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used == s.size()) return IndexExpr{0, v};
  } catch (const std::exception&) {
  }
  int coeff = 1;
  std::size_t pos = 0;
  if (s[0] == '2' && s.size() > 1 && !std::isdigit(static_cast<unsigned char>(s[1]))) {
    coeff = 2;
    pos = 1;
  }
  if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
    throw UsageError("cannot parse parameter expression \"" + text + "\"");
  std::size_t name_end = pos;
  while (name_end < s.size() &&
         std::isalpha(static_cast<unsigned char>(s[name_end])))
    ++name_end;
  long long offset = 0;
  if (name_end < s.size()) {
    try {
      std::size_t used = 0;
      offset = std::stoll(s.substr(name_end), &used);
      if (used != s.size() - name_end) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError("cannot parse parameter expression \"" + text + "\"");
    }
  }
  return IndexExpr{coeff, offset};
}

ConstraintSystem load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_constraint_system(ss.str());
}

BigInt count_system(const ConstraintSystem& sys) {
  bool any_containment = false;
  for (const Constraint& c : sys.constraints)
    any_containment =
        any_containment || c.relation == Relation::ContainmentForbidden;
  if (sys.function_class == FunctionClass::AllFunctions)
    return any_containment ? count_avoiding_containment(sys).value
                           : count_avoiding_image_equality(sys).value;
  if (any_containment)
    throw std::domain_error(
        "no counting formula for injections with containment constraints "
        "(the oracle subcommand can still enumerate them)");
  return count_injections_avoiding_image_equality(sys).value;
}

struct FamilyParams {
  std::optional<int> m, n, k;
};

void require_params(Family family, const FamilyParams& p) {
  if (family == Family::BlockDerangement) {
    if (p.m) throw UsageError("blockderange takes --n and --k only");
    if (!p.n || !p.k) throw UsageError("blockderange requires --n and --k");
  } else if (!p.m || !p.n || !p.k) {
    throw UsageError(std::string(family_name(family)) +
                     " requires --m, --n and --k");
  }
}

int cmd_count(const std::string& family_name_arg, const FamilyParams& p,
              const std::string& system_path) {
  BigInt result;
  if (!system_path.empty()) {
    result = count_system(load_system(system_path));
  } else {
    Family fam = parse_family(family_name_arg);
    require_params(fam, p);
    result = evaluate_family(fam, p.m.value_or(0), *p.n, *p.k);
  }
  std::cout << result.str() << "\n";
  return 0;
}

int cmd_oracle(const std::string& family_name_arg, const FamilyParams& p,
               const std::string& system_path, std::uint64_t budget,
               unsigned workers) {
  EnumerationBudget eb{budget};
  BigInt result;
  if (!system_path.empty()) {
    result = enumerate_count(load_system(system_path), eb, workers);
  } else {
    Family fam = parse_family(family_name_arg);
    require_params(fam, p);
    if (fam == Family::BlockDerangement)
      result = enumerate_block_derangements(*p.n, *p.k, eb);
    else
      result = enumerate_count(
          canonical_family_system(fam, *p.m, *p.n, *p.k), eb, workers);
  }
  std::cout << result.str() << "\n";
  return 0;
}

int cmd_seq(const std::string& table, int row, const std::string& family_arg,
            const std::string& m_expr, const std::string& n_expr,
            const std::string& k_expr, std::optional<long long> from,
            int count) {
  ParameterBinding binding;
  if (!table.empty()) {
    std::vector<TableEntry> entries = table_entries(table);
    if (entries.empty()) throw UsageError("unknown table \"" + table + "\"");
    const TableEntry* hit = nullptr;
    for (const TableEntry& e : entries)
      if (e.row == row) hit = &e;
    if (!hit) throw UsageError("no row " + std::to_string(row) +
                               " in table " + table);
    if (hit->malformed)
      throw UsageError(
          "malformed A-number; term generation available via --family");
    if (!hit->binding)
      throw UsageError(
          "row has no parameter binding; term generation available via "
          "--family");
    binding = *hit->binding;
  } else if (!family_arg.empty()) {
    binding.family = parse_family(family_arg);
    binding.m = m_expr.empty() ? IndexExpr{1, 0} : parse_index_expr(m_expr);
    binding.n = n_expr.empty() ? IndexExpr{1, 0} : parse_index_expr(n_expr);
    binding.k = k_expr.empty() ? IndexExpr{1, 0} : parse_index_expr(k_expr);
    binding.start_index = first_valid_index(binding);
  } else {
    throw UsageError("seq requires --table/--row or --family");
  }

  const long long start = from.value_or(binding.start_index);
  std::vector<BigInt> terms = generate_terms(binding, start, count);
  for (std::size_t i = 0; i < terms.size(); ++i)
    std::cout << start + static_cast<long long>(i) << " " << terms[i].str()
              << "\n";
  return 0;
}

int cmd_verify(const std::string& tables, int terms, bool offline,
               const std::string& cache_dir, const std::string& fixtures,
               int max_shift, int min_overlap) {
  if (terms < min_overlap)
    throw UsageError("--terms must be at least --min-overlap (" +
                     std::to_string(min_overlap) + ")");
  std::vector<TableEntry> selected;
  if (tables == "all") {
    selected = builtin_table();
  } else {
    std::istringstream ss(tables);
    std::string id;
    while (std::getline(ss, id, ',')) {
      std::vector<TableEntry> part = table_entries(id);
      if (part.empty()) throw UsageError("unknown table \"" + id + "\"");
      selected.insert(selected.end(), part.begin(), part.end());
    }
    if (selected.empty()) throw UsageError("no tables selected");
  }

  FetchOptions options;
  options.mode = offline ? FetchMode::Offline : FetchMode::Network;
  options.cache_dir = cache_dir;
  options.fixture_dir = fixtures;

  std::vector<MatchReport> reports =
      verify_table(selected, options, terms, max_shift, min_overlap);
  bool any_mismatch = false;
  for (const MatchReport& r : reports) {
    std::cout << r.table_id << " " << r.row << " " << r.a_number << " "
              << verdict_name(r.verdict);
    if (r.verdict != Verdict::Unverifiable)
      std::cout << " shift=" << r.shift << " compared=" << r.compared_terms;
    if (!r.note.empty()) std::cout << " # " << r.note;
    std::cout << "\n";
    any_mismatch = any_mismatch || r.verdict == Verdict::Mismatch;
  }
  return any_mismatch ? 3 : 0;
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("DERANGEKIT_FIXTURES")) return env;
  return "fixtures";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counting of functions avoiding block constraints"};
  app.require_subcommand(1);

  std::string family, system_path;
  FamilyParams params;
  int m_val = 0, n_val = 0, k_val = 0;

  auto add_family_flags = [&](CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "closed-form family (d11, d12, d21, d22, s22, i1, blockderange)");
    cmd->add_option("--m", m_val, "domain size");
    cmd->add_option("--n", n_val, "codomain size / block count");
    cmd->add_option("--k", k_val, "constraint count / block size");
    cmd->add_option("--system", system_path, "constraint file (JSON)");
  };

  CLI::App* count = app.add_subcommand("count", "exact count by formula");
  add_family_flags(count);

  CLI::App* oracle =
      app.add_subcommand("oracle", "exact count by brute-force enumeration");
  add_family_flags(oracle);
  std::uint64_t budget = EnumerationBudget{}.max_search_space;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  oracle->add_option("--budget", budget, "max candidate functions to visit");
  oracle->add_option("--workers", workers, "enumeration threads");

  CLI::App* seq = app.add_subcommand("seq", "generate sequence terms");
  std::string table, m_expr, n_expr, k_expr;
  int row = 0, seq_count = 10;
  std::optional<long long> from;
  long long from_val = 0;
  seq->add_option("--table", table, "table id (1..5, s22, note2)");
  seq->add_option("--row", row, "row within the table");
  seq->add_option("--family", family, "family for an explicit binding");
  seq->add_option("--m", m_expr, "m as integer or expression in n (e.g. n-1)");
  seq->add_option("--n", n_expr, "n as integer or expression");
  seq->add_option("--k", k_expr, "k as integer or expression");
  CLI::Option* from_opt = seq->add_option("--from", from_val, "first index");
  seq->add_option("--count", seq_count, "number of terms");

  CLI::App* verify =
      app.add_subcommand("verify", "check catalog claims against OEIS b-files");
  std::string tables = "all", cache_dir, fixtures = default_fixture_dir();
  int terms = 12, max_shift = 3, min_overlap = 8;
  bool offline = false;
  verify->add_option("--tables", tables, "all or comma list of 1..5, s22, note2");
  verify->add_option("--terms", terms, "terms generated per entry")
      ->check(CLI::Range(1, 1000));
  verify->add_flag("--offline", offline, "use only cache and fixtures");
  verify->add_option("--cache-dir", cache_dir,
                     "override cache directory (default: DERANGEKIT_CACHE)");
  verify->add_option("--fixtures", fixtures, "bundled b-file directory");
  verify->add_option("--max-shift", max_shift, "offset tolerance")
      ->check(CLI::Range(0, 100));
  verify->add_option("--min-overlap", min_overlap,
                     "consecutive agreements required for a match")
      ->check(CLI::Range(1, 1000));

  CLI::App* catalog =
      app.add_subcommand("catalog", "dump the built-in table catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // CLI11 stores into plain ints; promote to optional presence.
  auto promote = [](CLI::App* cmd, const char* name, int value) {
    return cmd->count(name) ? std::optional<int>(value) : std::nullopt;
  };

  try {
    if (count->parsed()) {
      params.m = promote(count, "--m", m_val);
      params.n = promote(count, "--n", n_val);
      params.k = promote(count, "--k", k_val);
      if (family.empty() == system_path.empty())
        throw UsageError("count requires exactly one of --family or --system");
      return cmd_count(family, params, system_path);
    }
    if (oracle->parsed()) {
      params.m = promote(oracle, "--m", m_val);
      params.n = promote(oracle, "--n", n_val);
      params.k = promote(oracle, "--k", k_val);
      if (family.empty() == system_path.empty())
        throw UsageError("oracle requires exactly one of --family or --system");
      return cmd_oracle(family, params, system_path, budget, workers);
    }
    if (seq->parsed()) {
      if (!table.empty() && !family.empty())
        throw UsageError("seq takes --table/--row or --family, not both");
      if (from_opt->count()) from = from_val;
      return cmd_seq(table, row, family, m_expr, n_expr, k_expr, from,
                     seq_count);
    }
    if (verify->parsed())
      return cmd_verify(tables, terms, offline, cache_dir, fixtures, max_shift,
                        min_overlap);
    if (catalog->parsed()) {
      std::cout << catalog_to_json().dump(2) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
