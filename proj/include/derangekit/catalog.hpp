#pragma once

#include <cctype>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "derangekit/counting.hpp"

namespace derangekit {

/// Affine expression coeff * i + offset in the free index i. The table
/// bindings only ever need coeff 0 (constant), 1 (the index, possibly
/// shifted) and 2 (the doubled index).
struct IndexExpr {
  int coeff = 0;
  long long offset = 0;

  long long eval(long long i) const { return coeff * i + offset; }

  std::string to_string(const std::string& name = "n") const {
    if (coeff == 0) return std::to_string(offset);
    std::string s = coeff == 1 ? name : std::to_string(coeff) + name;
    if (offset > 0) s += "+" + std::to_string(offset);
    if (offset < 0) s += std::to_string(offset);
    return s;
  }
};

/// A closed-form family with all but one parameter bound; evaluating it
/// along the free index generates a sequence.
struct ParameterBinding {
  Family family = Family::D11;
  IndexExpr m;  // ignored by BlockDerangement
  IndexExpr n;
  IndexExpr k;
  std::string free_index_name = "n";
  long long start_index = 0;  // first index where the parameters are valid
};

/// One sequence claim: an OEIS A-number equated with a parameterized
/// family. The claim is transcribed as printed, including suspect
/// A-numbers; verification decides what actually holds.
struct TableEntry {
  std::string table_id;  // "1".."5", "s22" or "note2"
  int row = 0;
  std::string a_number;  // as printed, e.g. "A002378" or "A0002444"
  bool malformed = false;
  std::optional<ParameterBinding> binding;  // empty: parameterization unknown
};

inline bool well_formed_a_number(const std::string& a) {
  if (a.size() != 7 || a[0] != 'A') return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(a[i]))) return false;
  return true;
}

namespace detail {

inline void check_int_range(long long v, const char* what) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw std::domain_error(std::string(what) + " out of range");
}

}  // namespace detail

/// Family value at one index of a binding.
inline BigInt evaluate_binding(const ParameterBinding& b, long long i) {
  const long long m = b.m.eval(i), n = b.n.eval(i), k = b.k.eval(i);
  detail::check_int_range(m, "m");
  detail::check_int_range(n, "n");
  detail::check_int_range(k, "k");
  return evaluate_family(b.family, static_cast<int>(m), static_cast<int>(n),
                         static_cast<int>(k));
}

/// Smallest index >= 0 at which the bound parameters satisfy the family's
/// preconditions.
inline long long first_valid_index(const ParameterBinding& b,
                                   long long scan_limit = 1000) {
  for (long long i = 0; i <= scan_limit; ++i) {
    try {
      evaluate_binding(b, i);
      return i;
    } catch (const std::domain_error&) {
      continue;
    }
  }
  throw std::domain_error("binding has no valid index in [0, " +
                          std::to_string(scan_limit) + "]");
}

/// Terms family(params(i)) for i in [from_index, from_index + count).
inline std::vector<BigInt> generate_terms(const ParameterBinding& b,
                                          long long from_index, int count) {
  if (count < 1) throw std::domain_error("count must be at least 1");
  if (from_index < b.start_index)
    throw std::domain_error("from_index " + std::to_string(from_index) +
                            " is below the binding's first valid index " +
                            std::to_string(b.start_index));
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = from_index; i < from_index + count; ++i) {
    try {
      out.push_back(evaluate_binding(b, i));
    } catch (const std::domain_error& e) {
      throw std::domain_error("index " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

/// Every sequence claim shipped with the library, in print order: tables
/// 1-4, the standalone S22 claim, table 5, then the five block-derangement
/// A-numbers whose parameterization is unstated (left
/// unbound; the verifier searches small slices for them).
inline const std::vector<TableEntry>& builtin_table() {
  static const std::vector<TableEntry> table = [] {
    std::vector<TableEntry> t;
    const auto C = [](long long v) { return IndexExpr{0, v}; };
    const IndexExpr N{1, 0};
    const auto Nm = [](long long d) { return IndexExpr{1, -d}; };
    const IndexExpr twoN{2, 0};
    auto add = [&t](const char* table_id, int row, const char* a, Family fam,
                    IndexExpr m, IndexExpr n, IndexExpr k, long long start) {
      ParameterBinding b;
      b.family = fam;
      b.m = m;
      b.n = n;
      b.k = k;
      b.start_index = start;
      t.push_back(TableEntry{table_id, row, a, !well_formed_a_number(a), b});
    };

    // Table 1: pointwise forbidden values, D11.
    add("1", 1, "A001477", Family::D11, C(1), N, C(1), 1);
    add("1", 2, "A002378", Family::D11, C(2), N, C(1), 1);
    add("1", 3, "A045991", Family::D11, C(3), N, C(1), 1);
    add("1", 4, "A085537", Family::D11, C(4), N, C(1), 1);
    add("1", 5, "A085538", Family::D11, C(5), N, C(1), 1);
    add("1", 6, "A085539", Family::D11, C(6), N, C(1), 1);
    add("1", 7, "A000079", Family::D11, N, C(2), C(1), 1);
    add("1", 8, "A008776", Family::D11, N, C(3), C(1), 1);
    add("1", 9, "A002001", Family::D11, N, C(4), C(1), 1);
    add("1", 10, "A005054", Family::D11, N, C(5), C(1), 1);
    add("1", 11, "A052934", Family::D11, N, C(6), C(1), 1);
    add("1", 12, "A055272", Family::D11, N, C(7), C(1), 1);
    add("1", 13, "A055274", Family::D11, N, C(8), C(1), 1);
    add("1", 14, "A055275", Family::D11, N, C(9), C(1), 1);
    add("1", 15, "A052268", Family::D11, N, C(10), C(1), 1);
    add("1", 16, "A055276", Family::D11, N, C(11), C(1), 1);
    add("1", 17, "A000290", Family::D11, C(2), N, C(2), 1);
    add("1", 18, "A011379", Family::D11, C(3), N, C(2), 1);
    add("1", 19, "A035287", Family::D11, C(4), N, C(2), 1);
    add("1", 20, "A099762", Family::D11, C(5), N, C(2), 1);
    add("1", 21, "A000079", Family::D11, N, C(2), C(2), 2);
    add("1", 22, "A003946", Family::D11, N, C(3), C(2), 2);
    add("1", 23, "A002063", Family::D11, N, C(4), C(2), 2);
    add("1", 24, "A055842", Family::D11, N, C(5), C(2), 2);
    add("1", 25, "A055846", Family::D11, N, C(6), C(2), 2);
    add("1", 26, "A055270", Family::D11, N, C(7), C(2), 2);
    add("1", 27, "A055847", Family::D11, N, C(8), C(2), 2);
    add("1", 28, "A055995", Family::D11, N, C(9), C(2), 2);
    add("1", 29, "A055996", Family::D11, N, C(10), C(2), 2);
    add("1", 30, "A056002", Family::D11, N, C(11), C(2), 2);
    add("1", 31, "A056116", Family::D11, N, C(12), C(2), 2);
    add("1", 32, "A076728", Family::D11, N, N, C(2), 2);
    add("1", 33, "A000578", Family::D11, C(3), N, C(3), 1);
    add("1", 34, "A005051", Family::D11, N, C(3), C(3), 3);
    add("1", 35, "A056120", Family::D11, N, C(4), C(3), 3);
    add("1", 36, "A000583", Family::D11, C(4), N, C(4), 1);
    add("1", 37, "A101362", Family::D11, C(5), N, C(4), 1);
    add("1", 38, "A118265", Family::D11, N, C(4), C(4), 4);

    // Table 2: pointwise forbidden 2-sets, D12.
    add("2", 1, "A000027", Family::D12, C(1), N, C(1), 2);
    add("2", 2, "A005563", Family::D12, C(2), N, C(1), 2);
    add("2", 3, "A027620", Family::D12, C(3), N, C(1), 2);
    add("2", 4, "A000244", Family::D12, N, C(3), C(1), 1);
    add("2", 5, "A004171", Family::D12, N, C(4), C(1), 1);
    add("2", 6, "A005053", Family::D12, N, C(5), C(1), 1);
    add("2", 7, "A067411", Family::D12, N, C(6), C(1), 1);
    add("2", 8, "A000290", Family::D12, C(2), N, C(2), 2);
    add("2", 9, "A0002444", Family::D12, N, C(3), C(2), 2);  // 7-digit id as printed
    add("2", 10, "A000578", Family::D12, C(3), N, C(3), 2);
    add("2", 11, "A081294", Family::D12, N, C(4), C(3), 3);
    add("2", 12, "A000583", Family::D12, C(4), N, C(4), 2);

    // Table 3: 2-blocks vs forbidden constants, D21.
    add("3", 1, "A005563", Family::D21, C(2), N, C(1), 1);
    add("3", 2, "A007531", Family::D21, C(3), N, C(1), 1);
    add("3", 3, "A047982", Family::D21, C(4), N, C(1), 1);
    add("3", 4, "A005051", Family::D21, N, C(3), C(1), 2);
    add("3", 5, "A005010", Family::D21, N, C(2), C(2), 4);

    // Table 4: 2-blocks vs forbidden 2-sets, D22.
    add("4", 1, "A005030", Family::D22, N, C(3), C(1), 2);
    add("4", 2, "A002001", Family::D22, N, C(4), C(1), 2);
    add("4", 3, "A002063", Family::D22, N, C(4), C(2), 4);

    // Standalone claim after the S22 closed form.
    add("s22", 1, "A005032", Family::S22, N, C(3), C(1), 2);

    // Table 5: injections with forbidden point pairs, I1.
    add("5", 1, "A000290", Family::I1, C(2), N, C(1), 2);
    add("5", 2, "A045991", Family::I1, C(3), N, C(1), 3);
    add("5", 3, "A114436", Family::I1, C(3), N, C(1), 3);
    add("5", 4, "A047929", Family::I1, C(4), N, C(1), 4);
    add("5", 5, "A001563", Family::I1, N, N, C(1), 1);
    add("5", 6, "A001564", Family::I1, N, N, C(2), 2);
    add("5", 7, "A001565", Family::I1, N, N, C(3), 3);
    add("5", 8, "A002061", Family::I1, C(2), N, C(2), 2);
    add("5", 9, "A027444", Family::I1, C(3), N, C(2), 3);
    add("5", 10, "A058895", Family::I1, C(4), N, C(2), 4);
    add("5", 11, "A027444", Family::I1, C(3), N, C(2), 3);
    add("5", 12, "A074143", Family::I1, Nm(1), N, C(1), 2);
    add("5", 13, "A001563", Family::I1, Nm(1), N, C(1), 2);
    add("5", 14, "A094304", Family::I1, Nm(1), N, C(1), 2);
    add("5", 15, "A109074", Family::I1, Nm(1), N, C(1), 2);
    add("5", 16, "A094258", Family::I1, Nm(1), N, C(1), 2);
    add("5", 17, "A001564", Family::I1, Nm(1), N, C(2), 3);
    add("5", 18, "A001565", Family::I1, Nm(1), N, C(3), 4);
    add("5", 19, "A001688", Family::I1, Nm(1), N, C(4), 5);
    add("5", 20, "A001689", Family::I1, Nm(1), N, C(5), 6);
    add("5", 21, "A023043", Family::I1, Nm(1), N, C(6), 7);
    add("5", 22, "A023044", Family::I1, Nm(1), N, C(7), 8);
    add("5", 23, "A023045", Family::I1, Nm(1), N, C(8), 9);
    add("5", 24, "A023046", Family::I1, Nm(1), N, C(9), 10);
    add("5", 25, "A023407", Family::I1, Nm(1), N, C(10), 11);
    add("5", 26, "A001563", Family::I1, Nm(2), N, C(1), 3);
    add("5", 27, "A001564", Family::I1, Nm(2), N, C(2), 4);
    add("5", 28, "A061079", Family::I1, N, twoN, C(1), 1);

    // Block-derangement sequences listed without a parameterization.
    int row = 1;
    for (const char* a :
         {"A128805", "A127888", "A116221", "A116220", "A116219"})
      t.push_back(TableEntry{"note2", row++, a, false, std::nullopt});

    return t;
  }();
  return table;
}

/// Entries of one table, in row order.
inline std::vector<TableEntry> table_entries(const std::string& table_id) {
  std::vector<TableEntry> out;
  for (const TableEntry& e : builtin_table())
    if (e.table_id == table_id) out.push_back(e);
  return out;
}

inline nlohmann::json catalog_to_json() {
  nlohmann::json arr = nlohmann::json::array();
  for (const TableEntry& e : builtin_table()) {
    nlohmann::json j;
    j["table"] = e.table_id;
    j["row"] = e.row;
    j["a_number"] = e.a_number;
    j["status"] = e.malformed ? "malformed" : (e.binding ? "ok" : "unbound");
    if (e.binding) {
      const ParameterBinding& b = *e.binding;
      j["family"] = family_name(b.family);
      nlohmann::json jb;
      if (b.family != Family::BlockDerangement)
        jb["m"] = b.m.to_string(b.free_index_name);
      jb["n"] = b.n.to_string(b.free_index_name);
      jb["k"] = b.k.to_string(b.free_index_name);
      jb["start"] = b.start_index;
      j["binding"] = std::move(jb);
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace derangekit
