#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "derangekit/catalog.hpp"

using namespace derangekit;

TEST_CASE("catalog has every printed row") {
  CHECK(table_entries("1").size() == 38);
  CHECK(table_entries("2").size() == 12);
  CHECK(table_entries("3").size() == 5);
  CHECK(table_entries("4").size() == 3);
  CHECK(table_entries("s22").size() == 1);
  CHECK(table_entries("5").size() == 28);
  CHECK(table_entries("note2").size() == 5);
  CHECK(builtin_table().size() == 92);
}

TEST_CASE("the seven-digit identifier is kept verbatim and flagged") {
  const std::vector<TableEntry> table2 = table_entries("2");
  const TableEntry& row9 = table2[8];
  CHECK(row9.row == 9);
  CHECK(row9.a_number == "A0002444");
  CHECK(row9.malformed);
  // the binding itself is usable even though the identifier is broken
  REQUIRE(row9.binding);
  CHECK(generate_terms(*row9.binding, 2, 3) ==
        std::vector<BigInt>{1, 3, 9});  // 3^(n-2)
}

TEST_CASE("table 5 rows 12-16 share one binding") {
  const std::vector<TableEntry> table5 = table_entries("5");
  for (int row : {12, 13, 14, 15, 16}) {
    const TableEntry& e = table5[row - 1];
    REQUIRE(e.binding);
    CHECK(e.binding->family == Family::I1);
    CHECK(e.binding->m.to_string() == "n-1");
    CHECK(e.binding->n.to_string() == "n");
    CHECK(e.binding->k.to_string() == "1");
  }
}

TEST_CASE("repeated A-numbers with different bindings are retained") {
  std::set<std::string> bindings;
  for (const TableEntry& e : table_entries("5"))
    if (e.a_number == "A001563")
      bindings.insert(e.binding->m.to_string());
  CHECK(bindings == std::set<std::string>{"n", "n-1", "n-2"});
}

TEST_CASE("term generation matches enumeration-backed values") {
  ParameterBinding oblong;  // values n(n-1): two choices for one forbidden pair
  oblong.family = Family::D11;
  oblong.m = IndexExpr{0, 2};
  oblong.n = IndexExpr{1, 0};
  oblong.k = IndexExpr{0, 1};
  oblong.start_index = 1;
  CHECK(generate_terms(oblong, 1, 5) == std::vector<BigInt>{0, 2, 6, 12, 20});

  ParameterBinding derangements;  // i1 with m = n = k
  derangements.family = Family::I1;
  derangements.m = IndexExpr{1, 0};
  derangements.n = IndexExpr{1, 0};
  derangements.k = IndexExpr{1, 0};
  derangements.start_index = 0;
  CHECK(generate_terms(derangements, 1, 5) ==
        std::vector<BigInt>{0, 1, 2, 9, 44});

  ParameterBinding blocks;
  blocks.family = Family::BlockDerangement;
  blocks.n = IndexExpr{1, 0};
  blocks.k = IndexExpr{0, 2};
  blocks.start_index = 0;
  CHECK(generate_terms(blocks, 0, 3) == std::vector<BigInt>{1, 0, 20});
}

TEST_CASE("every bound entry starts exactly where its parameters turn valid") {
  for (const TableEntry& e : builtin_table()) {
    if (!e.binding) continue;
    INFO("table " << e.table_id << " row " << e.row);
    CHECK(e.binding->start_index == first_valid_index(*e.binding));
  }
}

TEST_CASE("every bound entry evaluates for at least 10 consecutive indices") {
  for (const TableEntry& e : builtin_table()) {
    if (!e.binding) continue;
    INFO("table " << e.table_id << " row " << e.row);
    CHECK_NOTHROW(generate_terms(*e.binding, e.binding->start_index, 10));
  }
}

TEST_CASE("generate_terms rejects bad ranges and reports failing indices") {
  ParameterBinding b;
  b.family = Family::D12;
  b.m = IndexExpr{1, 0};
  b.n = IndexExpr{0, 3};
  b.k = IndexExpr{0, 2};
  b.start_index = 2;
  CHECK_THROWS_AS(generate_terms(b, 1, 5), std::domain_error);
  CHECK_THROWS_AS(generate_terms(b, 2, 0), std::domain_error);

  ParameterBinding shrinking;  // k fixed, m = 4 - n eventually negative
  shrinking.family = Family::D11;
  shrinking.m = IndexExpr{0, 4};
  shrinking.n = IndexExpr{1, 0};
  shrinking.k = IndexExpr{1, 0};  // k = n > m = 4 once n reaches 5
  shrinking.start_index = 1;
  CHECK_THROWS_WITH(generate_terms(shrinking, 1, 10),
                    Catch::Matchers::ContainsSubstring("index 5"));
}

TEST_CASE("catalog exports as JSON") {
  nlohmann::json j = catalog_to_json();
  REQUIRE(j.is_array());
  CHECK(j.size() == 92);
  int malformed = 0, unbound = 0;
  for (const auto& entry : j) {
    REQUIRE(entry.contains("table"));
    REQUIRE(entry.contains("row"));
    REQUIRE(entry.contains("a_number"));
    const std::string status = entry["status"].get<std::string>();
    if (status == "malformed") ++malformed;
    if (status == "unbound") ++unbound;
    if (status == "ok") {
      REQUIRE(entry.contains("binding"));
      CHECK(entry["binding"].contains("start"));
    }
  }
  CHECK(malformed == 1);
  CHECK(unbound == 5);
}
