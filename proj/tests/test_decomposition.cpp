#include <doctest.h>

#include <algorithm>

#include "diagcx/decomposition.hpp"

using namespace dcx;
using S = GradedModuleSeries;

TEST_CASE("one edge on two vertices") {
  auto r = decomposition_report(2, {2}, {S::circle(4)});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.group_order == 2);
  CHECK(r.rows[0].aut_order == 1);
  CHECK(r.rows[0].edge_count == 1);
  CHECK(r.rows[0].module == "C1");
  CHECK(r.rows[0].module_series.to_string() == "t");
  CHECK_FALSE(r.rows[0].determinant_sign);
}

TEST_CASE("three vertices, one colour") {
  auto r = decomposition_report(3, {3}, {S::circle(4)});
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) {
    CHECK(row.aut_order * row.orbit_size == 6);
    const bool cherry = row.edge_count == 2 && std::count(row.out_degrees.begin(), row.out_degrees.end(), 2) == 1;
    const bool path = row.edge_count == 2 && !cherry;
    if (cherry) {
      CHECK(row.aut_order == 2);
      CHECK(row.determinant_sign);
      CHECK(row.module == "C1^2");
      CHECK(row.module_series.to_string() == "t^2");
    }
    if (path) {
      CHECK(row.aut_order == 1);
      CHECK_FALSE(row.determinant_sign);
    }
  }
}

TEST_CASE("two colours") {
  auto r = decomposition_report(3, {2, 1}, {S::circle(6), S::cyclic_group(2, 6)});
  CHECK(r.rows.size() == 8);
  CHECK(r.group_order == 2);
  std::size_t mixed = 0;
  for (const auto& row : r.rows) {
    CHECK(row.aut_order * row.orbit_size == 2);
    if (row.module.find("⊗") != std::string::npos) ++mixed;
  }
  CHECK(mixed > 0);
  auto j = to_json(r);
  CHECK(j["rows"].size() == 8);
  auto text = to_text(r);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  CHECK_THROWS_AS(decomposition_report(3, {2, 1}, {S::circle(6)}), std::invalid_argument);
  CHECK_THROWS_AS(decomposition_report(3, {2, 1}, {S::circle(6), S::circle(5)}), std::invalid_argument);
}

TEST_CASE("table formatting pads by display width") {
  auto t = format_table({{"a", "b"}, {"⊗⊗", "c"}});
  CHECK(t == "a   b\n⊗⊗  c\n");
}
