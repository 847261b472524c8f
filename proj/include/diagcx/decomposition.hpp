#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagcx/forests.hpp"
#include "diagcx/series.hpp"

namespace dcx {

/// One orbit of coloured forests and its symbolic coefficient module.
struct DecompositionRow {
  ColoredForest representative;
  std::uint64_t aut_order = 0;
  std::uint64_t orbit_size = 0;
  std::size_t edge_count = 0;
  std::vector<int> out_degrees;
  /// Tensor descriptor, e.g. "C1^2 ⊗ C2": colour c appears with exponent
  /// sum of out(i) over vertices i of colour c.
  std::string module;
  /// Tor-ring product of the reduced colour series with those exponents.
  GradedModuleSeries module_series;
  /// Aut(f) permutes the edges oddly somewhere, so the determinant twist applies.
  bool determinant_sign = false;
};

struct DecompositionReport {
  int n = 0;
  std::vector<int> multiplicities;
  std::uint64_t group_order = 0;
  std::vector<DecompositionRow> rows;
};

/// Throws std::invalid_argument when there is not exactly one base series per
/// colour or their truncations differ, and as orbit_decomposition otherwise.
DecompositionReport decomposition_report(int n, const std::vector<int>& multiplicities,
                                         const std::vector<GradedModuleSeries>& base_series);

nlohmann::json to_json(const DecompositionReport& r);
std::string to_text(const DecompositionReport& r);

/// Left-aligned columns separated by two spaces.
std::string format_table(const std::vector<std::vector<std::string>>& rows);

}  // namespace dcx
