#include "diagcx/decomposition.hpp"

#include <stdexcept>

namespace dcx {

namespace {

std::string join_ints(const std::vector<int>& v, int offset = 0) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i] + offset);
  return out;
}

// Display width in code points, so that "⊗" counts as one column.
std::size_t width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;
  return w;
}

}  // namespace

DecompositionReport decomposition_report(int n, const std::vector<int>& multiplicities,
                                         const std::vector<GradedModuleSeries>& base_series) {
  if (base_series.size() != multiplicities.size())
    throw std::invalid_argument("decomposition_report: need one base series per colour");
  for (const auto& s : base_series)
    if (s.truncation() != base_series.front().truncation())
      throw std::invalid_argument("decomposition_report: base series truncations differ");
  const auto orbits = orbit_decomposition(n, multiplicities);
  DecompositionReport report;
  report.n = n;
  report.multiplicities = multiplicities;
  report.group_order = orbits.empty() ? 1 : orbits.front().orbit_size * orbits.front().stabilizer_order;
  for (const auto& o : orbits) {
    DecompositionRow row;
    row.representative = o.representative;
    row.aut_order = o.stabilizer_order;
    row.orbit_size = o.orbit_size;
    row.edge_count = o.representative.forest.edge_count();
    row.out_degrees = o.representative.forest.out_degrees();
    std::vector<int> exponent(multiplicities.size(), 0);
    for (int v = 0; v < n; ++v)
      exponent[static_cast<std::size_t>(o.representative.coloring[static_cast<std::size_t>(v)])] +=
          row.out_degrees[static_cast<std::size_t>(v)];
    row.module_series = GradedModuleSeries::unit(base_series.front().truncation());
    for (std::size_t c = 0; c < exponent.size(); ++c) {
      if (!exponent[c]) continue;
      if (!row.module.empty()) row.module += " ⊗ ";
      row.module += "C" + std::to_string(c + 1);
      if (exponent[c] > 1) row.module += "^" + std::to_string(exponent[c]);
      row.module_series = tor_mul(row.module_series, tor_pow(base_series[c].reduced(), exponent[c]));
    }
    row.determinant_sign = determinant_sign_nontrivial(o.representative);
    report.rows.push_back(std::move(row));
  }
  return report;
}

nlohmann::json to_json(const DecompositionReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["multiplicities"] = r.multiplicities;
  j["group_order"] = r.group_order;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json x;
    x["forest"] = to_json(row.representative.forest);
    std::vector<int> colours;
    for (int c : row.representative.coloring) colours.push_back(c + 1);
    x["colours"] = colours;
    x["aut_order"] = row.aut_order;
    x["orbit_size"] = row.orbit_size;
    x["edges"] = row.edge_count;
    x["out_degrees"] = row.out_degrees;
    x["module"] = row.module;
    x["module_series"] = row.module_series.to_string();
    x["determinant_sign"] = row.determinant_sign;
    j["rows"].push_back(x);
  }
  return j;
}

std::string to_text(const DecompositionReport& r) {
  std::vector<std::vector<std::string>> rows{{"forest", "colours", "|Aut|", "orbit", "|E|", "out", "module", "series", "det"}};
  for (const auto& row : r.rows)
    rows.push_back({render_edges(row.representative.forest), join_ints(row.representative.coloring, 1),
                    std::to_string(row.aut_order), std::to_string(row.orbit_size), std::to_string(row.edge_count),
                    join_ints(row.out_degrees), row.module, row.module_series.to_string(),
                    row.determinant_sign ? "yes" : "no"});
  return format_table(rows);
}

std::string format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (w.size() <= i) w.push_back(0);
      w[i] = std::max(w[i], width(row[i]));
    }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(w[i] - width(row[i]) + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace dcx
