#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "diagcx/diagcx.hpp"

namespace dcx {

/// Polynomial with integer coefficients in variables z_0..z_{k-1}.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int variables) : vars_(variables) {}

  static MultiPoly constant(int variables, std::int64_t c);
  static MultiPoly variable(int variables, int i);

  int variables() const { return vars_; }
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, std::int64_t c);
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly pow(int e) const;

  /// Value with every variable set to `x`.
  std::int64_t evaluate_diagonal(std::int64_t x) const;

  /// e.g. "z1^2*z2 + 3*z1"; variables are 1-based in the text.
  std::string to_string(const std::string& var = "z") const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  int vars_ = 0;
  std::map<Monomial, std::int64_t> terms_;  // no zero coefficients
};

/// Sum of monomial(U) over all simplices of the complex.
MultiPoly hilbert_polynomial(const LabelledComplex& lc);

/// Cyclic summand Z/(p^e).
using PrimePower = std::pair<int, int>;  // (p, e)

/// A finitely generated abelian group: Z^free plus cyclic p-power summands.
struct ModuleCoefficient {
  std::int64_t free = 0;
  std::map<PrimePower, std::int64_t> torsion;  // summand -> multiplicity, no zeros
  bool is_zero() const { return free == 0 && torsion.empty(); }
  friend bool operator==(const ModuleCoefficient&, const ModuleCoefficient&) = default;
};

/// A series in R[[t]] kept up to degree `truncation`. `finite` records that all
/// coefficients above the truncation are zero, i.e. the series is a polynomial.
class GradedModuleSeries {
 public:
  GradedModuleSeries() = default;
  GradedModuleSeries(int truncation, bool finite);

  /// Z in degree 0.
  static GradedModuleSeries unit(int truncation);
  static GradedModuleSeries zero(int truncation);
  /// Homology of the circle: Z + Z t.
  static GradedModuleSeries circle(int truncation);
  /// Homology of B(Z/m), m >= 2: Z in degree 0 and Z/m in every odd degree.
  static GradedModuleSeries cyclic_group(int m, int truncation);
  /// Free polynomial sum_d c[d] t^d; throws std::invalid_argument if it does
  /// not fit below the truncation.
  static GradedModuleSeries free_polynomial(const std::vector<std::int64_t>& c, int truncation);

  int truncation() const { return truncation_; }
  bool finite() const { return finite_; }
  const ModuleCoefficient& operator[](int d) const { return coeffs_.at(static_cast<std::size_t>(d)); }
  ModuleCoefficient& at(int d) { return coeffs_.at(static_cast<std::size_t>(d)); }
  void add_torsion(int d, int p, int e, std::int64_t count);

  GradedModuleSeries operator+(const GradedModuleSeries& o) const;
  /// Removes one copy of Z from degree 0. Throws std::invalid_argument if there is none.
  GradedModuleSeries reduced() const;

  /// sum_d (-1)^d rank; throws UnsupportedError unless the series is finite.
  std::int64_t euler_characteristic() const;

  /// "1 + 6t + 9t^2", "1 + (Z/2)^2 t + ... + O(t^9)".
  std::string to_string() const;

  friend bool operator==(const GradedModuleSeries&, const GradedModuleSeries&) = default;

 private:
  int truncation_ = 0;
  bool finite_ = true;
  std::vector<ModuleCoefficient> coeffs_;
};

/// Degree-additive product with Z.M = M, Z/p^i . Z/p^j = (1+t) Z/p^min(i,j) and
/// Z/p^i . Z/q^j = 0 for p != q. Throws std::invalid_argument on differing truncations.
GradedModuleSeries tor_mul(const GradedModuleSeries& a, const GradedModuleSeries& b);
GradedModuleSeries tor_pow(const GradedModuleSeries& a, int e);

/// 1 + h(y_1 - 1, ..., y_k - 1). Throws std::invalid_argument unless there is
/// one series per variable of h, all with the same truncation.
GradedModuleSeries substitute(const MultiPoly& h, const std::vector<GradedModuleSeries>& y);

/// 1 + sum (y_i - 1).
GradedModuleSeries free_product_series(const std::vector<GradedModuleSeries>& factors);

/// (1 + n t)^(n-1), a finite series.
GradedModuleSeries series_Wh_free(int n);
/// (1 - n)^(n-1) from the closed form.
std::int64_t wh_free_euler_characteristic(int n);

/// Truncated expansion of 1 + y (1+t)^-1 [(1 + n t/(1-t))^(n-1) - 1], y a copy
/// of Z/p. Throws std::invalid_argument unless p is prime, n >= 1 and D >= 1.
GradedModuleSeries series_Wh_Zp(int n, int p, int degree);

/// (1 + x_1 + ... + x_n)^(n-1) - 1, the Hilbert polynomial of Gamma_{F_n} in closed form.
MultiPoly forest_hilbert_closed_form(int n);

/// Prime factorisation as (p, e) pairs, increasing p.
std::vector<PrimePower> factorize(int m);

/// {"truncation": D, "finite": b, "coefficients": [{"degree": d, "free": r, "torsion": ["2^1", ...]}, ...]}
nlohmann::json to_json(const GradedModuleSeries& s);

}  // namespace dcx
