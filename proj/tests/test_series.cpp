#include <doctest.h>

#include <cmath>
#include <numeric>

#include "diagcx/errors.hpp"
#include "diagcx/forests.hpp"
#include "diagcx/series.hpp"
#include "support.hpp"

using namespace dcx;
using S = GradedModuleSeries;

namespace {

std::int64_t factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// Coefficient of prod x_i^{a_i} in (1 + x_1 + ... + x_n)^{n-1}, by the multinomial formula.
std::int64_t multinomial_coefficient(int n, const Monomial& a) {
  const int used = std::accumulate(a.begin(), a.end(), 0);
  if (used > n - 1) return 0;
  std::int64_t r = factorial(n - 1) / factorial(n - 1 - used);
  for (int e : a) r /= factorial(e);
  return r;
}

S random_series(std::mt19937_64& gen, int D) {
  S s = S::zero(D);
  const int primes[] = {2, 3, 5};
  for (int d = 0; d <= D; ++d) {
    if (gen() % 3 == 0) s.at(d).free = static_cast<std::int64_t>(gen() % 4);
    if (gen() % 3 == 0) s.add_torsion(d, primes[gen() % 3], 1 + static_cast<int>(gen() % 3), 1 + static_cast<std::int64_t>(gen() % 3));
  }
  return s;
}

// Coefficients up to the truncation; the finite flag is a conservative
// annotation and may depend on how intermediate products were truncated.
bool same_coefficients(const S& a, const S& b) {
  if (a.truncation() != b.truncation()) return false;
  for (int d = 0; d <= a.truncation(); ++d)
    if (!(a[d] == b[d])) return false;
  return true;
}

bool nonnegative(const S& s) {
  for (int d = 0; d <= s.truncation(); ++d) {
    if (s[d].free < 0) return false;
    for (const auto& kv : s[d].torsion)
      if (kv.second <= 0) return false;
  }
  return true;
}

std::vector<S> factor_choices(int D) {
  return {S::circle(D), S::cyclic_group(2, D), S::cyclic_group(3, D), S::cyclic_group(4, D)};
}

}  // namespace

TEST_CASE("hilbert polynomials") {
  auto h2 = hilbert_polynomial(build_gamma_Fn(2));
  CHECK(h2.to_string("x") == "x1 + x2");
  for (int m = 1; m <= 5; ++m) {
    auto h = hilbert_polynomial(LabelledComplex(dcx::testing::full_simplex(m), Labelling::trivial(m)));
    std::int64_t binom = 1;
    for (int k = 1; k <= m; ++k) {
      binom = binom * (m - k + 1) / k;
      CHECK(h.coefficient({k}) == binom);
    }
    CHECK(h.terms().size() == static_cast<std::size_t>(m));
  }
  LabelledComplex t(dcx::testing::example_t(), Labelling(2, {0, 0, 1}));
  CHECK(hilbert_polynomial(t).to_string() == "z1^2 + z1*z2 + 2*z1 + z2");
}

TEST_CASE("forest Hilbert polynomial matches the multinomial count") {
  for (int n = 2; n <= 5; ++n) {
    const auto h = hilbert_polynomial(build_gamma_Fn(n));
    CHECK(h == forest_hilbert_closed_form(n));
    CHECK(h.coefficient(Monomial(static_cast<std::size_t>(n), 0)) == 0);
    const auto with_empty = h + MultiPoly::constant(n, 1);
    for (const auto& [m, c] : with_empty.terms()) CHECK(c == multinomial_coefficient(n, m));
    CHECK(h.evaluate_diagonal(1) + 1 == static_cast<std::int64_t>(std::pow(n + 1, n - 1)));
  }
}

TEST_CASE("tor ring products") {
  const int D = 6;
  S x2 = S::zero(D), x3 = S::zero(D);
  x2.add_torsion(0, 2, 1, 1);
  x3.add_torsion(0, 3, 1, 1);
  auto sq = tor_mul(x2, x2);
  S expected = S::zero(D);
  expected.add_torsion(0, 2, 1, 1);
  expected.add_torsion(1, 2, 1, 1);
  CHECK(sq == expected);
  CHECK(tor_mul(x2, x3) == S::zero(D));

  S x4 = S::zero(D), x8 = S::zero(D);
  x4.add_torsion(0, 2, 2, 1);
  x8.add_torsion(2, 2, 3, 1);
  auto m = tor_mul(x8, x4);
  CHECK(m[2].torsion.at({2, 2}) == 1);
  CHECK(m[3].torsion.at({2, 2}) == 1);

  auto gen = dcx::testing::rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_series(gen, D);
    CHECK(tor_mul(S::unit(D), s) == s);
  }
  CHECK_THROWS_AS(tor_mul(S::unit(3), S::unit(4)), std::invalid_argument);
}

TEST_CASE("tor_mul is commutative and associative on random series") {
  auto gen = dcx::testing::rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int D = 1 + static_cast<int>(gen() % 10);
    auto a = random_series(gen, D), b = random_series(gen, D), c = random_series(gen, D);
    CHECK(tor_mul(a, b) == tor_mul(b, a));
    CHECK(same_coefficients(tor_mul(tor_mul(a, b), c), tor_mul(a, tor_mul(b, c))));
    CHECK(same_coefficients(tor_mul(a, b + c), tor_mul(a, b) + tor_mul(a, c)));
    CHECK(nonnegative(tor_mul(a, b)));
  }
}

TEST_CASE("substitution") {
  const int D = 8;
  MultiPoly x = MultiPoly::variable(1, 0);
  CHECK(substitute(x, {S::circle(D)}) == S::circle(D));

  auto h3 = hilbert_polynomial(build_gamma_Fn(3));
  auto s = substitute(h3, std::vector<S>(3, S::circle(D)));
  CHECK(s.to_string() == "1 + 6t + 9t^2");

  auto h2 = hilbert_polynomial(build_gamma_Fn(2));
  for (int p : {2, 3, 5}) {
    auto z = substitute(h2, std::vector<S>(2, S::cyclic_group(p, D)));
    CHECK(z[0].free == 1);
    CHECK(z[0].torsion.empty());
    for (int d = 1; d <= D; ++d) {
      CHECK(z[d].free == 0);
      if (d % 2) CHECK(z[d].torsion == std::map<PrimePower, std::int64_t>{{{p, 1}, 2}});
      else CHECK(z[d].torsion.empty());
    }
    // Reduced homology of a wedge of two copies of B(Z/p).
    CHECK(z == free_product_series({S::cyclic_group(p, D), S::cyclic_group(p, D)}));
  }
  CHECK_THROWS_AS(substitute(h2, {S::circle(D)}), std::invalid_argument);
  CHECK_THROWS_AS(substitute(h2, {S::circle(D), S::circle(D + 1)}), std::invalid_argument);
}

TEST_CASE("free products") {
  const int D = 7;
  CHECK(free_product_series({S::circle(D), S::circle(D)}).to_string() == "1 + 2t");
  auto mixed = free_product_series({S::circle(D), S::cyclic_group(2, D)});
  CHECK(mixed.to_string() == "1 + (1 + Z/2) t + Z/2 t^3 + Z/2 t^5 + Z/2 t^7 + O(t^8)");
  CHECK(free_product_series({S::cyclic_group(6, D)}) == S::cyclic_group(6, D));
}

TEST_CASE("splitting at series level for all factor mixes") {
  const int D = 8;
  const auto choices = factor_choices(D);
  for (int n = 2; n <= 5; ++n) {
    const auto h = hilbert_polynomial(build_gamma_Fn(n));
    // Every assignment of factor types to the n positions, up to n = 3; a
    // seeded sample beyond that.
    std::vector<std::vector<int>> picks;
    if (n <= 3) {
      std::vector<int> p(static_cast<std::size_t>(n), 0);
      for (;;) {
        picks.push_back(p);
        std::size_t i = 0;
        while (i < p.size() && ++p[i] == 4) p[i++] = 0;
        if (i == p.size()) break;
      }
    } else {
      auto gen = dcx::testing::rng(static_cast<std::uint64_t>(n));
      for (int k = 0; k < 12; ++k) {
        std::vector<int> p;
        for (int i = 0; i < n; ++i) p.push_back(static_cast<int>(gen() % 4));
        picks.push_back(p);
      }
    }
    for (const auto& p : picks) {
      std::vector<S> y;
      for (int c : p) y.push_back(choices[static_cast<std::size_t>(c)]);
      const auto lhs = substitute(h, y);
      CHECK(lhs == tor_pow(free_product_series(y), n - 1));
      CHECK(nonnegative(lhs));
    }
  }
}

TEST_CASE("Wh of a free group") {
  CHECK(series_Wh_free(1).to_string() == "1");
  CHECK(series_Wh_free(2).to_string() == "1 + 2t");
  CHECK(series_Wh_free(3).to_string() == "1 + 6t + 9t^2");
  for (int n = 1; n <= 6; ++n) {
    const auto s = series_Wh_free(n);
    CHECK(s.euler_characteristic() == wh_free_euler_characteristic(n));
    if (n >= 2) {
      const auto via = substitute(hilbert_polynomial(build_gamma_Fn(n)),
                                  std::vector<S>(static_cast<std::size_t>(n), S::circle(n - 1)));
      CHECK(via == s);
    }
  }
  CHECK(wh_free_euler_characteristic(2) == -1);
  CHECK(wh_free_euler_characteristic(3) == 4);
  CHECK_THROWS_AS(S::cyclic_group(2, 4).euler_characteristic(), UnsupportedError);
}

TEST_CASE("Wh of a free product of cyclic groups of prime order") {
  CHECK(series_Wh_Zp(1, 3, 6) == S::unit(6));
  auto two = series_Wh_Zp(2, 5, 9);
  for (int d = 1; d <= 9; ++d) CHECK(two[d].torsion == (d % 2 ? std::map<PrimePower, std::int64_t>{{{5, 1}, 2}} : std::map<PrimePower, std::int64_t>{}));
  auto three = series_Wh_Zp(3, 2, 4);
  CHECK(three[1].torsion.at({2, 1}) == 6);
  CHECK(three[2].torsion.at({2, 1}) == 9);
  for (int n = 1; n <= 4; ++n)
    for (int p : {2, 3}) {
      auto via_complex = n == 1 ? S::unit(12)
                                : substitute(hilbert_polynomial(build_gamma_Fn(n)),
                                             std::vector<S>(static_cast<std::size_t>(n), S::cyclic_group(p, 12)));
      auto closed = series_Wh_Zp(n, p, 12);
      for (int d = 0; d <= 12; ++d) CHECK(closed[d] == via_complex[d]);
    }
  CHECK_THROWS_AS(series_Wh_Zp(2, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(series_Wh_Zp(2, 2, 0), std::invalid_argument);
}

TEST_CASE("rendering and json") {
  CHECK(S::zero(3).to_string() == "0");
  CHECK(S::cyclic_group(4, 3).to_string() == "1 + Z/4 t + Z/4 t^3 + O(t^4)");
  auto two = free_product_series({S::cyclic_group(2, 1), S::cyclic_group(2, 1)});
  CHECK(two.to_string() == "1 + (Z/2)^2 t + O(t^2)");
  auto j = to_json(S::cyclic_group(12, 1));
  CHECK(j.dump() ==
        R"({"coefficients":[{"degree":0,"free":1,"torsion":[]},{"degree":1,"free":0,"torsion":["2^2","3^1"]}],"finite":false,"truncation":1})");
  CHECK(factorize(360) == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
}
