#include <doctest.h>

#include <chrono>
#include <numeric>

#include "diagcx/errors.hpp"
#include "diagcx/forests.hpp"
#include "diagcx/homcalc.hpp"
#include "diagcx/series.hpp"
#include "support.hpp"

using namespace dcx;

namespace {

std::vector<long> ints(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

IntegerMatrix random_matrix(std::mt19937_64& r, std::size_t rows, std::size_t cols, int range) {
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(r() % static_cast<unsigned>(2 * range + 1)) - range;
  return m;
}

// Product of random elementary matrices.
IntegerMatrix random_unimodular(std::mt19937_64& r, std::size_t n) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  if (n < 2) return u;
  for (int k = 0; k < 12; ++k) {
    IntegerMatrix e = IntegerMatrix::identity(n);
    const std::size_t i = r() % n;
    std::size_t j = r() % n;
    if (i == j) j = (j + 1) % n;
    e(i, j) = static_cast<long>(r() % 5) - 2;
    u = u * e;
  }
  return u;
}

// gcd of all k x k minors for k = 1, 2, by brute force.
mpz_class minor_gcd(const IntegerMatrix& m, int k) {
  mpz_class g = 0;
  if (k == 1) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
    return g;
  }
  for (std::size_t i1 = 0; i1 < m.rows(); ++i1)
    for (std::size_t i2 = i1 + 1; i2 < m.rows(); ++i2)
      for (std::size_t j1 = 0; j1 < m.cols(); ++j1)
        for (std::size_t j2 = j1 + 1; j2 < m.cols(); ++j2)
          g = gcd(g, m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1));
  return g;
}

IntegerMatrix transpose(const IntegerMatrix& m) {
  IntegerMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

SimplicialComplexData cycle(int m) {
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < m; ++i) edges.push_back({i, (i + 1) % m});
  return SimplicialComplexData::from_maximal(m, edges);
}

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(ints(smith_normal_form(IntegerMatrix::identity(3))) == std::vector<long>{1, 1, 1});
  CHECK(ints(smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}))) == std::vector<long>{1, 6});
  CHECK(smith_normal_form(IntegerMatrix(3, 2)).empty());
  CHECK(ints(smith_normal_form(IntegerMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}))) ==
        std::vector<long>{2, 6, 12});
  CHECK(smith_normal_form(IntegerMatrix(0, 4)).empty());
  CHECK_THROWS_AS(IntegerMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
  CHECK(to_triplets(IntegerMatrix::from_rows({{0, 5}, {-1, 0}})) == "2 2 2\n1 2 5\n2 1 -1\n");
}

TEST_CASE("smith normal form against minors and unimodular changes") {
  auto r = testing::rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + r() % 5, cols = 1 + r() % 5;
    const auto m = random_matrix(r, rows, cols, trial % 2 ? 3 : 9);
    const auto d = smith_normal_form(m);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i] % d[i - 1] == 0);
    CHECK(d.size() == rank(m));
    CHECK(rank(m) == rank(transpose(m)));
    CHECK((d.empty() ? mpz_class(0) : d[0]) == minor_gcd(m, 1));
    if (rows >= 2 && cols >= 2) CHECK((d.size() < 2 ? mpz_class(0) : d[0] * d[1]) == minor_gcd(m, 2));
    const auto u = random_unimodular(r, rows), v = random_unimodular(r, cols);
    CHECK(smith_normal_form(u * m * v) == d);
  }
}

TEST_CASE("rank of low-rank products") {
  auto r = testing::rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + r() % 4;
    const auto m = random_matrix(r, 7, k, 4) * random_matrix(r, k, 9, 4);
    CHECK(rank(m) <= k);
    CHECK(rank(m) == smith_normal_form(m).size());
  }
  CHECK(rank(IntegerMatrix(4, 4)) == 0);
}

TEST_CASE("simplicial homology") {
  const auto simplex = SimplicialComplexData::from_maximal(4, {{0, 1, 2, 3}});
  CHECK(reduced_betti(simplex, 3) == std::vector<std::int64_t>{0, 0, 0, 0});
  const auto c8 = simplicial_homology(cycle(8), 2);
  CHECK(c8[0].free == 1);
  CHECK(c8[1].free == 1);
  CHECK(c8[2].free == 0);
  CHECK(reduced_betti(cycle(3), 1) == std::vector<std::int64_t>{0, 1});
  // six-vertex projective plane
  const auto rp2 = SimplicialComplexData::from_maximal(
      6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
  const auto h = simplicial_homology(rp2, 2);
  CHECK(h[0].free == 1);
  CHECK(h[1].free == 0);
  REQUIRE(h[1].torsion.size() == 1);
  CHECK(h[1].torsion[0] == 2);
  CHECK(h[2] == HomologyGroup{});
  CHECK(to_json(h)[1]["torsion"] == nlohmann::json::array({"2"}));
  CHECK_THROWS_AS(SimplicialComplexData(3, {{0, 1}}), std::invalid_argument);
  const auto bd = boundary_matrix(simplex, 2);
  CHECK((boundary_matrix(simplex, 1) * bd).is_zero());
}

TEST_CASE("torus model of forest complexes") {
  CHECK(torus_model_betti(build_gamma_Fn(2)) == std::vector<std::int64_t>{1, 2});
  CHECK(torus_model_betti(build_gamma_Fn(3)) == std::vector<std::int64_t>{1, 6, 9});
  const auto t0 = std::chrono::steady_clock::now();
  CHECK(torus_model_betti(build_gamma_Fn(4), {}, 2) == std::vector<std::int64_t>{1, 12, 48, 64});
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(60));
  CHECK_THROWS_AS(torus_model_betti(build_gamma_Fn(2), {"circle", "Z/2"}), UnsupportedError);
  CHECK_THROWS_AS(torus_model_betti(build_gamma_Fn(2), {"circle"}), std::invalid_argument);
}

TEST_CASE("torus model counts blocks and matches the Hilbert polynomial") {
  std::vector<LabelledComplex> cases;
  for (int n = 1; n <= 4; ++n) cases.push_back(build_gamma_Fn(n));
  for (bool w : {false, true}) {
    auto c = testing::example_t(w);
    auto l = universal_labelling(c);
    cases.emplace_back(std::move(c), std::move(l));
  }
  for (int m = 1; m <= 4; ++m) {
    auto c = testing::full_simplex(m);
    auto l = universal_labelling(c);
    cases.emplace_back(std::move(c), std::move(l));
  }
  for (const auto& lc : cases) {
    const auto betti = torus_model_betti(lc);
    std::vector<std::int64_t> predicted(betti.size(), 0);
    predicted[0] = 1;
    for (const auto& [u, g] : lc.complex().gamma_map()) predicted.at(g.block_count()) += 1;
    CHECK(betti == predicted);
    std::int64_t alt = 0;
    for (std::size_t k = 0; k < betti.size(); ++k) alt += (k % 2 ? -1 : 1) * betti[k];
    CHECK(alt == hilbert_polynomial(lc).evaluate_diagonal(-1) + 1);
  }
}

TEST_CASE("coset nerves") {
  const auto z2 = cyclic_group(2);
  const auto v4 = direct_product(z2, z2);  // (a, b) -> 2a + b
  const auto klein = coset_nerve(v4, {{0, 2}, {0, 1}, {0}});
  CHECK(klein.cosets.size() == 8);
  CHECK(klein.complex.faces_of_dimension(1).size() == 8);
  CHECK(reduced_betti(klein.complex, 1) == std::vector<std::int64_t>{0, 1});

  const auto points = coset_nerve(symmetric_group_3(), {{0}});
  CHECK(points.complex.faces().size() == 6);
  CHECK(reduced_betti(points.complex, 0) == std::vector<std::int64_t>{5});

  CHECK_THROWS_AS(coset_nerve(v4, {{0, 2}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(coset_nerve(v4, {{0, 3, 1}}), std::invalid_argument);

  for (const auto& g : small_groups(8)) {
    CAPTURE(g.name());
    const auto nerve = coset_nerve(g, subgroups(g));
    const auto h = simplicial_homology(nerve.complex, 3);
    CHECK(h[0] == HomologyGroup{1, {}});
    for (int k = 1; k <= 3; ++k) CHECK(h[static_cast<std::size_t>(k)] == HomologyGroup{});
  }
}

namespace {

// Cellular chains of the factor: circle (zero differentials) or B(Z/m)
// (multiplication by m into odd degrees), cut at degree D.
struct ChainComplex {
  std::vector<long> diff;  // diff[d]: C_d -> C_{d-1}, rank-one complexes; diff[0] = 0
};

ChainComplex factor_chains(int m, int D) {
  ChainComplex c;
  const int top = m == 0 ? 1 : D;
  for (int d = 0; d <= top; ++d) c.diff.push_back(m != 0 && d >= 2 && d % 2 == 0 ? m : 0);
  return c;
}

// Homology of the tensor product in degrees < D via SNF of the total differential.
std::vector<ModuleCoefficient> kunneth_by_snf(const ChainComplex& a, const ChainComplex& b, int D) {
  const int ta = static_cast<int>(a.diff.size()) - 1, tb = static_cast<int>(b.diff.size()) - 1;
  auto basis = [&](int d) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i <= std::min(d, ta); ++i)
      if (d - i <= tb) out.push_back({i, d - i});
    return out;
  };
  auto differential = [&](int d) {
    const auto src = basis(d), dst = basis(d - 1);
    IntegerMatrix m(dst.size(), src.size());
    for (std::size_t s = 0; s < src.size(); ++s) {
      const auto [i, j] = src[s];
      for (std::size_t t = 0; t < dst.size(); ++t) {
        if (dst[t] == std::pair{i - 1, j}) m(t, s) += a.diff[static_cast<std::size_t>(i)];
        if (dst[t] == std::pair{i, j - 1}) m(t, s) += (i % 2 ? -1 : 1) * b.diff[static_cast<std::size_t>(j)];
      }
    }
    return m;
  };
  std::vector<ModuleCoefficient> out;
  for (int d = 0; d < D; ++d) {
    const auto in = d == 0 ? std::vector<mpz_class>{} : smith_normal_form(differential(d));
    const auto next = smith_normal_form(differential(d + 1));
    ModuleCoefficient c;
    c.free = static_cast<std::int64_t>(basis(d).size() - in.size() - next.size());
    for (const auto& x : next)
      if (x > 1)
        for (const auto& pe : factorize(static_cast<int>(x.get_si()))) c.torsion[pe] += 1;
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("tor products agree with chain-level Kunneth") {
  const int D = 8;
  using S = GradedModuleSeries;
  for (int m1 : {0, 2, 3, 4, 6})
    for (int m2 : {0, 2, 3, 4, 12}) {
      CAPTURE(m1);
      CAPTURE(m2);
      const S a = m1 ? S::cyclic_group(m1, D) : S::circle(D);
      const S b = m2 ? S::cyclic_group(m2, D) : S::circle(D);
      const auto prod = tor_mul(a, b);
      const auto snf = kunneth_by_snf(factor_chains(m1, D), factor_chains(m2, D), D);
      for (int d = 0; d < D; ++d) CHECK(prod[d] == snf[static_cast<std::size_t>(d)]);
    }
}
