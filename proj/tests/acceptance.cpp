// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "diagcx/bipartite.hpp"
#include "diagcx/forests.hpp"
#include "diagcx/homcalc.hpp"
#include "diagcx/present.hpp"
#include "diagcx/series.hpp"
#include "oracles.hpp"

using namespace dcx;
using dcx::testing::diagonal_image;
using dcx::testing::edges1;

namespace {

using S = GradedModuleSeries;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Failing checks append to `why`.
struct Check {
  std::ostringstream why;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

bool same_coefficients(const S& a, const S& b) {
  if (a.truncation() != b.truncation()) return false;
  for (int d = 0; d <= a.truncation(); ++d)
    if (!(a[d] == b[d])) return false;
  return true;
}

void c1(Check& c) {
  for (int n = 2; n <= 6; ++n) {
    const auto got = enumerate_forests(n, false).size();
    c.expect(static_cast<std::int64_t>(got) == ipow(n + 1, n - 1) - 1, "n=" + std::to_string(n) + " count " + std::to_string(got));
  }
}

void c2(Check& c) {
  for (int n = 2; n <= 5; ++n) {
    const auto lc = build_gamma_Fn(n);
    c.expect(validate(lc.complex()).ok(), "n=" + std::to_string(n) + " fails validation");
    c.expect(is_proper(lc.complex()), "n=" + std::to_string(n) + " not proper");
  }
}

void c3(Check& c) {
  for (int n = 2; n <= 5; ++n) {
    MultiPoly base = MultiPoly::constant(n, 1);
    for (int i = 0; i < n; ++i) base = base + MultiPoly::variable(n, i);
    const auto lhs = hilbert_polynomial(build_gamma_Fn(n)) + MultiPoly::constant(n, 1);
    c.expect(lhs == base.pow(n - 1), "n=" + std::to_string(n));
  }
}

void c4(Check& c) {
  const int D = 8;
  const std::vector<S> kinds = {S::circle(D), S::cyclic_group(2, D), S::cyclic_group(3, D)};
  for (int n = 2; n <= 5; ++n) {
    const auto h = hilbert_polynomial(build_gamma_Fn(n));
    std::vector<int> pick(static_cast<std::size_t>(n), 0);
    for (;;) {
      std::vector<S> y;
      for (int k : pick) y.push_back(kinds[static_cast<std::size_t>(k)]);
      if (!same_coefficients(substitute(h, y), tor_pow(free_product_series(y), n - 1))) {
        std::string tag;
        for (int k : pick) tag += std::to_string(k);
        c.expect(false, "n=" + std::to_string(n) + " factors " + tag);
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == 3) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
}

void c5(Check& c) {
  for (int n = 2; n <= 6; ++n) {
    // (1 + n t)^(n-1) by binomial expansion
    std::vector<std::int64_t> coeff;
    std::int64_t binom = 1;
    for (int k = 0; k <= n - 1; ++k) {
      coeff.push_back(binom * ipow(n, k));
      binom = binom * (n - 1 - k) / (k + 1);
    }
    const auto s = series_Wh_free(n);
    c.expect(same_coefficients(s, S::free_polynomial(coeff, s.truncation())), "series n=" + std::to_string(n));
    std::int64_t alt = 0;
    for (int d = 0; d <= s.truncation(); ++d) alt += (d % 2 ? -1 : 1) * s[d].free;
    const auto chi = s.euler_characteristic();
    c.expect(chi == ipow(1 - n, n - 1) && chi == alt && chi == wh_free_euler_characteristic(n),
             "chi n=" + std::to_string(n));
  }
}

void c6(Check& c) {
  for (int n = 1; n <= 4; ++n)
    for (int p : {2, 3}) {
      const auto via = n == 1 ? S::unit(12)
                              : substitute(hilbert_polynomial(build_gamma_Fn(n)),
                                           std::vector<S>(static_cast<std::size_t>(n), S::cyclic_group(p, 12)));
      const auto closed = series_Wh_Zp(n, p, 12);
      for (int d = 0; d <= 12; ++d)
        c.expect(closed[d] == via[d], "n=" + std::to_string(n) + " p=" + std::to_string(p) + " degree " + std::to_string(d));
    }
}

void c7(Check& c) {
  c.expect(torus_model_betti(build_gamma_Fn(2)) == std::vector<std::int64_t>{1, 2}, "n=2");
  c.expect(torus_model_betti(build_gamma_Fn(3)) == std::vector<std::int64_t>{1, 6, 9}, "n=3");
  const auto t0 = std::chrono::steady_clock::now();
  c.expect(torus_model_betti(build_gamma_Fn(4)) == std::vector<std::int64_t>{1, 12, 48, 64}, "n=4");
  c.expect(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(60), "n=4 over 60 s");
}

void c8(Check& c) {
  const std::vector<PlantedForest> drawn{
      edges1(3, {{1, 2}, {2, 3}}), edges1(3, {{1, 3}, {3, 2}}), edges1(3, {{3, 1}, {1, 2}}),
      edges1(3, {{3, 1}, {3, 2}}), edges1(3, {{1, 3}, {1, 2}}), edges1(3, {{3, 1}}),
      edges1(3, {{1, 3}}),         edges1(3, {{1, 2}})};
  const auto group = color_preserving_permutations(coloring_from_multiplicities({2, 1}));
  std::set<PlantedForest> expected;
  for (const auto& f : drawn) {
    PlantedForest best = f;
    for (const auto& s : group) best = std::min(best, f.permuted(s));
    expected.insert(best);
  }
  const auto orbits = orbit_decomposition(3, {2, 1});
  std::set<PlantedForest> got;
  for (const auto& o : orbits) {
    got.insert(o.representative.forest);
    c.expect(o.orbit_size * o.stabilizer_order == group.size(), "orbit-stabilizer " + render_edges(o.representative.forest));
  }
  c.expect(orbits.size() == 8, std::to_string(orbits.size()) + " orbits");
  c.expect(got == expected, "representatives differ from the displayed list");
}

void c9(Check& c) {
  for (int n = 1; n <= 5; ++n)
    for_each_forest(n, true, [&](const PlantedForest& f) {
      if (!(prufer_decode(prufer_encode(f)) == f)) c.expect(false, "decode(encode) n=" + std::to_string(n));
    });
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> w(static_cast<std::size_t>(n - 1), 0);
    for (;;) {
      if (prufer_encode(prufer_decode(w)) != w) c.expect(false, "encode(decode) n=" + std::to_string(n));
      std::size_t i = 0;
      while (i < w.size() && ++w[i] == n + 1) w[i++] = 0;
      if (i == w.size()) break;
    }
  }
  c.expect(prufer_encode(edges1(6, {{2, 1}, {2, 6}, {1, 4}, {5, 3}})) == std::vector<int>{2, 1, 5, 0, 2},
           "worked example");
}

void c10(Check& c) {
  for (const auto& g : small_groups(4)) {
    if (g.order() == 1) continue;
    for (int n = 2; n <= 4; ++n) {
      const std::vector<FiniteGroup> gs(static_cast<std::size_t>(n), g);
      const FreeProduct fp(gs);
      const auto rep = verify_relations(dc_presentation(build_gamma_Fn(n), gs, n), fp, forest_realization(n, fp));
      c.expect(rep.all_pass(), g.name() + " n=" + std::to_string(n) + ": " + std::to_string(rep.failures()) + " failures");
    }
  }
  const std::vector<FiniteGroup> s3(2, symmetric_group_3());
  const FreeProduct fp(s3);
  const auto p = fr_flat_presentation(2, s3, false);
  const auto rep = verify_relations(p, fp, forest_realization(2, fp));
  bool witnessed = false;
  for (const auto& r : rep.rows)
    if (!r.pass && p.relations[r.index].kind == "commute" && !r.witness.empty()) witnessed = true;
  c.expect(witnessed, "literal commutator relation did not fail at n=2 with S3");
}

void c11(Check& c) {
  for (int n = 1; n <= 4; ++n) {
    const auto objs = category_objects(build_gamma_Fn(n)).objects;
    c.expect(enumerate_bipartite(n) == std::set<PartialPartition>(objs.begin(), objs.end()), "n=" + std::to_string(n));
  }
}

void c12(Check& c) {
  for (int n = 1; n <= 4; ++n) {
    const auto all = all_partial_partitions(n);
    // Empty and the empty partial partition both stand for the basepoint alone
    auto norm = [n](const std::optional<PartialPartition>& x) { return x ? *x : PartialPartition(n, {}); };
    for (const auto& p : all) {
      c.expect(norm(meet(p, p)) == p, "idempotence");
      for (const auto& q : all) {
        const auto m = meet(p, q);
        c.expect(m == meet(q, p), "commutativity");
        std::set<unsigned> both;
        const auto iq = diagonal_image(q);
        for (auto s : diagonal_image(p))
          if (iq.count(s)) both.insert(s);
        c.expect(both == (m ? diagonal_image(*m) : std::set<unsigned>{0u}), "image oracle");
        for (const auto& r : all) {
          const auto qr = meet(q, r);
          const auto left = m ? meet(*m, r) : std::nullopt;
          const auto right = qr ? meet(p, *qr) : std::nullopt;
          if (left != right) c.expect(false, "associativity");
        }
      }
    }
    if (!c.ok) return;
  }
}

void c13(Check& c) {
  for (const auto& g : small_groups(8)) {
    const auto h = simplicial_homology(coset_nerve(g, subgroups(g)).complex, 3);
    bool acyclic = h[0] == HomologyGroup{1, {}};
    for (int k = 1; k <= 3; ++k) acyclic = acyclic && h[static_cast<std::size_t>(k)] == HomologyGroup{};
    c.expect(acyclic, g.name() + " not acyclic");
  }
  const auto z2 = cyclic_group(2);
  const auto klein = coset_nerve(direct_product(z2, z2), {{0, 2}, {0, 1}, {0}});
  c.expect(reduced_betti(klein.complex, 1) == std::vector<std::int64_t>{0, 1}, "Klein-four family");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"forest counts", c1},
      {"Gamma_F_n valid and proper, n = 2..5", c2},
      {"Hilbert polynomial identity, n = 2..5", c3},
      {"series-level splitting, n <= 5", c4},
      {"Wh(F_n) series and Euler characteristic", c5},
      {"Wh of free products of Z/p", c6},
      {"torus model Betti numbers", c7},
      {"coloured orbits for (2,1)", c8},
      {"Pruefer round trips", c9},
      {"presentation soundness", c10},
      {"bipartite objects equal category objects, n <= 4", c11},
      {"meet semantics", c12},
      {"coset nerves", c13},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "criterion " << i + 1 << ": " << (c.ok ? "PASS" : "FAIL") << "  [" << timing << "]  "
              << criteria[i].first;
    if (!c.ok) std::cout << "  -- " << c.why.str();
    std::cout << '\n';
    if (!c.ok) ++failures;
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failures) << "/"
            << criteria.size() << '\n';
  return failures ? 1 : 0;
}
