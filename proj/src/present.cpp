#include "diagcx/present.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "diagcx/forests.hpp"

namespace dcx {

namespace {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const int m = order();
  if (m == 0) fail("group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != m) fail("group table is not square");
    for (int v : row)
      if (v < 0 || v >= m) fail("group table entry out of range");
  }
  for (int a = 0; a < m; ++a)
    if (mul(0, a) != a || mul(a, 0) != a) fail("element 0 is not the identity");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("group table is not associative");
  inverse_.assign(static_cast<std::size_t>(m), -1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b)
      if (mul(a, b) == 0 && mul(b, a) == 0) inverse_[static_cast<std::size_t>(a)] = b;
    if (inverse_[static_cast<std::size_t>(a)] < 0) fail("element without inverse");
  }
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_automorphism(const std::vector<int>& tau) const {
  const int m = order();
  if (static_cast<int>(tau.size()) != m || tau[0] != 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int v : tau) {
    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  auto t = [&](int x) { return tau[static_cast<std::size_t>(x)]; };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (t(mul(a, b)) != mul(t(a), t(b))) return false;
  return true;
}

FiniteGroup cyclic_group(int m) {
  if (m < 1) fail("cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % m;
  return FiniteGroup("Z/" + std::to_string(m), std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int m = a.order() * b.order();
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a.mul(x / b.order(), y / b.order()) * b.order() + b.mul(x % b.order(), y % b.order());
  return FiniteGroup(a.name() + " x " + b.name(), std::move(t));
}

FiniteGroup permutation_group(std::string name, const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) fail("no generators");
  const std::size_t d = generators.front().size();
  std::vector<int> id(d);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& g : generators) {
    auto s = g;
    std::sort(s.begin(), s.end());
    if (s != id) fail("generator is not a permutation");
  }
  // p*q: apply p, then q
  auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[x] = q[static_cast<std::size_t>(p[x])];
    return r;
  };
  std::set<std::vector<int>> elems{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& e : frontier)
      for (const auto& g : generators) {
        auto c = compose(e, g);
        if (elems.insert(c).second) next.push_back(std::move(c));
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> list(elems.begin(), elems.end());  // identity is least
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < list.size(); ++i) index[list[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(list.size(), std::vector<int>(list.size()));
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = 0; b < list.size(); ++b) t[a][b] = index.at(compose(list[a], list[b]));
  return FiniteGroup(std::move(name), std::move(t));
}

FiniteGroup symmetric_group_3() { return permutation_group("S3", {{1, 0, 2}, {1, 2, 0}}); }

FiniteGroup dihedral_group_8() { return permutation_group("D8", {{1, 2, 3, 0}, {0, 3, 2, 1}}); }

FiniteGroup quaternion_group() {
  // element 2*u + s: unit u in {1, i, j, k}, sign s (1 = negative)
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, ub = b / 2;
      const int s = (a % 2) ^ (b % 2) ^ sign[ua][ub];
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 2 * unit[ua][ub] + s;
    }
  return FiniteGroup("Q8", std::move(t));
}

std::vector<FiniteGroup> small_groups(int max_order) {
  if (max_order > 8) fail("small_groups covers orders up to 8");
  const auto z2 = cyclic_group(2);
  std::vector<FiniteGroup> all = {cyclic_group(1),
                                  z2,
                                  cyclic_group(3),
                                  cyclic_group(4),
                                  direct_product(z2, z2),
                                  cyclic_group(5),
                                  cyclic_group(6),
                                  symmetric_group_3(),
                                  cyclic_group(7),
                                  cyclic_group(8),
                                  direct_product(cyclic_group(4), z2),
                                  direct_product(direct_product(z2, z2), z2),
                                  dihedral_group_8(),
                                  quaternion_group()};
  std::vector<FiniteGroup> out;
  for (auto& g : all)
    if (g.order() <= max_order) out.push_back(std::move(g));
  return out;
}

std::vector<std::vector<int>> subgroups(const FiniteGroup& g) {
  const int m = g.order();
  if (m > 20) fail("subgroups: order too large");
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 1; mask < (1u << m); mask += 2) {  // must contain 0
    bool closed = true;
    for (int a = 0; a < m && closed; ++a) {
      if (!(mask >> a & 1u)) continue;
      for (int b = 0; b < m; ++b)
        if ((mask >> b & 1u) && !(mask >> g.mul(a, b) & 1u)) {
          closed = false;
          break;
        }
    }
    if (!closed) continue;
    std::vector<int> h;
    for (int a = 0; a < m; ++a)
      if (mask >> a & 1u) h.push_back(a);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

FiniteGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("table")) fail("group JSON needs a \"table\"");
  return FiniteGroup(j.value("name", std::string("G")), j.at("table").get<std::vector<std::vector<int>>>());
}

nlohmann::json to_json(const FiniteGroup& g) { return {{"name", g.name()}, {"table", g.table()}}; }

// ---------------------------------------------------------------------------

FreeProduct::FreeProduct(std::vector<FiniteGroup> factors) : factors_(std::move(factors)) {}

Word FreeProduct::normal_form(const Word& raw) const {
  Word out;
  for (const auto& l : raw) {
    if (l.factor < 0 || l.factor >= factor_count()) fail("letter factor out of range");
    const auto& g = factor(l.factor);
    if (l.element < 0 || l.element >= g.order()) fail("letter element out of range");
    if (l.element == 0) continue;
    if (!out.empty() && out.back().factor == l.factor) {
      const int e = g.mul(out.back().element, l.element);
      if (e == 0)
        out.pop_back();
      else
        out.back().element = e;
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word FreeProduct::multiply(const Word& a, const Word& b) const {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return normal_form(w);
}

Word FreeProduct::inverse(const Word& w) const {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->factor, factor(it->factor).inv(it->element)});
  return normal_form(out);
}

std::vector<Word> FreeProduct::test_words() const {
  std::vector<Letter> letters;
  for (int f = 0; f < factor_count(); ++f)
    for (int x = 1; x < factor(f).order(); ++x) letters.push_back({f, x});
  std::vector<Word> out;
  for (const auto& a : letters) out.push_back({a});
  for (const auto& a : letters)
    for (const auto& b : letters)
      if (a.factor != b.factor) out.push_back({a, b});
  for (const auto& a : letters)
    for (const auto& b : letters) {
      if (a.factor == b.factor) continue;
      for (const auto& c : letters)
        if (b.factor != c.factor) out.push_back({a, b, c});
    }
  return out;
}

std::string FreeProduct::render(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += '.';
    if (l.factor < 26)
      s += static_cast<char>('a' + l.factor);
    else
      s += "f" + std::to_string(l.factor) + "_";
    s += std::to_string(l.element);
  }
  return s;
}

// ---------------------------------------------------------------------------

Automorphism Automorphism::identity(const FreeProduct& fp) {
  Automorphism a;
  for (int f = 0; f < fp.factor_count(); ++f) {
    std::vector<Word> row;
    for (int x = 0; x < fp.factor(f).order(); ++x) row.push_back(x == 0 ? Word{} : Word{{f, x}});
    a.images_.push_back(std::move(row));
  }
  return a;
}

Automorphism Automorphism::partial_conjugation(const FreeProduct& fp, int i, int j, int g) {
  if (i < 0 || j < 0 || i >= fp.factor_count() || j >= fp.factor_count()) fail("factor out of range");
  if (i == j) fail("partial conjugation needs i != j");
  if (g < 0 || g >= fp.factor(j).order()) fail("conjugating element out of range");
  Automorphism a = identity(fp);
  const int gi = fp.factor(j).inv(g);
  for (int x = 1; x < fp.factor(i).order(); ++x)
    a.images_[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = fp.normal_form({{j, gi}, {i, x}, {j, g}});
  return a;
}

Automorphism Automorphism::factor_permutation(const FreeProduct& fp, const std::vector<int>& sigma) {
  const int k = fp.factor_count();
  if (static_cast<int>(sigma.size()) != k) fail("permutation has the wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int f = 0; f < k; ++f) {
    const int s = sigma[static_cast<std::size_t>(f)];
    if (s < 0 || s >= k || seen[static_cast<std::size_t>(s)]) fail("not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
    if (!(fp.factor(f) == fp.factor(s))) fail("permutation moves a factor onto a different group");
  }
  Automorphism a = identity(fp);
  for (int f = 0; f < k; ++f)
    for (int x = 1; x < fp.factor(f).order(); ++x)
      a.images_[static_cast<std::size_t>(f)][static_cast<std::size_t>(x)] = {{sigma[static_cast<std::size_t>(f)], x}};
  return a;
}

Automorphism Automorphism::factor_automorphism(const FreeProduct& fp, int k, const std::vector<int>& tau) {
  if (k < 0 || k >= fp.factor_count()) fail("factor out of range");
  if (!fp.factor(k).is_automorphism(tau)) fail("not an automorphism of the factor");
  Automorphism a = identity(fp);
  for (int x = 1; x < fp.factor(k).order(); ++x)
    a.images_[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)] = {{k, tau[static_cast<std::size_t>(x)]}};
  return a;
}

Word Automorphism::apply(const FreeProduct& fp, const Word& w) const {
  Word out;
  for (const auto& l : fp.normal_form(w)) {
    const auto& im = image(l.factor, l.element);
    out.insert(out.end(), im.begin(), im.end());
  }
  return fp.normal_form(out);
}

Automorphism Automorphism::then(const FreeProduct& fp, const Automorphism& b) const {
  Automorphism r = *this;
  for (auto& row : r.images_)
    for (auto& w : row) w = b.apply(fp, w);
  return r;
}

Word apply_partial_conjugation(const FreeProduct& fp, int i, int j, int g, const Word& w) {
  return Automorphism::partial_conjugation(fp, i, j, g).apply(fp, w);
}

PartialConjugation act_sym(const FreeProduct& fp, const std::vector<int>& sigma, const PartialConjugation& a) {
  Automorphism::factor_permutation(fp, sigma);  // validates
  return {sigma[static_cast<std::size_t>(a.i)], sigma[static_cast<std::size_t>(a.j)], a.g};
}

PartialConjugation act_aut(const FreeProduct& fp, int k, const std::vector<int>& tau, const PartialConjugation& a) {
  Automorphism::factor_automorphism(fp, k, tau);  // validates
  if (a.j != k) return a;
  return {a.i, a.j, tau[static_cast<std::size_t>(a.g)]};
}

// ---------------------------------------------------------------------------

std::string Presentation::render(const GenWord& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += generators.at(static_cast<std::size_t>(l.gen)).name;
    if (l.inverse) s += "^-1";
  }
  return s;
}

std::string Presentation::render(const Relation& r) const { return render(r.lhs) + " = " + render(r.rhs); }

std::size_t Presentation::count(const std::string& kind) const {
  return static_cast<std::size_t>(
      std::count_if(relations.begin(), relations.end(), [&](const Relation& r) { return r.kind == kind; }));
}

namespace {

std::string support_name(const Simplex& s, int pair_n) {
  std::string out;
  for (int x : s) {
    out += '_';
    if (pair_n > 0) {
      const auto [i, j] = pair_at(pair_n, x);
      if (pair_n <= 9)
        out += std::to_string(i + 1) + std::to_string(j + 1);
      else
        out += std::to_string(i + 1) + "x" + std::to_string(j + 1);
    } else {
      out += std::to_string(x);
    }
  }
  return out;
}

GenWord inverse_word(const GenWord& w) {
  GenWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.inverse = !l.inverse;
  return out;
}

// a^-1 b^-1 a b
GenWord commutator(const GenWord& a, const GenWord& b) {
  GenWord out = inverse_word(a);
  const GenWord bi = inverse_word(b);
  out.insert(out.end(), bi.begin(), bi.end());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Generators indexed by (support, element); a missing element means identity.
class GeneratorTable {
 public:
  int add(const Simplex& s, int label, int element, int pair_n) {
    const int id = static_cast<int>(p_.generators.size());
    p_.generators.push_back({"g" + std::to_string(element) + support_name(s, pair_n), label, element, s});
    index_[{s, element}] = id;
    return id;
  }
  // Generator word for g_s, empty for the identity.
  GenWord word(const Simplex& s, int element) const {
    if (element == 0) return {};
    return {{index_.at({s, element}), false}};
  }
  Presentation& presentation() { return p_; }

 private:
  Presentation p_;
  std::map<std::pair<Simplex, int>, int> index_;
};

void add_multiplication(GeneratorTable& t, const Simplex& s, const FiniteGroup& g, const std::string& kind) {
  for (int a = 1; a < g.order(); ++a)
    for (int b = 1; b < g.order(); ++b) {
      GenWord lhs = t.word(s, a);
      const GenWord hb = t.word(s, b);
      lhs.insert(lhs.end(), hb.begin(), hb.end());
      t.presentation().relations.push_back({kind, lhs, t.word(s, g.mul(a, b))});
    }
}

void check_groups(int labels, const std::vector<FiniteGroup>& groups) {
  if (static_cast<int>(groups.size()) != labels)
    fail("need one group per label: " + std::to_string(labels) + " labels, " + std::to_string(groups.size()) +
         " groups");
}

}  // namespace

Presentation dc_presentation(const LabelledComplex& lc, const std::vector<FiniteGroup>& groups, int pair_n) {
  const auto& c = lc.complex();
  const auto& lab = lc.labels();
  check_groups(lab.label_count(), groups);
  if (pair_n > 0 && ground_size_Xn(pair_n) != c.ground_size()) fail("ground set is not X_n");
  GeneratorTable t;
  std::vector<Simplex> constant;
  for (const auto& [u, gu] : c.gamma_map()) {
    const auto l = lab.label_of(u);
    if (!l) continue;
    constant.push_back(u);
    const auto& g = groups[static_cast<std::size_t>(*l)];
    for (int e = 1; e < g.order(); ++e) t.add(u, *l, e, pair_n);
  }
  for (const auto& u : constant) add_multiplication(t, u, groups[static_cast<std::size_t>(*lab.label_of(u))], "mul");

  std::set<std::pair<Simplex, Simplex>> seen;
  for (const auto& [w, gw] : c.gamma_map()) {
    const auto& blocks = gw.blocks();
    for (std::size_t a = 0; a < blocks.size(); ++a)
      for (std::size_t b = a + 1; b < blocks.size(); ++b) {
        const Simplex& u = blocks[a];
        const Simplex& v = blocks[b];
        if (!seen.insert(std::minmax(u, v)).second) continue;
        const auto& gu = groups[static_cast<std::size_t>(*lab.label_of(u))];
        const auto& gv = groups[static_cast<std::size_t>(*lab.label_of(v))];
        for (int x = 1; x < gu.order(); ++x)
          for (int y = 1; y < gv.order(); ++y)
            t.presentation().relations.push_back({"comm", commutator(t.word(u, x), t.word(v, y)), {}});
      }
  }

  for (const auto& u : constant) {
    if (u.size() < 2) continue;
    const auto& g = groups[static_cast<std::size_t>(*lab.label_of(u))];
    const auto& blocks = c.gamma(u).blocks();
    for (int e = 1; e < g.order(); ++e) {
      GenWord rhs;
      for (const auto& b : blocks) {
        const GenWord w = t.word(b, e);
        rhs.insert(rhs.end(), w.begin(), w.end());
      }
      t.presentation().relations.push_back({"diag", t.word(u, e), rhs});
    }
  }
  return std::move(t.presentation());
}

namespace {

GeneratorTable pair_generators(int n, const std::vector<FiniteGroup>& groups) {
  if (n < 2) fail("n must be at least 2");
  check_groups(n, groups);
  GeneratorTable t;
  for (int x = 0; x < ground_size_Xn(n); ++x) {
    const int i = pair_at(n, x).first;
    for (int e = 1; e < groups[static_cast<std::size_t>(i)].order(); ++e) t.add({x}, i, e, n);
  }
  for (int x = 0; x < ground_size_Xn(n); ++x)
    add_multiplication(t, {x}, groups[static_cast<std::size_t>(pair_at(n, x).first)], "mul");
  return t;
}

}  // namespace

Presentation fr_presentation(int n, const std::vector<FiniteGroup>& groups) {
  GeneratorTable t = pair_generators(n, groups);
  auto block_word = [&](const Simplex& b, int e) {
    GenWord w;
    for (int x : b) {
      const GenWord l = t.word({x}, e);
      w.insert(w.end(), l.begin(), l.end());
    }
    return w;
  };
  for_each_forest(n, false, [&](const PlantedForest& f) {
    if (f.edge_count() != 2) return;
    const auto gw = gamma_forest(poset_from_forest(f));
    const auto& blocks = gw.blocks();
    const int la = pair_at(n, blocks[0].front()).first;
    const int lb = pair_at(n, blocks[1].front()).first;
    for (int x = 1; x < groups[static_cast<std::size_t>(la)].order(); ++x)
      for (int y = 1; y < groups[static_cast<std::size_t>(lb)].order(); ++y)
        t.presentation().relations.push_back({"comm", commutator(block_word(blocks[0], x), block_word(blocks[1], y)), {}});
  });
  return std::move(t.presentation());
}

Presentation fr_flat_presentation(int n, const std::vector<FiniteGroup>& groups, bool side_conditions) {
  GeneratorTable t = pair_generators(n, groups);
  auto& p = t.presentation();
  p.relations.clear();
  const auto G = [&](int j) -> const FiniteGroup& { return groups[static_cast<std::size_t>(j)]; };
  // alpha_i^{g_j}
  auto alpha = [&](int i, int j, int g) { return t.word({pair_index(n, j, i)}, G(j).inv(g)); };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int g = 1; g < G(j).order(); ++g)
        for (int h = 1; h < G(j).order(); ++h) {
          GenWord lhs = alpha(i, j, h);
          const GenWord r = alpha(i, j, g);
          lhs.insert(lhs.end(), r.begin(), r.end());
          p.relations.push_back({"product", lhs, alpha(i, j, G(j).mul(g, h))});
        }
    }

  struct Alpha {
    int i, j, g;
    auto operator<=>(const Alpha&) const = default;
  };
  std::vector<Alpha> all;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        for (int g = 1; g < G(j).order(); ++g) all.push_back({i, j, g});
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      const auto& x = all[a];
      const auto& y = all[b];
      if (x.i == y.i) continue;
      if (side_conditions && (y.i == x.j || x.i == y.j)) continue;
      p.relations.push_back({"commute", commutator(alpha(x.i, x.j, x.g), alpha(y.i, y.j, y.g)), {}});
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        for (int g = 1; g < G(j).order(); ++g)
          for (int h = 1; h < G(k).order(); ++h) {
            GenWord a = alpha(i, j, g);
            const GenWord b = alpha(k, j, g);
            a.insert(a.end(), b.begin(), b.end());
            p.relations.push_back({"triple", commutator(a, alpha(i, k, h)), {}});
          }
      }
  return std::move(p);
}

Realization forest_realization(int n, const FreeProduct& fp) {
  if (fp.factor_count() != n) fail("free product needs n factors");
  return [n, &fp](const Generator& gen) {
    Automorphism a = Automorphism::identity(fp);
    const int gi = fp.factor(gen.label).inv(gen.element);
    for (int x : gen.support) {
      const auto [i, j] = pair_at(n, x);
      if (i != gen.label) fail("generator support does not match its label");
      a = a.then(fp, Automorphism::partial_conjugation(fp, j, i, gi));
    }
    return a;
  };
}

bool VerificationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const RelationCheck& r) { return r.pass; });
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const RelationCheck& r) { return !r.pass; }));
}

VerificationReport verify_relations(const Presentation& p, const FreeProduct& fp, const Realization& realize,
                                    unsigned workers) {
  // realisations of every generator and of its inverse (the inverse element)
  std::vector<std::array<Automorphism, 2>> real;
  real.reserve(p.generators.size());
  for (const auto& gen : p.generators) {
    Generator inv = gen;
    inv.element = fp.factor(gen.label).inv(gen.element);
    real.push_back({realize(gen), realize(inv)});
  }
  auto evaluate = [&](const GenWord& w) {
    Automorphism a = Automorphism::identity(fp);
    for (const auto& l : w) a = a.then(fp, real[static_cast<std::size_t>(l.gen)][l.inverse ? 1 : 0]);
    return a;
  };
  const auto words = fp.test_words();
  VerificationReport rep;
  rep.test_words = words.size();
  rep.rows.resize(p.relations.size());
  auto check = [&](std::size_t k) {
    const auto& r = p.relations[k];
    const auto lhs = evaluate(r.lhs);
    const auto rhs = evaluate(r.rhs);
    RelationCheck row;
    row.index = k;
    if (!(lhs == rhs))
      for (const auto& w : words)
        if (lhs.apply(fp, w) != rhs.apply(fp, w)) {
          row.pass = false;
          row.witness = fp.render(w);
          break;
        }
    rep.rows[k] = std::move(row);
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::size_t k = 0; k < p.relations.size(); ++k) check(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < p.relations.size(); k += workers) check(k);
      });
    for (auto& th : pool) th.join();
  }
  return rep;
}

std::string export_gap(const Presentation& p) {
  std::ostringstream os;
  os << "F := FreeGroup(";
  for (std::size_t i = 0; i < p.generators.size(); ++i) os << (i ? ", " : "") << '"' << p.generators[i].name << '"';
  os << ");;\nrels := [";
  for (std::size_t k = 0; k < p.relations.size(); ++k) {
    const auto& r = p.relations[k];
    GenWord rel = r.lhs;
    const GenWord ri = inverse_word(r.rhs);
    rel.insert(rel.end(), ri.begin(), ri.end());
    os << (k ? ",\n  " : "\n  ");
    if (rel.empty()) {
      os << "One(F)";
      continue;
    }
    for (std::size_t i = 0; i < rel.size(); ++i)
      os << (i ? "*" : "") << "F." << rel[i].gen + 1 << (rel[i].inverse ? "^-1" : "");
  }
  os << "\n];;\nG := F / rels;;\n";
  return os.str();
}

nlohmann::json to_json(const Presentation& p) {
  auto signed_word = [](const GenWord& w) {
    std::vector<int> out;
    for (const auto& l : w) out.push_back(l.inverse ? -(l.gen + 1) : l.gen + 1);
    return out;
  };
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : p.generators)
    gens.push_back({{"name", g.name}, {"label", g.label}, {"element", g.element}, {"support", g.support}});
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relations)
    rels.push_back({{"kind", r.kind}, {"lhs", signed_word(r.lhs)}, {"rhs", signed_word(r.rhs)}, {"text", p.render(r)}});
  return {{"generators", gens}, {"relations", rels}};
}

}  // namespace dcx
