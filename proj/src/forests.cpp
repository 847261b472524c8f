#include "diagcx/forests.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace dcx {

PlantedForest::PlantedForest(int n, std::vector<int> parent) : parent_(std::move(parent)) {
  if (n < 0 || static_cast<int>(parent_.size()) != n) throw std::invalid_argument("parent array has wrong length");
  for (int v = 0; v < n; ++v) {
    const int p = parent_[static_cast<std::size_t>(v)];
    if (p < -1 || p >= n || p == v) throw std::invalid_argument("invalid parent for vertex " + std::to_string(v + 1));
  }
  for (int v = 0; v < n; ++v) {
    int steps = 0;
    for (int w = v; w >= 0; w = parent_[static_cast<std::size_t>(w)])
      if (++steps > n) throw std::invalid_argument("parent array contains a cycle");
  }
}

PlantedForest PlantedForest::from_edges(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (auto [p, c] : edges) {
    if (c < 0 || c >= n) throw std::invalid_argument("edge endpoint out of range");
    if (parent[static_cast<std::size_t>(c)] != -1) throw std::invalid_argument("vertex has two incoming edges");
    parent[static_cast<std::size_t>(c)] = p;
  }
  return PlantedForest(n, std::move(parent));
}

std::vector<Edge> PlantedForest::edges() const {
  std::vector<Edge> out;
  for (int v = 0; v < n(); ++v)
    if (parent(v) >= 0) out.emplace_back(parent(v), v);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t PlantedForest::edge_count() const {
  return static_cast<std::size_t>(std::count_if(parent_.begin(), parent_.end(), [](int p) { return p >= 0; }));
}

int PlantedForest::out_degree(int v) const {
  return static_cast<int>(std::count(parent_.begin(), parent_.end(), v));
}

std::vector<int> PlantedForest::out_degrees() const {
  std::vector<int> d(parent_.size(), 0);
  for (int p : parent_)
    if (p >= 0) ++d[static_cast<std::size_t>(p)];
  return d;
}

bool PlantedForest::is_ancestor(int a, int v) const {
  for (int w = parent(v); w >= 0; w = parent(w))
    if (w == a) return true;
  return false;
}

PlantedForest PlantedForest::permuted(const std::vector<int>& perm) const {
  std::vector<int> p(parent_.size(), -1);
  for (std::size_t v = 0; v < parent_.size(); ++v)
    if (parent_[v] >= 0) p[static_cast<std::size_t>(perm[v])] = perm[static_cast<std::size_t>(parent_[v])];
  PlantedForest out;
  out.parent_ = std::move(p);
  return out;
}

ForestPoset::ForestPoset(int n, std::vector<Edge> pairs) : n_(n), pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  const auto N = static_cast<std::size_t>(n);
  std::vector<std::vector<char>> rel(N, std::vector<char>(N, 0));
  for (auto [i, j] : pairs_) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::invalid_argument("invalid pair in forest poset");
    rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (!rel[i][j]) continue;
      if (rel[j][i]) throw std::invalid_argument("forest poset is not antisymmetric");
      for (std::size_t k = 0; k < N; ++k)
        if (rel[j][k] && !rel[i][k]) throw std::invalid_argument("forest poset is not transitively closed");
    }
  // Underset condition: the elements below any x form a chain.
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a + 1; b < N; ++b)
        if (rel[a][x] && rel[b][x] && !rel[a][b] && !rel[b][a])
          throw std::invalid_argument("forest poset violates the underset condition");
}

bool ForestPoset::contains(int i, int j) const { return std::binary_search(pairs_.begin(), pairs_.end(), Edge{i, j}); }

ForestPoset poset_from_forest(const PlantedForest& f) {
  std::vector<Edge> pairs;
  for (int v = 0; v < f.n(); ++v)
    for (int a = f.parent(v); a >= 0; a = f.parent(a)) pairs.emplace_back(a, v);
  return ForestPoset(f.n(), std::move(pairs));
}

PlantedForest forest_from_poset(const ForestPoset& u) {
  // The parent of j is its largest element below it: the one with the most
  // elements below itself, since the down-set of j is a chain.
  const int n = u.n();
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  for (auto [i, j] : u.pairs()) ++depth[static_cast<std::size_t>(j)];
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (auto [i, j] : u.pairs())
    if (depth[static_cast<std::size_t>(i)] + 1 == depth[static_cast<std::size_t>(j)])
      parent[static_cast<std::size_t>(j)] = i;
  return PlantedForest(n, std::move(parent));
}

Edge mu(const ForestPoset& u, int i, int j) {
  if (!u.contains(i, j)) throw std::invalid_argument("mu: pair is not in the poset");
  const PlantedForest f = forest_from_poset(u);
  int w = j;
  while (f.parent(w) != i) w = f.parent(w);
  return {i, w};
}

int pair_index(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("pair_index: invalid pair");
  return i * (n - 1) + (j < i ? j : j - 1);
}

Edge pair_at(int n, int index) {
  const int i = index / (n - 1);
  const int r = index % (n - 1);
  return {i, r < i ? r : r + 1};
}

Simplex simplex_of(const ForestPoset& u) {
  Simplex s;
  for (auto [i, j] : u.pairs()) s.push_back(pair_index(u.n(), i, j));
  std::sort(s.begin(), s.end());
  return s;
}

ForestPoset poset_of(int n, const Simplex& s) {
  std::vector<Edge> pairs;
  for (int x : s) pairs.push_back(pair_at(n, x));
  return ForestPoset(n, std::move(pairs));
}

PartialPartition gamma_forest(const ForestPoset& u) {
  const int n = u.n();
  const PlantedForest f = forest_from_poset(u);
  std::map<Edge, Block> fibres;
  for (auto [i, j] : u.pairs()) {
    int w = j;
    while (f.parent(w) != i) w = f.parent(w);
    fibres[{i, w}].push_back(pair_index(n, i, j));
  }
  std::vector<Block> blocks;
  for (auto& kv : fibres) blocks.push_back(std::move(kv.second));
  return PartialPartition(ground_size_Xn(n), std::move(blocks));
}

LabelledComplex build_gamma_Fn(int n) {
  if (n < 1 || n > kMaxGammaN)
    throw std::invalid_argument("build_gamma_Fn: n must be in [1, " + std::to_string(kMaxGammaN) + "]");
  std::map<Simplex, PartialPartition> gamma;
  for_each_forest(n, false, [&](const PlantedForest& f) {
    const ForestPoset u = poset_from_forest(f);
    gamma.emplace(simplex_of(u), gamma_forest(u));
  });
  const int ground = ground_size_Xn(n);
  std::vector<int> labels(static_cast<std::size_t>(ground));
  for (int x = 0; x < ground; ++x) labels[static_cast<std::size_t>(x)] = pair_at(n, x).first;
  return LabelledComplex(DiagonalComplex(ground, std::move(gamma)), Labelling(n, std::move(labels)));
}

std::vector<int> prufer_encode(const PlantedForest& f) {
  // Tree on {0..n}: letter 0 is the auxiliary root, vertex v is letter v+1.
  const int n = f.n();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
  for (int v = 0; v < n; ++v) {
    const int p = f.parent(v) + 1;  // -1 maps to the auxiliary root 0
    adj[static_cast<std::size_t>(p)].push_back(v + 1);
    adj[static_cast<std::size_t>(v + 1)].push_back(p);
  }
  std::vector<int> degree(static_cast<std::size_t>(n + 1));
  for (int v = 0; v <= n; ++v) degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  std::vector<char> removed(static_cast<std::size_t>(n + 1), 0);
  std::vector<int> word;
  for (int step = 0; step + 1 < n; ++step) {
    int leaf = n;
    while (removed[static_cast<std::size_t>(leaf)] || degree[static_cast<std::size_t>(leaf)] != 1) --leaf;
    int neighbour = -1;
    for (int w : adj[static_cast<std::size_t>(leaf)])
      if (!removed[static_cast<std::size_t>(w)]) neighbour = w;
    word.push_back(neighbour);
    removed[static_cast<std::size_t>(leaf)] = 1;
    --degree[static_cast<std::size_t>(neighbour)];
  }
  return word;
}

PlantedForest prufer_decode(const std::vector<int>& word) {
  const int n = static_cast<int>(word.size()) + 1;
  std::vector<int> degree(static_cast<std::size_t>(n + 1), 1);
  for (int s : word) {
    if (s < 0 || s > n) throw std::invalid_argument("prufer_decode: letter outside {0..n}");
    ++degree[static_cast<std::size_t>(s)];
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n + 1));
  auto link = [&](int a, int b) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  };
  for (int s : word) {
    int leaf = n;
    while (degree[static_cast<std::size_t>(leaf)] != 1) --leaf;
    link(leaf, s);
    degree[static_cast<std::size_t>(leaf)] = 0;
    --degree[static_cast<std::size_t>(s)];
  }
  std::vector<int> last;
  for (int v = 0; v <= n; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) last.push_back(v);
  if (last.size() == 2) link(last[0], last[1]);
  // Orient away from the auxiliary root.
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> stack{0};
  std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      parent[static_cast<std::size_t>(w - 1)] = v - 1;  // root children get -1
      stack.push_back(w);
    }
  }
  return PlantedForest(n, std::move(parent));
}

std::uint64_t prufer_rank(const std::vector<int>& word, int n) {
  std::uint64_t r = 0;
  for (int s : word) r = r * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(s);
  return r;
}

namespace {

std::uint64_t word_count(int n) {
  std::uint64_t c = 1;
  for (int i = 0; i + 1 < n; ++i) c *= static_cast<std::uint64_t>(n + 1);
  return c;
}

std::vector<int> word_at(std::uint64_t rank, int n) {
  std::vector<int> w(static_cast<std::size_t>(n - 1));
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    *it = static_cast<int>(rank % static_cast<std::uint64_t>(n + 1));
    rank /= static_cast<std::uint64_t>(n + 1);
  }
  return w;
}

void check_forest_n(int n) {
  if (n < 1 || n > kMaxForestN)
    throw std::invalid_argument("forest enumeration: n must be in [1, " + std::to_string(kMaxForestN) + "]");
}

}  // namespace

void for_each_forest(int n, bool include_empty, const std::function<void(const PlantedForest&)>& fn) {
  check_forest_n(n);
  const std::uint64_t total = word_count(n);
  for (std::uint64_t r = 0; r < total; ++r) {
    // Rank 0 is the all-zero word, i.e. the empty forest.
    if (r == 0 && !include_empty) continue;
    fn(prufer_decode(word_at(r, n)));
  }
}

std::vector<PlantedForest> enumerate_forests(int n, bool include_empty, unsigned workers) {
  check_forest_n(n);
  const std::uint64_t total = word_count(n);
  const std::uint64_t first = include_empty ? 0 : 1;
  workers = std::max(1u, workers);
  std::vector<std::vector<PlantedForest>> shards(workers);
  auto run = [&](unsigned w) {
    const std::uint64_t span = total - first;
    const std::uint64_t lo = first + span * w / workers, hi = first + span * (w + 1) / workers;
    shards[w].reserve(hi - lo);
    for (std::uint64_t r = lo; r < hi; ++r) shards[w].push_back(prufer_decode(word_at(r, n)));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  std::vector<PlantedForest> out;
  out.reserve(total - first);
  for (auto& s : shards) std::move(s.begin(), s.end(), std::back_inserter(out));
  return out;
}

std::vector<int> coloring_from_multiplicities(const std::vector<int>& multiplicities) {
  std::vector<int> coloring;
  for (std::size_t c = 0; c < multiplicities.size(); ++c) {
    if (multiplicities[c] < 0) throw std::invalid_argument("negative colour multiplicity");
    coloring.insert(coloring.end(), static_cast<std::size_t>(multiplicities[c]), static_cast<int>(c));
  }
  return coloring;
}

std::vector<std::vector<int>> color_preserving_permutations(const std::vector<int>& coloring) {
  // Product of the symmetric groups on the colour classes.
  std::map<int, std::vector<int>> classes;
  for (std::size_t v = 0; v < coloring.size(); ++v) classes[coloring[v]].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> perms{std::vector<int>(coloring.size())};
  std::iota(perms[0].begin(), perms[0].end(), 0);
  for (const auto& [colour, members] : classes) {
    std::vector<std::vector<int>> next;
    std::vector<int> images = members;
    do {
      for (const auto& p : perms) {
        auto q = p;
        for (std::size_t k = 0; k < members.size(); ++k) q[static_cast<std::size_t>(members[k])] = images[k];
        next.push_back(std::move(q));
      }
    } while (std::next_permutation(images.begin(), images.end()));
    perms = std::move(next);
  }
  std::sort(perms.begin(), perms.end());
  return perms;
}

std::vector<ForestOrbit> orbit_decomposition(int n, const std::vector<int>& multiplicities) {
  check_forest_n(n);
  if (std::accumulate(multiplicities.begin(), multiplicities.end(), 0) != n)
    throw std::invalid_argument("colour multiplicities must sum to n");
  const auto coloring = coloring_from_multiplicities(multiplicities);
  const auto group = color_preserving_permutations(coloring);
  std::vector<char> visited(static_cast<std::size_t>(word_count(n)), 0);
  std::vector<ForestOrbit> orbits;
  for_each_forest(n, false, [&](const PlantedForest& f) {
    const auto r = prufer_rank(prufer_encode(f), n);
    if (visited[r]) return;
    ForestOrbit orbit;
    orbit.representative = {f, coloring};
    for (const auto& sigma : group) {
      PlantedForest g = f.permuted(sigma);
      if (g == f) ++orbit.stabilizer_order;
      auto& seen = visited[prufer_rank(prufer_encode(g), n)];
      if (!seen) {
        seen = 1;
        ++orbit.orbit_size;
        if (g < orbit.representative.forest) orbit.representative.forest = g;
      }
    }
    orbits.push_back(std::move(orbit));
  });
  std::sort(orbits.begin(), orbits.end(), [](const ForestOrbit& a, const ForestOrbit& b) {
    return a.representative.forest < b.representative.forest;
  });
  return orbits;
}

bool determinant_sign_nontrivial(const ColoredForest& f) {
  const auto edges = f.forest.edges();
  for (const auto& sigma : color_preserving_permutations(f.coloring)) {
    if (f.forest.permuted(sigma) != f.forest) continue;
    // Parity of the induced permutation of edges (edges are keyed by child).
    std::vector<int> image(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Edge moved{sigma[static_cast<std::size_t>(edges[e].first)], sigma[static_cast<std::size_t>(edges[e].second)]};
      image[e] = static_cast<int>(std::lower_bound(edges.begin(), edges.end(), moved) - edges.begin());
    }
    std::vector<char> done(edges.size(), 0);
    std::size_t transpositions = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (done[e]) continue;
      std::size_t len = 0;
      for (std::size_t x = e; !done[x]; x = static_cast<std::size_t>(image[x])) {
        done[x] = 1;
        ++len;
      }
      transpositions += len - 1;
    }
    if (transpositions % 2) return true;
  }
  return false;
}

std::string render_edges(const PlantedForest& f) {
  std::string out;
  for (auto [p, c] : f.edges()) {
    if (!out.empty()) out += ", ";
    out += std::to_string(p + 1) + "->" + std::to_string(c + 1);
  }
  return out.empty() ? "(empty)" : out;
}

nlohmann::json to_json(const PlantedForest& f) {
  nlohmann::json j = nlohmann::json::array();
  for (int p : f.parent()) j.push_back(p < 0 ? -1 : p + 1);
  return j;
}

PlantedForest forest_from_json(const nlohmann::json& j) {
  std::vector<int> parent;
  for (const auto& v : j) {
    const int p = v.get<int>();
    parent.push_back(p < 0 ? -1 : p - 1);
  }
  const int n = static_cast<int>(parent.size());
  return PlantedForest(n, std::move(parent));
}

}  // namespace dcx
