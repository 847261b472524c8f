#include "diagcx/homcalc.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "diagcx/errors.hpp"

namespace dcx {

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shapes do not match");
  IntegerMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += (*this)(i, k) * o(k, j);
    }
  return r;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpz_class& x) { return x == 0; });
}

namespace {

// Diagonalises a dense matrix; returns the absolute values of the pivots.
std::vector<mpz_class> dense_diagonal(std::vector<std::vector<mpz_class>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  std::vector<mpz_class> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    auto swap_in = [&](std::size_t pi, std::size_t pj) {
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
    };
    // smallest nonzero entry of the remaining block
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    swap_in(bi, bj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const mpz_class q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const mpz_class q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // a remainder smaller than the pivot is left in row or column t
      std::size_t pi = t, pj = t;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < abs(a[pi][pj])) pi = i, pj = t;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < abs(a[pi][pj])) pi = t, pj = j;
      swap_in(pi, pj);
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

}  // namespace

std::vector<mpz_class> smith_normal_form(const IntegerMatrix& m) {
  // sparse elimination on unit pivots first
  std::vector<std::map<std::size_t, mpz_class>> rows(m.rows());
  std::vector<std::set<std::size_t>> cols(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) {
        rows[i][j] = m(i, j);
        cols[j].insert(i);
      }
  std::vector<mpz_class> factors;
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::size_t c = m.cols();
      for (const auto& [j, v] : rows[r])
        if (abs(v) == 1 && (c == m.cols() || cols[j].size() < cols[c].size())) c = j;
      if (c == m.cols()) continue;
      const mpz_class pv = rows[r].at(c);
      const std::vector<std::size_t> others(cols[c].begin(), cols[c].end());
      for (std::size_t i : others) {
        if (i == r) continue;
        const mpz_class q = rows[i].at(c) * pv;
        for (const auto& [j, v] : rows[r]) {
          auto& x = rows[i][j];
          x -= q * v;
          if (x == 0) {
            rows[i].erase(j);
            cols[j].erase(i);
          } else {
            cols[j].insert(i);
          }
        }
      }
      for (const auto& [j, v] : rows[r]) cols[j].erase(r);
      rows[r].clear();
      factors.push_back(1);
      progress = true;
    }
  }
  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) live_rows.push_back(i);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!cols[j].empty()) live_cols.push_back(j);
  std::vector<std::vector<mpz_class>> dense(live_rows.size(), std::vector<mpz_class>(live_cols.size()));
  for (std::size_t a = 0; a < live_rows.size(); ++a)
    for (std::size_t b = 0; b < live_cols.size(); ++b) {
      const auto it = rows[live_rows[a]].find(live_cols[b]);
      if (it != rows[live_rows[a]].end()) dense[a][b] = it->second;
    }
  for (auto& d : dense_diagonal(std::move(dense))) factors.push_back(std::move(d));

  // divisibility chain
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), factors[i].get_mpz_t(), factors[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), factors[i].get_mpz_t(), factors[j].get_mpz_t());
      factors[i] = g;
      factors[j] = l;
    }
  return factors;
}

std::size_t rank(IntegerMatrix m) {
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        mpz_class x = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

std::string to_triplets(const IntegerMatrix& m) {
  std::ostringstream body;
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) {
        body << i + 1 << ' ' << j + 1 << ' ' << m(i, j).get_str() << '\n';
        ++nnz;
      }
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n' << body.str();
  return os.str();
}

// ---------------------------------------------------------------------------

IntegerMatrix torus_model_matrix(const DiagonalComplex& c, int k) {
  if (c.ground_size() > 63) throw ResourceError("torus model: ground set above 63 elements");
  std::vector<std::vector<std::uint64_t>> vectors;
  for (const auto& [u, gu] : c.gamma_map()) {
    const auto& blocks = gu.blocks();
    const std::size_t nb = blocks.size();
    if (k < 0 || static_cast<std::size_t>(k) > nb) continue;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << nb); ++a) {
      if (std::popcount(a) != k) continue;
      std::vector<std::uint64_t> terms{0};
      for (std::size_t b = 0; b < nb; ++b) {
        if (!(a >> b & 1u)) continue;
        std::vector<std::uint64_t> next;
        for (auto t : terms)
          for (int x : blocks[b]) next.push_back(t | (std::uint64_t{1} << x));
        terms = std::move(next);
        if (terms.size() > 2'000'000) throw ResourceError("torus model: too many transversals");
      }
      vectors.push_back(std::move(terms));
    }
  }
  std::map<std::uint64_t, std::size_t> column;
  for (const auto& v : vectors)
    for (auto s : v) column.emplace(s, 0);
  std::size_t idx = 0;
  for (auto& [s, i] : column) i = idx++;
  if (vectors.size() * column.size() > 50'000'000) throw ResourceError("torus model: matrix too large");
  IntegerMatrix m(vectors.size(), column.size());
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (auto s : vectors[r]) m(r, column.at(s)) += 1;
  return m;
}

std::vector<std::int64_t> torus_model_betti(const LabelledComplex& lc, const std::vector<std::string>& factors,
                                            unsigned workers) {
  const auto& c = lc.complex();
  if (!factors.empty()) {
    if (static_cast<int>(factors.size()) != lc.labels().label_count())
      throw std::invalid_argument("need one factor per label");
    for (const auto& f : factors)
      if (f != "circle") throw UnsupportedError("torus model needs circle factors, got " + f);
  }
  if (c.ground_size() > 63) throw ResourceError("torus model: ground set above 63 elements");
  int top = 0;
  for (const auto& [u, gu] : c.gamma_map()) top = std::max(top, static_cast<int>(gu.block_count()));
  std::vector<std::int64_t> betti(static_cast<std::size_t>(top) + 1, 0);
  betti[0] = 1;  // the basepoint, also when Gamma is empty
  auto work = [&](int k) {
    if (k == 0) return;
    betti[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(rank(torus_model_matrix(c, k)));
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    for (int k = 0; k <= top; ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int k = static_cast<int>(w); k <= top; k += static_cast<int>(workers)) work(k);
      });
    for (auto& t : pool) t.join();
  }
  return betti;
}

// ---------------------------------------------------------------------------

SimplicialComplexData::SimplicialComplexData(int vertex_count, std::set<std::vector<int>> faces)
    : vertex_count_(vertex_count), faces_(std::move(faces)) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  for (const auto& f : faces_) {
    if (f.empty()) throw std::invalid_argument("empty face");
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < 0 || f[i] >= vertex_count) throw std::invalid_argument("face vertex out of range");
      if (i && f[i - 1] >= f[i]) throw std::invalid_argument("face is not sorted");
    }
    if (f.size() > 1)
      for (std::size_t i = 0; i < f.size(); ++i) {
        auto g = f;
        g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
        if (!faces_.count(g)) throw std::invalid_argument("faces are not closed under subsets");
      }
  }
}

SimplicialComplexData SimplicialComplexData::from_maximal(int vertex_count, const std::vector<std::vector<int>>& faces) {
  std::set<std::vector<int>> all;
  for (auto f : faces) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.size() > 30) throw ResourceError("face too large to close downward");
    for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
      std::vector<int> g;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask >> i & 1u) g.push_back(f[i]);
      all.insert(std::move(g));
    }
  }
  return SimplicialComplexData(vertex_count, std::move(all));
}

int SimplicialComplexData::dimension() const {
  int d = -1;
  for (const auto& f : faces_) d = std::max(d, static_cast<int>(f.size()) - 1);
  return d;
}

std::vector<std::vector<int>> SimplicialComplexData::faces_of_dimension(int k) const {
  std::vector<std::vector<int>> out;
  for (const auto& f : faces_)
    if (static_cast<int>(f.size()) == k + 1) out.push_back(f);
  return out;
}

IntegerMatrix boundary_matrix(const SimplicialComplexData& s, int k) {
  const auto top = s.faces_of_dimension(k);
  if (k <= 0) return IntegerMatrix(0, top.size());
  const auto low = s.faces_of_dimension(k - 1);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < low.size(); ++i) index[low[i]] = i;
  IntegerMatrix m(low.size(), top.size());
  for (std::size_t j = 0; j < top.size(); ++j)
    for (std::size_t i = 0; i < top[j].size(); ++i) {
      auto g = top[j];
      g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
      m(index.at(g), j) = (i % 2 == 0) ? 1 : -1;
    }
  return m;
}

std::vector<HomologyGroup> simplicial_homology(const SimplicialComplexData& s, int max_degree) {
  std::vector<std::vector<mpz_class>> snf(static_cast<std::size_t>(max_degree) + 2);
  for (int k = 1; k <= max_degree + 1; ++k) snf[static_cast<std::size_t>(k)] = smith_normal_form(boundary_matrix(s, k));
  std::vector<HomologyGroup> out;
  for (int k = 0; k <= max_degree; ++k) {
    HomologyGroup h;
    const auto fk = static_cast<std::int64_t>(s.faces_of_dimension(k).size());
    const auto rk = static_cast<std::int64_t>(snf[static_cast<std::size_t>(k)].size());
    const auto& next = snf[static_cast<std::size_t>(k) + 1];
    h.free = fk - rk - static_cast<std::int64_t>(next.size());
    for (const auto& d : next)
      if (d > 1) h.torsion.push_back(d);
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<std::int64_t> reduced_betti(const SimplicialComplexData& s, int max_degree) {
  std::vector<std::int64_t> out;
  for (const auto& h : simplicial_homology(s, max_degree)) out.push_back(h.free);
  if (!out.empty() && !s.faces().empty()) out[0] -= 1;
  return out;
}

// ---------------------------------------------------------------------------

CosetNerve coset_nerve(const FiniteGroup& g, const std::vector<std::vector<int>>& family) {
  std::set<std::vector<int>> fam;
  for (auto h : family) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    if (h.empty() || h.front() != 0) throw std::invalid_argument("family member does not contain the identity");
    for (int x : h) {
      if (x < 0 || x >= g.order()) throw std::invalid_argument("family member element out of range");
      for (int y : h)
        if (!std::binary_search(h.begin(), h.end(), g.mul(x, y)))
          throw std::invalid_argument("family member is not a subgroup");
    }
    fam.insert(std::move(h));
  }
  for (const auto& a : fam)
    for (const auto& b : fam) {
      std::vector<int> c;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
      if (!fam.count(c)) throw std::invalid_argument("family is not closed under intersection");
    }

  CosetNerve out;
  std::set<std::vector<int>> seen;
  for (const auto& h : fam)
    for (int x = 0; x < g.order(); ++x) {
      std::vector<int> coset;
      for (int y : h) coset.push_back(g.mul(x, y));
      std::sort(coset.begin(), coset.end());
      if (seen.insert(coset).second) out.cosets.push_back(std::move(coset));
    }
  const std::size_t v = out.cosets.size();
  auto below = [&](std::size_t a, std::size_t b) {
    const auto& A = out.cosets[a];
    const auto& B = out.cosets[b];
    return A.size() < B.size() && std::includes(B.begin(), B.end(), A.begin(), A.end());
  };
  std::vector<std::vector<std::size_t>> covers(v);
  std::vector<bool> minimal(v, true);
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = 0; b < v; ++b) {
      if (!below(a, b)) continue;
      minimal[b] = false;
      bool cover = true;
      for (std::size_t c = 0; c < v && cover; ++c)
        if (below(a, c) && below(c, b)) cover = false;
      if (cover) covers[a].push_back(b);
    }
  std::vector<std::vector<int>> maximal;
  std::vector<int> chain;
  std::function<void(std::size_t)> walk = [&](std::size_t a) {
    chain.push_back(static_cast<int>(a));
    if (covers[a].empty())
      maximal.push_back(chain);
    else
      for (auto b : covers[a]) walk(b);
    chain.pop_back();
  };
  for (std::size_t a = 0; a < v; ++a)
    if (minimal[a]) walk(a);
  out.complex = SimplicialComplexData::from_maximal(static_cast<int>(v), maximal);
  return out;
}

nlohmann::json to_json(const std::vector<HomologyGroup>& h) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t k = 0; k < h.size(); ++k) {
    std::vector<std::string> t;
    for (const auto& d : h[k].torsion) t.push_back(d.get_str());
    out.push_back({{"degree", k}, {"free", h[k].free}, {"torsion", t}});
  }
  return out;
}

}  // namespace dcx
