#include "diagcx/diagcx.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "diagcx/errors.hpp"

namespace dcx {

namespace {

std::string show(const std::vector<int>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

std::string show(const PartialPartition& p) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < p.blocks().size(); ++i) os << (i ? "," : "") << show(p.blocks()[i]);
  os << '}';
  return os.str();
}

// Dense bitmask of a subset of the ground set.
using Mask = std::vector<std::uint64_t>;

Mask to_mask(const Simplex& s, int ground) {
  Mask m(static_cast<std::size_t>((ground + 63) / 64), 0);
  for (int x : s) m[static_cast<std::size_t>(x) / 64] |= std::uint64_t{1} << (x % 64);
  return m;
}

bool subset_of(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool disjoint(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

}  // namespace

std::string simplex_key(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

DiagonalComplex::DiagonalComplex(int ground_size, std::map<Simplex, PartialPartition> gamma)
    : ground_size_(ground_size), gamma_(std::move(gamma)) {
  if (ground_size < 0) throw std::invalid_argument("negative ground size");
  for (const auto& [u, g] : gamma_) {
    if (u.empty()) throw std::invalid_argument("empty simplex");
    if (!std::is_sorted(u.begin(), u.end()) || std::adjacent_find(u.begin(), u.end()) != u.end())
      throw std::invalid_argument("simplex " + show(u) + " is not strictly increasing");
    if (u.front() < 0 || u.back() >= ground_size)
      throw std::invalid_argument("simplex " + show(u) + " outside the ground set");
    if (g.ground_size() != ground_size)
      throw std::invalid_argument("gamma of " + show(u) + " has the wrong ground size");
  }
}

const PartialPartition& DiagonalComplex::gamma(const Simplex& u) const {
  auto it = gamma_.find(u);
  if (it == gamma_.end()) throw std::invalid_argument("not a simplex: " + show(u));
  return it->second;
}

std::vector<Simplex> DiagonalComplex::simplices() const {
  std::vector<Simplex> out;
  out.reserve(gamma_.size());
  for (const auto& kv : gamma_) out.push_back(kv.first);
  return out;
}

DiagonalComplex DiagonalComplex::restrict_to(const std::vector<Simplex>& keep) const {
  std::map<Simplex, PartialPartition> g;
  for (const auto& u : keep) g.emplace(u, gamma(u));
  return DiagonalComplex(ground_size_, std::move(g));
}

Simplex face_union(const PartialPartition& gamma_u, const std::vector<std::size_t>& choice) {
  Simplex out;
  for (auto i : choice) {
    const auto& b = gamma_u.blocks()[i];
    out.insert(out.end(), b.begin(), b.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ValidationReport validate(const DiagonalComplex& c) {
  ValidationReport r;
  for (int x = 0; x < c.ground_size(); ++x) {
    if (!c.contains({x})) {
      r.singletons = {false, "missing singleton {" + std::to_string(x) + "}"};
      break;
    }
  }
  for (const auto& [u, g] : c.gamma_map()) {
    if (g.support() != u) {
      r.partitions = {false, "gamma(" + show(u) + ") = " + show(g) + " does not partition it"};
      break;
    }
    if (u.size() > 1 && g.block_count() < 2) {
      r.partitions = {false, "gamma(" + show(u) + ") is not a proper partition"};
      break;
    }
  }
  if (!r.partitions.pass) {
    // Face checks need gamma(U) to be a partition of U.
    r.faces = {false, "not checked: partition axiom failed"};
    return r;
  }
  for (const auto& [u, g] : c.gamma_map()) {
    const std::size_t k = g.block_count();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<std::size_t> choice;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::uint64_t{1} << i)) choice.push_back(i);
      const Simplex face = face_union(g, choice);
      auto witness = [&] {
        std::vector<int> a(choice.begin(), choice.end());
        return "U = " + show(u) + ", A = " + show(a) + ", U_A = " + show(face);
      };
      auto it = c.gamma_map().find(face);
      if (it == c.gamma_map().end()) {
        r.faces = {false, "missing face: " + witness()};
        return r;
      }
      for (const auto& b : it->second.blocks()) {
        const int owner = g.block_of(b.front());
        const bool inside = std::all_of(b.begin(), b.end(), [&](int x) { return g.block_of(x) == owner; });
        if (!inside) {
          r.faces = {false, "gamma(U_A) does not refine the chosen blocks: " + witness()};
          return r;
        }
      }
    }
  }
  return r;
}

bool is_proper(const DiagonalComplex& c) {
  if (!validate(c).ok()) throw PreconditionError("is_proper: complex does not validate");
  std::vector<Mask> masks;
  std::vector<const Simplex*> keys;
  for (const auto& kv : c.gamma_map()) {
    masks.push_back(to_mask(kv.first, c.ground_size()));
    keys.push_back(&kv.first);
  }
  for (std::size_t ui = 0; ui < keys.size(); ++ui) {
    const Simplex& u = *keys[ui];
    if (u.size() == 1) continue;
    std::vector<Mask> blocks;
    for (const auto& b : c.gamma(u).blocks()) blocks.push_back(to_mask(b, c.ground_size()));
    // The maximal faces U - U_j are in Gamma and pairwise incomparable, so they
    // are exactly the maximal proper subsets iff every proper sub-simplex
    // misses at least one block.
    for (std::size_t vi = 0; vi < keys.size(); ++vi) {
      if (vi == ui || keys[vi]->size() >= u.size() || !subset_of(masks[vi], masks[ui])) continue;
      const bool misses_block =
          std::any_of(blocks.begin(), blocks.end(), [&](const Mask& b) { return disjoint(b, masks[vi]); });
      if (!misses_block) return false;
    }
  }
  return true;
}

std::map<Simplex, int> levels(const DiagonalComplex& c, bool coarse) {
  std::vector<const Simplex*> order;
  for (const auto& kv : c.gamma_map()) order.push_back(&kv.first);
  std::stable_sort(order.begin(), order.end(),
                   [](const Simplex* a, const Simplex* b) { return a->size() < b->size(); });
  std::map<Simplex, int> lev;
  for (const Simplex* up : order) {
    const Simplex& u = *up;
    if (u.size() == 1) {
      lev[u] = 0;
      continue;
    }
    int best = 0;
    for (const auto& b : c.gamma(u).blocks()) {
      Simplex sub;
      if (coarse) {
        sub = b;
      } else {
        std::set_difference(u.begin(), u.end(), b.begin(), b.end(), std::back_inserter(sub));
      }
      auto it = lev.find(sub);
      if (it == lev.end()) throw PreconditionError("level: face " + show(sub) + " is not a simplex");
      best = std::max(best, it->second);
    }
    lev[u] = best + 1;
  }
  return lev;
}

int level(const DiagonalComplex& c, const Simplex& u, bool coarse) {
  if (!c.contains(u)) throw std::invalid_argument("level: not a simplex: " + show(u));
  return levels(c, coarse).at(u);
}

DiagonalComplex filtration(const DiagonalComplex& c, int k, bool coarse) {
  std::vector<Simplex> keep;
  for (const auto& [u, l] : levels(c, coarse))
    if (l <= k) keep.push_back(u);
  return c.restrict_to(keep);
}

Labelling::Labelling(int label_count, std::vector<int> assignment)
    : label_count_(label_count), assignment_(std::move(assignment)) {
  for (int z : assignment_)
    if (z < 0 || z >= label_count_) throw std::invalid_argument("label out of range");
}

Labelling Labelling::trivial(int ground_size) {
  return Labelling(ground_size > 0 ? 1 : 0, std::vector<int>(static_cast<std::size_t>(ground_size), 0));
}

std::optional<int> Labelling::label_of(const std::vector<int>& s) const {
  if (s.empty()) return std::nullopt;
  const int z = (*this)(s.front());
  for (int x : s)
    if ((*this)(x) != z) return std::nullopt;
  return z;
}

Labelling universal_labelling(const DiagonalComplex& c) {
  const auto n = static_cast<std::size_t>(c.ground_size());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, g] : c.gamma_map())
    for (const auto& b : g.blocks())
      for (int x : b) {
        auto a = find(static_cast<std::size_t>(b.front())), r = find(static_cast<std::size_t>(x));
        if (a != r) parent[std::max(a, r)] = std::min(a, r);
      }
  std::vector<int> label(n, -1), assignment(n);
  int next = 0;
  for (std::size_t x = 0; x < n; ++x) {
    auto r = find(x);
    if (label[r] < 0) label[r] = next++;
    assignment[x] = label[r];
  }
  return Labelling(next, std::move(assignment));
}

LabelledComplex::LabelledComplex(DiagonalComplex c, Labelling l) : complex_(std::move(c)), labels_(std::move(l)) {
  const auto report = validate(complex_);
  if (!report.ok()) throw PreconditionError("labelled complex: diagonal complex does not validate");
  if (static_cast<int>(labels_.assignment().size()) != complex_.ground_size())
    throw PreconditionError("labelling size does not match the ground set");
  for (const auto& [u, g] : complex_.gamma_map())
    for (const auto& b : g.blocks())
      if (!labels_.label_of(b))
        throw PreconditionError("labelling is not constant on block " + show(b) + " of gamma(" + show(u) + ")");
}

std::vector<std::pair<std::size_t, std::size_t>> PartitionPoset::relations() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < objects.size(); ++a)
    for (std::size_t b = 0; b < objects.size(); ++b)
      if (a != b && leq(a, b)) out.emplace_back(a, b);
  return out;
}

PartitionPoset category_objects(const LabelledComplex& lc) {
  const auto& labels = lc.labels();
  auto admissible = [&](const PartialPartition& p) {
    return std::all_of(p.blocks().begin(), p.blocks().end(),
                       [&](const Block& b) { return labels.label_of(b).has_value(); });
  };
  std::set<PartialPartition> seen;
  std::vector<PartialPartition> list;
  for (const auto& kv : lc.complex().gamma_map())
    if (admissible(kv.second) && seen.insert(kv.second).second) list.push_back(kv.second);
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto m = meet(list[i], list[j]);
      if (m && admissible(*m) && seen.insert(*m).second) list.push_back(std::move(*m));
    }
  }
  return PartitionPoset{std::vector<PartialPartition>(seen.begin(), seen.end())};
}

Monomial monomial(const LabelledComplex& lc, const Simplex& u) {
  const auto& g = lc.complex().gamma(u);
  Monomial m(static_cast<std::size_t>(lc.labels().label_count()), 0);
  for (const auto& b : g.blocks()) ++m[static_cast<std::size_t>(*lc.labels().label_of(b))];
  return m;
}

nlohmann::json to_json(const DiagonalComplex& c, const Labelling* labels) {
  nlohmann::json j;
  j["ground"] = c.ground_size();
  j["simplices"] = nlohmann::json::array();
  j["gamma"] = nlohmann::json::object();
  for (const auto& [u, g] : c.gamma_map()) {
    j["simplices"].push_back(u);
    j["gamma"][simplex_key(u)] = to_json(g);
  }
  if (labels) j["labels"] = labels->assignment();
  return j;
}

DiagonalComplex complex_from_json(const nlohmann::json& j) {
  const int ground = j.at("ground").get<int>();
  std::map<Simplex, PartialPartition> g;
  for (const auto& s : j.at("simplices")) {
    auto u = s.get<Simplex>();
    const auto key = simplex_key(u);
    if (!j.at("gamma").contains(key)) throw std::invalid_argument("no gamma entry for simplex " + key);
    g.emplace(std::move(u), partial_partition_from_json(j["gamma"][key], ground));
  }
  if (g.size() != j.at("gamma").size()) throw std::invalid_argument("gamma has entries for non-simplices");
  return DiagonalComplex(ground, std::move(g));
}

std::optional<Labelling> labelling_from_json(const nlohmann::json& j) {
  if (!j.contains("labels")) return std::nullopt;
  auto a = j["labels"].get<std::vector<int>>();
  int count = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
  return Labelling(count, std::move(a));
}

}  // namespace dcx
