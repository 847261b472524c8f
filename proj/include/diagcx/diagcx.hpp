#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagcx/setpart.hpp"

namespace dcx {

/// A nonempty subset of the ground set, sorted ascending.
using Simplex = std::vector<int>;

/// Canonical key for a simplex: its indices joined by commas, e.g. "0,3,4".
std::string simplex_key(const Simplex& s);

/// A finite diagonal complex (Gamma, gamma) on the ground set {0..n-1}.
///
/// Construction only checks that the data is well formed (indices in range,
/// every gamma value lives on the same ground set). The three axioms are
/// checked by validate(), which reports failures as data.
class DiagonalComplex {
 public:
  DiagonalComplex() = default;
  DiagonalComplex(int ground_size, std::map<Simplex, PartialPartition> gamma);

  int ground_size() const { return ground_size_; }
  std::size_t size() const { return gamma_.size(); }
  bool contains(const Simplex& u) const { return gamma_.count(u) != 0; }

  /// Throws std::invalid_argument when u is not a simplex.
  const PartialPartition& gamma(const Simplex& u) const;
  const std::map<Simplex, PartialPartition>& gamma_map() const { return gamma_; }
  std::vector<Simplex> simplices() const;

  /// Full subcomplex spanned by a subset of the simplices (gamma restricted).
  DiagonalComplex restrict_to(const std::vector<Simplex>& keep) const;

  friend bool operator==(const DiagonalComplex&, const DiagonalComplex&) = default;

 private:
  int ground_size_ = 0;
  std::map<Simplex, PartialPartition> gamma_;
};

/// Union of the blocks of gamma(u) indexed by `choice` (a subset of block indices).
Simplex face_union(const PartialPartition& gamma_u, const std::vector<std::size_t>& choice);

struct AxiomResult {
  bool pass = true;
  std::string witness;  // empty on pass
};

struct ValidationReport {
  AxiomResult singletons;     // every {x} is a simplex
  AxiomResult partitions;     // gamma(U) partitions U, properly when |U| > 1
  AxiomResult faces;          // faces U_A exist and gamma(U_A) refines {U_i : i in A}
  bool ok() const { return singletons.pass && partitions.pass && faces.pass; }
};

ValidationReport validate(const DiagonalComplex& c);

/// gamma(U) = {U - M_1, ..., U - M_k} for the maximal proper subsets M_i of U in Gamma,
/// for every U. Throws PreconditionError if c does not validate.
bool is_proper(const DiagonalComplex& c);

/// Level (coarse = false) or coarse level of a simplex. Throws std::invalid_argument
/// if u is not in Gamma.
int level(const DiagonalComplex& c, const Simplex& u, bool coarse = false);

/// Levels of all simplices in one pass, keyed like gamma_map().
std::map<Simplex, int> levels(const DiagonalComplex& c, bool coarse = false);

/// Sub-complex of the simplices of level <= k.
DiagonalComplex filtration(const DiagonalComplex& c, int k, bool coarse = false);

/// An assignment X -> Z = {0..label_count-1}.
class Labelling {
 public:
  Labelling() = default;
  Labelling(int label_count, std::vector<int> assignment);

  /// Every element labelled 0.
  static Labelling trivial(int ground_size);

  int label_count() const { return label_count_; }
  const std::vector<int>& assignment() const { return assignment_; }
  int operator()(int x) const { return assignment_[static_cast<std::size_t>(x)]; }

  /// Common label of the elements of s, or nullopt when not constant.
  std::optional<int> label_of(const std::vector<int>& s) const;

  friend bool operator==(const Labelling&, const Labelling&) = default;

 private:
  int label_count_ = 0;
  std::vector<int> assignment_;
};

/// Finest labelling compatible with c: x and y share a label iff they are
/// connected through shared blocks of gamma values. Labels are numbered in
/// order of their least element.
Labelling universal_labelling(const DiagonalComplex& c);

/// A diagonal complex together with a labelling that is constant on every
/// block of every gamma(U). Both are checked on construction.
class LabelledComplex {
 public:
  /// Throws PreconditionError when c fails validation or l is not constant on blocks.
  LabelledComplex(DiagonalComplex c, Labelling l);

  const DiagonalComplex& complex() const& { return complex_; }
  DiagonalComplex complex() && { return std::move(complex_); }
  const Labelling& labels() const& { return labels_; }
  Labelling labels() && { return std::move(labels_); }

 private:
  DiagonalComplex complex_;
  Labelling labels_;
};

/// Objects of the category of a labelled complex: the meet-closure of the
/// gamma values inside the partial partitions with constant-label blocks.
struct PartitionPoset {
  std::vector<PartialPartition> objects;  // sorted
  bool leq(std::size_t a, std::size_t b) const {
    return is_partial_coarsening(objects[a], objects[b]);
  }
  /// Pairs (a, b), a != b, with objects[a] <=_pc objects[b].
  std::vector<std::pair<std::size_t, std::size_t>> relations() const;
};

PartitionPoset category_objects(const LabelledComplex& lc);

/// Exponent vector indexed by label.
using Monomial = std::vector<int>;

/// Product over the blocks of gamma(u) of the variable of the block's label.
Monomial monomial(const LabelledComplex& lc, const Simplex& u);

/// JSON: {"ground": n, "simplices": [[..]], "gamma": {"i,j,..": [[..]]}, "labels": [..]}.
/// "labels" is omitted when no labelling is given.
nlohmann::json to_json(const DiagonalComplex& c, const Labelling* labels = nullptr);
DiagonalComplex complex_from_json(const nlohmann::json& j);
std::optional<Labelling> labelling_from_json(const nlohmann::json& j);

}  // namespace dcx
