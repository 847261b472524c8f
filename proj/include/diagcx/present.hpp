#pragma once

#include <compare>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diagcx/diagcx.hpp"

namespace dcx {

/// A finite group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Throws std::invalid_argument unless the table is a group with identity 0.
  FiniteGroup(std::string name, std::vector<std::vector<int>> table);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  bool is_abelian() const;
  /// A permutation of the elements fixing 0 and respecting multiplication.
  bool is_automorphism(const std::vector<int>& tau) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
};

FiniteGroup cyclic_group(int m);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Closure of permutations of {0..d-1}; elements sorted with the identity first.
FiniteGroup permutation_group(std::string name, const std::vector<std::vector<int>>& generators);
FiniteGroup symmetric_group_3();
FiniteGroup dihedral_group_8();
FiniteGroup quaternion_group();
/// One group from each isomorphism class of order <= max_order (max_order <= 8).
std::vector<FiniteGroup> small_groups(int max_order);
/// Subgroups as sorted element lists.
std::vector<std::vector<int>> subgroups(const FiniteGroup& g);

/// {"name": s, "table": [[...]]}
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FiniteGroup& g);

/// Element `element` of factor `factor`.
struct Letter {
  int factor = 0;
  int element = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// The free product of finitely many finite groups.
class FreeProduct {
 public:
  FreeProduct() = default;
  explicit FreeProduct(std::vector<FiniteGroup> factors);

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const FiniteGroup& factor(int i) const { return factors_.at(static_cast<std::size_t>(i)); }

  /// Multiplies adjacent letters of one factor and drops identities until the
  /// word alternates. Throws std::invalid_argument for letters out of range.
  Word normal_form(const Word& raw) const;
  Word multiply(const Word& a, const Word& b) const;
  Word inverse(const Word& w) const;

  /// All single letters and all alternating words of length 2 and 3.
  std::vector<Word> test_words() const;

  /// e.g. "a1.b2": factors named a, b, c, ..., elements by index.
  std::string render(const Word& w) const;

 private:
  std::vector<FiniteGroup> factors_;
};

/// An endomorphism given by the images of all letters. Composition reads left
/// to right: a.then(b) applies a first.
class Automorphism {
 public:
  static Automorphism identity(const FreeProduct& fp);
  /// alpha_i^{g}, g in G_j: x -> g^-1 x g for x in G_i, other factors fixed.
  /// Throws std::invalid_argument when i == j or g is out of range.
  static Automorphism partial_conjugation(const FreeProduct& fp, int i, int j, int g);
  /// (f, x) -> (sigma(f), x). Throws std::invalid_argument unless sigma only
  /// swaps factors with identical tables.
  static Automorphism factor_permutation(const FreeProduct& fp, const std::vector<int>& sigma);
  /// (k, x) -> (k, tau(x)). Throws std::invalid_argument unless tau is in Aut(G_k).
  static Automorphism factor_automorphism(const FreeProduct& fp, int k, const std::vector<int>& tau);

  Word apply(const FreeProduct& fp, const Word& w) const;
  Automorphism then(const FreeProduct& fp, const Automorphism& b) const;
  const Word& image(int factor, int element) const {
    return images_[static_cast<std::size_t>(factor)][static_cast<std::size_t>(element)];
  }

  friend bool operator==(const Automorphism&, const Automorphism&) = default;

 private:
  std::vector<std::vector<Word>> images_;  // [factor][element]
};

/// Image of w under alpha_i^{g}, g in G_j.
Word apply_partial_conjugation(const FreeProduct& fp, int i, int j, int g, const Word& w);

/// alpha_i^{g_j}.
struct PartialConjugation {
  int i = 0;
  int j = 0;
  int g = 0;
  friend bool operator==(const PartialConjugation&, const PartialConjugation&) = default;
};

/// alpha_{sigma(i)}^{g_{sigma(j)}}. Throws std::invalid_argument when sigma
/// moves a factor onto one with a different table.
PartialConjugation act_sym(const FreeProduct& fp, const std::vector<int>& sigma, const PartialConjugation& a);
/// alpha_i^{tau(g)} when j == k, else unchanged. Throws std::invalid_argument
/// unless tau is an automorphism of G_k.
PartialConjugation act_aut(const FreeProduct& fp, int k, const std::vector<int>& tau, const PartialConjugation& a);

/// Generator g_U: element `element` of the group with index `label`, on simplex `support`.
struct Generator {
  std::string name;
  int label = 0;
  int element = 0;
  Simplex support;
};

struct GenLetter {
  int gen = 0;
  bool inverse = false;
  friend bool operator==(const GenLetter&, const GenLetter&) = default;
};
using GenWord = std::vector<GenLetter>;

/// lhs = rhs; an empty side is the identity.
struct Relation {
  std::string kind;
  GenWord lhs;
  GenWord rhs;
};

struct Presentation {
  std::vector<Generator> generators;
  std::vector<Relation> relations;
  std::string render(const GenWord& w) const;
  std::string render(const Relation& r) const;
  std::size_t count(const std::string& kind) const;
};

/// Generators g_U for U with constant label and g != e in groups[label], with
/// the multiplication relations, commutators [g_U, h_V] for distinct blocks
/// U, V of every gamma(W), and g_U = g_{U_1}...g_{U_k} for non-singleton U.
/// When `pair_n` > 0 the ground set is X_{pair_n} and names use pairs.
/// Throws std::invalid_argument unless there is one group per label.
Presentation dc_presentation(const LabelledComplex& lc, const std::vector<FiniteGroup>& groups, int pair_n = 0);

/// Generators g_{(i,j)} only: multiplication relations and, for each
/// two-edge forest, the commutators of its two blocks with non-singleton
/// blocks written as products of pair generators. Throws std::invalid_argument for n < 2.
Presentation fr_presentation(int n, const std::vector<FiniteGroup>& groups);

/// The flat relation list of partial conjugations, in the same generators as
/// fr_presentation (alpha_j^{g_i} is the generator of (i, j) and element g^-1).
/// With `side_conditions` the commutators [alpha_i^{g_j}, alpha_k^{h_l}] are
/// restricted to k != j and i != l; without, all i != k are emitted.
Presentation fr_flat_presentation(int n, const std::vector<FiniteGroup>& groups, bool side_conditions);

/// Automorphism realising a generator.
using Realization = std::function<Automorphism(const Generator&)>;

/// g_U with label i acts as the product over (i, j) in U of alpha_j^{g^-1}.
Realization forest_realization(int n, const FreeProduct& fp);

struct RelationCheck {
  std::size_t index = 0;
  bool pass = true;
  std::string witness;  // first test word on which the sides differ
};

struct VerificationReport {
  std::size_t test_words = 0;
  std::vector<RelationCheck> rows;
  bool all_pass() const;
  std::size_t failures() const;
};

/// Evaluates both sides of every relation as composites of realised
/// generators (left to right) and compares them on the test words.
VerificationReport verify_relations(const Presentation& p, const FreeProduct& fp, const Realization& realize,
                                    unsigned workers = 1);

/// F := FreeGroup(...);; rels := [...];; G := F / rels;;
std::string export_gap(const Presentation& p);

nlohmann::json to_json(const Presentation& p);

}  // namespace dcx
