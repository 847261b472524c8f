#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "diagcx/diagcx.hpp"
#include "diagcx/present.hpp"

namespace dcx {

/// Dense integer matrix with arbitrary precision entries.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  /// Throws std::invalid_argument on ragged input.
  static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntegerMatrix operator*(const IntegerMatrix& o) const;
  bool is_zero() const;
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> a_;
};

/// Nonzero invariant factors d_1 | d_2 | ..., all positive.
std::vector<mpz_class> smith_normal_form(const IntegerMatrix& m);

/// Rank over the rationals by fraction-free elimination.
std::size_t rank(IntegerMatrix m);

/// "rows cols nnz" then one "row col value" line per nonzero entry, 1-based.
std::string to_triplets(const IntegerMatrix& m);

/// Betti numbers of the colimit subcomplex of the torus chain complex, one
/// per degree 0..max |gamma(U)|. `factors` is empty (all circles) or one
/// descriptor per label; anything other than "circle" throws UnsupportedError.
/// Throws ResourceError for ground sets above 63 elements.
std::vector<std::int64_t> torus_model_betti(const LabelledComplex& lc, const std::vector<std::string>& factors = {},
                                            unsigned workers = 1);

/// The degree-k generator matrix of the torus model: one row per (U, A) with
/// |A| = k, one column per k-subset of X that occurs.
IntegerMatrix torus_model_matrix(const DiagonalComplex& c, int k);

/// Faces as sorted vertex lists, closed under nonempty subsets.
class SimplicialComplexData {
 public:
  SimplicialComplexData() = default;
  /// Throws std::invalid_argument unless faces are in range and downward closed.
  SimplicialComplexData(int vertex_count, std::set<std::vector<int>> faces);
  /// Downward closure of the given faces.
  static SimplicialComplexData from_maximal(int vertex_count, const std::vector<std::vector<int>>& faces);

  int vertex_count() const { return vertex_count_; }
  const std::set<std::vector<int>>& faces() const { return faces_; }
  int dimension() const;
  /// Faces with k + 1 vertices in lexicographic order.
  std::vector<std::vector<int>> faces_of_dimension(int k) const;

 private:
  int vertex_count_ = 0;
  std::set<std::vector<int>> faces_;
};

/// Boundary map C_k -> C_{k-1} (rows indexed by (k-1)-faces).
IntegerMatrix boundary_matrix(const SimplicialComplexData& s, int k);

struct HomologyGroup {
  std::int64_t free = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Integral homology in degrees 0..max_degree.
std::vector<HomologyGroup> simplicial_homology(const SimplicialComplexData& s, int max_degree);
/// Ranks of reduced homology in degrees 0..max_degree.
std::vector<std::int64_t> reduced_betti(const SimplicialComplexData& s, int max_degree);

struct CosetNerve {
  std::vector<std::vector<int>> cosets;  // vertex -> sorted elements
  SimplicialComplexData complex;
};

/// Order complex of the left cosets gH, H in the family, under inclusion.
/// Throws std::invalid_argument if a member is not a subgroup or the family
/// is not closed under intersection.
CosetNerve coset_nerve(const FiniteGroup& g, const std::vector<std::vector<int>>& family);

nlohmann::json to_json(const std::vector<HomologyGroup>& h);

}  // namespace dcx
