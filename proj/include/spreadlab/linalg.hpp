#pragma once

// Subspaces of V(n,q) in reduced row echelon form, projective point
// indexing, hyperplanes and q-analog counting.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spreadlab/bigint.hpp"
#include "spreadlab/gf.hpp"

namespace spreadlab::linalg {

using gf::Elem;
using gf::Field;

inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;

class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t cols, const std::vector<std::vector<Elem>>& rows);

  static Matrix identity(const Field& field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Elem> values);
  std::vector<std::vector<Elem>> to_rows() const;

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ && field_ == o.field_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

/// Reduced row echelon form with zero rows removed. Idempotent.
Matrix rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Rows of `a` followed by rows of `b`.
Matrix stack(const Matrix& a, const Matrix& b);

class Subspace {
 public:
  /// Row space of `generators`, canonicalised.
  static Subspace span(const Matrix& generators);
  static Subspace zero(const Field& field, std::size_t n);
  static Subspace full(const Field& field, std::size_t n);
  /// span(e_first, ..., e_{first+count-1})
  static Subspace coordinate(const Field& field, std::size_t n, std::size_t first,
                             std::size_t count);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<std::size_t> pivots() const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  std::size_t hash() const;

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  friend class SubspaceEnumerator;

  Matrix basis_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

/// dim(A ∩ B) = dim A + dim B - rank[A; B]. Throws AmbientMismatch.
std::size_t intersect_dim(const Subspace& a, const Subspace& b);
bool is_disjoint(const Subspace& a, const Subspace& b);

/// [n choose k]_q as an exact integer.
BigInt gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t q);

/// Streams the d-subspaces of V(n,q) once each, ordered by pivot-column set
/// (lexicographic) and then by the free entries read row-major. Restartable.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(Field field, std::size_t n, std::size_t d);

  std::optional<Subspace> next();
  void reset();
  BigInt count() const { return gaussian_binomial(n_, d_, field_.q()); }

 private:
  bool advance_pivots();
  void load_free_positions();

  Field field_;
  std::size_t n_;
  std::size_t d_;
  std::vector<std::size_t> pivots_;
  std::vector<std::pair<std::size_t, std::size_t>> free_;
  std::vector<Elem> free_values_;
  bool started_ = false;
  bool done_ = false;
};

/// Throws BudgetExceeded if [n, d]_q exceeds `budget`.
SubspaceEnumerator enumerate_subspaces(std::size_t n, std::size_t d, const Field& field,
                                       std::uint64_t budget = kDefaultEnumerationBudget);
std::vector<Subspace> all_subspaces(std::size_t n, std::size_t d, const Field& field,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Canonical numbering of the projective points of V(n,q). A point is
/// represented by the nonzero vector whose first nonzero entry is 1, and
/// points are numbered in increasing lexicographic order of that vector:
/// a vector with leading 1 at position k and tail value v (base q) gets
/// index Θ_{n-1-k} + v.
class PointSpace {
 public:
  PointSpace(Field field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t ambient() const { return n_; }
  std::uint64_t count() const { return theta_[n_]; }

  std::uint64_t index(std::span<const Elem> normalized) const;
  std::vector<Elem> vector(std::uint64_t index) const;
  /// Scales a nonzero vector so its first nonzero entry is 1.
  std::vector<Elem> normalize(std::span<const Elem> v) const;

  /// Indices of the Θ_d points of `s`, sorted ascending.
  std::vector<std::uint64_t> points_of(const Subspace& s) const;

 private:
  Field field_;
  std::size_t n_;
  std::vector<std::uint64_t> qpow_;
  std::vector<std::uint64_t> theta_;
};

/// {v : v·s = 0 for all s in S}, the subspace of functionals vanishing on S.
Subspace annihilator(const Subspace& s);

struct Hyperplane {
  std::size_t ambient = 0;
  std::vector<Elem> dual;  // first nonzero coordinate is 1
};

/// The Θ_n hyperplanes of V(n,q), in the canonical point order of their
/// dual functionals. Restartable.
class HyperplaneEnumerator {
 public:
  HyperplaneEnumerator(Field field, std::size_t n) : points_(std::move(field), n) {}

  std::optional<Hyperplane> next();
  void reset() { next_index_ = 0; }
  std::uint64_t count() const { return points_.count(); }

 private:
  PointSpace points_;
  std::uint64_t next_index_ = 0;
};

HyperplaneEnumerator hyperplanes(std::size_t n, const Field& field);

/// True iff the dual functional of `h` annihilates every basis row of `s`.
bool contains(const Hyperplane& h, const Subspace& s);

}  // namespace spreadlab::linalg
