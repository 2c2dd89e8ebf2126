#pragma once
// Exact integer linear algebra over arbitrary-precision integers.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contact_pi1/error.hpp"

namespace contact_pi1 {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

std::string to_string(const IntVector &v);

/// Row-major dense integer matrix. Zero-sized dimensions are allowed so that
/// an empty list of normals still has a matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);
  static IntMatrix from_columns(std::span<const IntVector> columns,
                                std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer &operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Integer &operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer &factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer &factor);
  void negate_row(std::size_t i);

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
  friend IntVector operator*(const IntMatrix &a, const IntVector &x);
  friend bool operator==(const IntMatrix &a, const IntMatrix &b);

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

Integer dot(const IntVector &a, const IntVector &b);
bool is_zero(const IntVector &v);

/// gcd of absolute values; 0 for an empty or all-zero list.
Integer gcd_all(std::span<const Integer> xs);
Integer lcm_all(std::span<const Integer> xs);

/// Splits v = g * p with g the content of v and p primitive, same direction.
std::pair<IntVector, Integer> primitive_part(const IntVector &v);
bool is_primitive(const IntVector &v);

/// Exact determinant (fraction-free Bareiss elimination).
Integer det(const IntMatrix &a);

/// Rank over the rationals.
std::size_t rank(const IntMatrix &a);

/// U * A * V == S with U, V unimodular and S diagonal with d1 | d2 | ... | dr
/// followed by zeros.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  std::size_t rank() const;
  /// Diagonal entries S(0,0) ... S(k-1,k-1), k = min(rows, cols).
  IntVector diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix &a);

/// Finitely generated abelian group Z^free_rank + Z/t1 + ... + Z/tk in
/// invariant-factor form (every t >= 2, t_i | t_{i+1}). Equality of values is
/// isomorphism of groups.
class AbelianGroup {
public:
  AbelianGroup() = default;
  AbelianGroup(std::size_t free_rank, IntVector torsion);

  static AbelianGroup trivial() { return {}; }
  static AbelianGroup free(std::size_t rank) { return {rank, {}}; }
  /// Z/k; k = 0 gives Z and k = 1 the trivial group.
  static AbelianGroup cyclic(const Integer &k);
  /// Group presented by diagonal relations (any order, any values).
  static AbelianGroup from_diagonal(std::span<const Integer> entries,
                                    std::size_t extra_free = 0);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const IntVector &torsion() const noexcept { return torsion_; }

  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_cyclic() const noexcept {
    return free_rank_ + torsion_.size() <= 1;
  }
  /// Product of the torsion coefficients; only meaningful for finite groups.
  Integer order() const;

  AbelianGroup direct_sum(const AbelianGroup &other) const;

  /// "0", "Z", "Z/3", "Z/2 + Z^2", ...
  std::string to_string() const;

  friend bool operator==(const AbelianGroup &, const AbelianGroup &) = default;

private:
  std::size_t free_rank_ = 0;
  IntVector torsion_;
};

/// Z^m / (column span of A), where m = A.rows().
AbelianGroup cokernel(const IntMatrix &a);

/// Basis of the saturated integer kernel {x : A x = 0}, in Hermite normal
/// form (so the output is canonical for the lattice). Each vector is primitive.
std::vector<IntVector> kernel_basis(const IntMatrix &a);

/// Returns A with det A = 1 (|det A| = 1 in dimension 1) and A * r = e_last.
/// Throws NotPrimitive unless gcd(r) = 1.
IntMatrix complete_to_unimodular(const IntVector &r);

namespace detail {

/// Row-style Hermite normal form: H = T * A, T unimodular, H in echelon form
/// with positive pivots and entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix T;
};
HermiteForm hermite_normal_form(const IntMatrix &a);

} // namespace detail

} // namespace contact_pi1
