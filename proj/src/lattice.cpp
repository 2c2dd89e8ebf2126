#include "contact_pi1/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace contact_pi1 {

namespace {
int cmpabs(const Integer &a, const Integer &b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}
} // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::ZeroVector: return "ZeroVector";
  case ErrorCode::NotSquare: return "NotSquare";
  case ErrorCode::NotPrimitive: return "NotPrimitive";
  case ErrorCode::ZeroNormal: return "ZeroNormal";
  case ErrorCode::DuplicateNormal: return "DuplicateNormal";
  case ErrorCode::RedundantFacet: return "RedundantFacet";
  case ErrorCode::BadDimension: return "BadDimension";
  case ErrorCode::NotStrictlyConvex: return "NotStrictlyConvex";
  case ErrorCode::InteriorVectorNotFound: return "InteriorVectorNotFound";
  case ErrorCode::ReebNotPositiveOnCone: return "ReebNotPositiveOnCone";
  case ErrorCode::InvalidMomentCone: return "InvalidMomentCone";
  case ErrorCode::MissingBundleClass: return "MissingBundleClass";
  case ErrorCode::Unbounded: return "Unbounded";
  case ErrorCode::Empty: return "Empty";
  case ErrorCode::NotSimple: return "NotSimple";
  case ErrorCode::NotGeneric: return "NotGeneric";
  case ErrorCode::NotIntegral: return "NotIntegral";
  case ErrorCode::NotDelzant: return "NotDelzant";
  case ErrorCode::NonIntegerOffset: return "NonIntegerOffset";
  case ErrorCode::NotGood: return "NotGood";
  case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &detail,
             std::vector<std::size_t> indices)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code), indices_(std::move(indices)) {}

std::string to_string(const IntVector &v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].get_str();
  }
  out << ')';
  return out.str();
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows,
                               std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw Error(ErrorCode::BadDimension,
                  "row " + std::to_string(i + 1) + " has length " +
                      std::to_string(rows[i].size()) + ", expected " +
                      std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVector> columns,
                                  std::size_t rows) {
  return from_rows(columns, rows).transpose();
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(entries_.begin() + i * cols_,
                   entries_.begin() + (i + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                 const Integer &factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                 const Integer &factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorCode::BadDimension, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer &aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix &a, const IntVector &x) {
  if (a.cols_ != x.size())
    throw Error(ErrorCode::BadDimension, "matrix-vector shape mismatch");
  IntVector y(a.rows_, Integer(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
  return y;
}

bool operator==(const IntMatrix &a, const IntMatrix &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ", ";
    out << contact_pi1::to_string(row(i));
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------
// Scalars and vectors

Integer dot(const IntVector &a, const IntVector &b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::BadDimension, "dot product length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVector &v) {
  return std::all_of(v.begin(), v.end(), [](const Integer &x) { return x == 0; });
}

Integer gcd_all(std::span<const Integer> xs) {
  Integer g = 0;
  for (const Integer &x : xs) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Integer lcm_all(std::span<const Integer> xs) {
  Integer l = 1;
  for (const Integer &x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
  return l;
}

std::pair<IntVector, Integer> primitive_part(const IntVector &v) {
  Integer g = gcd_all(v);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "zero vector has no primitive part");
  IntVector p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    mpz_divexact(p[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return {std::move(p), std::move(g)};
}

bool is_primitive(const IntVector &v) { return gcd_all(v) == 1; }

// ---------------------------------------------------------------------------
// Determinant and rank

Integer det(const IntMatrix &a) {
  if (!a.is_square())
    throw Error(ErrorCode::NotSquare, "determinant of a " +
                                          std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix &a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && m(p, col) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        Integer t = m(i, j) * m(r, col) - m(i, col) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, col) = 0;
    }
    prev = m(r, col);
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Moves the nonzero entry of smallest magnitude in s[t.., t..] to (t, t).
// Returns false when the block is zero.
bool bring_smallest_to_pivot(IntMatrix &s, IntMatrix &u, IntMatrix &v,
                             std::size_t t) {
  std::size_t bi = 0, bj = 0;
  bool found = false;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      if (!found || cmpabs(s(i, j), s(bi, bj)) < 0) {
        bi = i;
        bj = j;
        found = true;
      }
    }
  if (!found) return false;
  s.swap_rows(t, bi);
  u.swap_rows(t, bi);
  s.swap_cols(t, bj);
  v.swap_cols(t, bj);
  return true;
}

// Same, restricted to the pivot row and pivot column.
void bring_smallest_in_cross_to_pivot(IntMatrix &s, IntMatrix &u, IntMatrix &v,
                                      std::size_t t) {
  std::size_t bi = t, bj = t;
  for (std::size_t i = t + 1; i < s.rows(); ++i)
    if (s(i, t) != 0 && cmpabs(s(i, t), s(bi, bj)) < 0) {
      bi = i;
      bj = t;
    }
  for (std::size_t j = t + 1; j < s.cols(); ++j)
    if (s(t, j) != 0 && cmpabs(s(t, j), s(bi, bj)) < 0) {
      bi = t;
      bj = j;
    }
  s.swap_rows(t, bi);
  u.swap_rows(t, bi);
  s.swap_cols(t, bj);
  v.swap_cols(t, bj);
}

} // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t k = std::min(S.rows(), S.cols());
  while (r < k && S(r, r) != 0) ++r;
  return r;
}

IntVector SmithDecomposition::diagonal() const {
  const std::size_t k = std::min(S.rows(), S.cols());
  IntVector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = S(i, i);
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix &a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  Integer q;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    if (!bring_smallest_to_pivot(s, u, v, t)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Remainders are strictly smaller than the pivot, so this terminates.
        bring_smallest_in_cross_to_pivot(s, u, v, t);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row and retry.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            s.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// Abelian groups

AbelianGroup::AbelianGroup(std::size_t free_rank, IntVector torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      throw std::invalid_argument("torsion coefficient below 2: " +
                                  torsion_[i].get_str());
    if (i > 0 &&
        !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
      throw std::invalid_argument("torsion coefficients do not form a chain");
  }
}

AbelianGroup AbelianGroup::cyclic(const Integer &k) {
  Integer a = abs(k);
  if (a == 0) return free(1);
  if (a == 1) return trivial();
  return {0, {a}};
}

AbelianGroup AbelianGroup::from_diagonal(std::span<const Integer> entries,
                                         std::size_t extra_free) {
  IntMatrix d(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  AbelianGroup g = cokernel(d);
  g.free_rank_ += extra_free;
  return g;
}

Integer AbelianGroup::order() const {
  Integer o = 1;
  for (const Integer &t : torsion_) o *= t;
  return o;
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup &other) const {
  IntVector all = torsion_;
  all.insert(all.end(), other.torsion_.begin(), other.torsion_.end());
  return from_diagonal(all, free_rank_ + other.free_rank_);
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  for (const Integer &t : torsion_) {
    if (!out.empty()) out += " + ";
    out += "Z/" + t.get_str();
  }
  if (free_rank_ > 0) {
    if (!out.empty()) out += " + ";
    out += free_rank_ == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank_);
  }
  return out;
}

AbelianGroup cokernel(const IntMatrix &a) {
  SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  IntVector torsion;
  for (std::size_t i = 0; i < r; ++i)
    if (snf.S(i, i) > 1) torsion.push_back(snf.S(i, i));
  return {a.rows() - r, std::move(torsion)};
}

// ---------------------------------------------------------------------------
// Hermite form, kernels, unimodular completion

namespace detail {

HermiteForm hermite_normal_form(const IntMatrix &a) {
  IntMatrix h = a;
  IntMatrix t = IntMatrix::identity(a.rows());
  const std::size_t rows = h.rows(), cols = h.cols();
  Integer q;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (h(i, col) != 0 && (best == rows || cmpabs(h(i, col), h(best, col)) < 0))
          best = i;
      if (best == rows) break;
      h.swap_rows(r, best);
      t.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, col) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(r, col).get_mpz_t());
        h.add_row_multiple(i, r, -q);
        t.add_row_multiple(i, r, -q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      h.negate_row(r);
      t.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(r, col).get_mpz_t());
      h.add_row_multiple(i, r, -q);
      t.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(t)};
}

} // namespace detail

std::vector<IntVector> kernel_basis(const IntMatrix &a) {
  const std::size_t c = a.cols();
  if (c == 0) return {};
  SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  if (r == c) return {};
  std::vector<IntVector> raw;
  for (std::size_t j = r; j < c; ++j) raw.push_back(snf.V.column(j));
  IntMatrix h = detail::hermite_normal_form(IntMatrix::from_rows(raw, c)).H;
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < h.rows(); ++i) basis.push_back(h.row(i));
  return basis;
}

IntMatrix complete_to_unimodular(const IntVector &r) {
  const std::size_t dim = r.size();
  if (dim == 0) throw Error(ErrorCode::BadDimension, "empty vector");
  if (!is_primitive(r))
    throw Error(ErrorCode::NotPrimitive, to_string(r) + " is not primitive");

  const std::size_t last = dim - 1;
  IntMatrix a = IntMatrix::identity(dim);
  IntVector cur = r;
  Integer g, x, y, bg, ag;
  for (std::size_t i = 0; i < last; ++i) {
    if (cur[i] == 0) continue;
    // Rows (i, last) are replaced by a 2x2 block of determinant 1 that sends
    // (cur[i], cur[last]) to (0, gcd).
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
               cur[last].get_mpz_t(), cur[i].get_mpz_t());
    mpz_divexact(bg.get_mpz_t(), cur[last].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(ag.get_mpz_t(), cur[i].get_mpz_t(), g.get_mpz_t());
    IntVector row_i = a.row(i), row_last = a.row(last);
    for (std::size_t j = 0; j < dim; ++j) {
      a(i, j) = bg * row_i[j] - ag * row_last[j];
      a(last, j) = x * row_last[j] + y * row_i[j];
    }
    cur[i] = 0;
    cur[last] = g;
  }
  if (cur[last] < 0) a.negate_row(last);
  if (dim > 1 && det(a) < 0) a.negate_row(0);
  return a;
}

} // namespace contact_pi1
