#pragma once
// Slow, independent reference computations used to check the library.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "contact_pi1/lattice.hpp"

namespace oracle {

using contact_pi1::Integer;
using contact_pi1::IntMatrix;
using contact_pi1::IntVector;
using Grid = std::vector<std::vector<Integer>>;

inline Grid grid(const IntMatrix &a) {
  Grid g(a.rows(), std::vector<Integer>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) g[i][j] = a(i, j);
  return g;
}

// Laplace expansion along the first row.
inline Integer cofactor_det(const Grid &m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    Grid minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    const Integer term = m[0][j] * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline Integer cofactor_det(const IntMatrix &a) { return cofactor_det(grid(a)); }

inline void subsets(std::size_t n, std::size_t k, std::vector<std::size_t> &cur,
                    std::vector<std::vector<std::size_t>> &out, std::size_t start = 0) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, cur, out, i + 1);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, cur, out);
  return out;
}

// gcd of all k x k minors (D_k); D_0 = 1.
inline Integer minor_gcd(const IntMatrix &a, std::size_t k) {
  if (k == 0) return 1;
  const Grid g = grid(a);
  Integer out = 0;
  for (const auto &rows : subsets(a.rows(), k))
    for (const auto &cols : subsets(a.cols(), k)) {
      Grid m;
      for (std::size_t i : rows) {
        std::vector<Integer> r;
        for (std::size_t j : cols) r.push_back(g[i][j]);
        m.push_back(std::move(r));
      }
      out = gcd(out, cofactor_det(m));
    }
  return out;
}

struct Invariants {
  std::size_t rank = 0;
  IntVector factors; // d_1 | d_2 | ... | d_rank
};

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
inline Invariants invariant_factors(const IntMatrix &a) {
  Invariants out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    const Integer d = minor_gcd(a, k);
    if (d == 0) break;
    out.factors.push_back(d / prev);
    prev = d;
    out.rank = k;
  }
  return out;
}

inline IntVector cross(const IntVector &a, const IntVector &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline IntVector primitive(IntVector v) {
  Integer g = 0;
  for (const Integer &x : v) g = gcd(g, x);
  if (g != 0)
    for (Integer &x : v) x /= g;
  return v;
}

inline Integer pair(const IntVector &a, const IntVector &b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Extreme rays of a pointed 3-dimensional cone {x : <x, v_i> >= 0}: every
// ray is the intersection of two facets, i.e. a multiple of a cross product.
inline std::set<IntVector> rays_3d(const std::vector<IntVector> &normals) {
  std::set<IntVector> out;
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      IntVector c = primitive(cross(normals[i], normals[j]));
      if (std::all_of(c.begin(), c.end(), [](const Integer &x) { return x == 0; })) continue;
      for (int sign : {1, -1}) {
        IntVector x = c;
        for (Integer &e : x) e *= sign;
        bool inside = true;
        for (const IntVector &v : normals)
          if (pair(x, v) < 0) inside = false;
        if (inside) out.insert(x);
      }
    }
  return out;
}

// Lattice length of the segment [a, b] between integral points.
inline Integer lattice_length(const IntVector &a, const IntVector &b) {
  Integer g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) g = gcd(g, Integer(b[i] - a[i]));
  return g;
}

// ---------------------------------------------------------------------------
// Generators

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, long(n) - 1)); }

  IntMatrix matrix(std::size_t rows, std::size_t cols, long bound) {
    IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = uniform(-bound, bound);
    return a;
  }

  IntVector vector(std::size_t n, long bound) {
    IntVector v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(uniform(-bound, bound));
    return v;
  }

  // Product of elementary row operations, swaps and sign flips.
  IntMatrix unimodular(std::size_t n, std::size_t steps = 10, long bound = 3) {
    IntMatrix u = IntMatrix::identity(n);
    if (n == 1) {
      if (uniform(0, 1)) u.negate_row(0);
      return u;
    }
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t a = index(n);
      std::size_t b = index(n - 1);
      if (b >= a) ++b;
      switch (uniform(0, 3)) {
      case 0: u.swap_rows(a, b); break;
      case 1: u.negate_row(a); break;
      default: u.add_row_multiple(a, b, uniform(-bound, bound)); break;
      }
    }
    return u;
  }

  template <class T> void shuffle(std::vector<T> &v) { std::shuffle(v.begin(), v.end(), rng); }
};

} // namespace oracle
