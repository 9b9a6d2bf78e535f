#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>

#include "chowfiber/int_matrix.hpp"

namespace chowfiber {

struct HermiteDecomposition {
  IntMatrix h;  // row-style Hermite normal form
  IntMatrix u;  // unimodular, u * a == h
};

/// Smith normal form u * a * v == s.
struct SmithDecomposition {
  IntMatrix s;
  IntMatrix u;
  IntMatrix v;

  /// Number of nonzero diagonal entries of s.
  std::size_t rank() const {
    std::size_t r = 0;
    std::size_t n = std::min(s.rows(), s.cols());
    while (r < n && s(r, r) != 0) ++r;
    return r;
  }

  /// Diagonal of s, length min(rows, cols).
  IntVector diagonal() const {
    std::size_t n = std::min(s.rows(), s.cols());
    IntVector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = s(i, i);
    return d;
  }
};

namespace detail {

struct ExtendedGcd {
  Integer g, p, q;  // p*a + q*b == g >= 0
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.p.get_mpz_t(), r.q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

/// Row-style Hermite normal form: row echelon, positive pivots, entries
/// above each pivot reduced into [0, pivot). Zero rows come last.
inline HermiteDecomposition hnf(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  const std::size_t m = a.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h(i, c) == 0) continue;
      auto [g, p, q] = detail::extended_gcd(h(r, c), h(i, c));
      Integer x = h(r, c) / g;
      Integer y = h(i, c) / g;
      // [[p, q], [-y, x]] has determinant p*x + q*y == 1.
      h.combine_rows(r, i, p, q, -y, x);
      u.combine_rows(r, i, p, q, -y, x);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer k = detail::floor_div(h(i, c), h(r, c));
      if (k == 0) continue;
      h.add_row_multiple(i, r, -k);
      u.add_row_multiple(i, r, -k);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

/// Smith normal form by elementary operations, pivoting on the entry of
/// least absolute value in the active block at each step.
inline SmithDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  const std::size_t diag = std::min(m, n);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Least nonzero |entry| in s[t.., t..].
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (s(i, j) == 0) continue;
          if (!best || mpz_cmpabs(s(i, j).get_mpz_t(), s(best->first, best->second).get_mpz_t()) < 0) best = {i, j};
        }
      if (!best) return {std::move(s), std::move(u), std::move(v)};

      s.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      s.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        Integer k = detail::trunc_div(s(i, t), s(t, t));
        s.add_row_multiple(i, t, -k);
        u.add_row_multiple(i, t, -k);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        Integer k = detail::trunc_div(s(t, j), s(t, t));
        s.add_col_multiple(j, t, -k);
        v.add_col_multiple(j, t, -k);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column t are clear; the pivot must divide the rest.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
      if (!offender) break;
      s.add_row_multiple(t, *offender, 1);
      u.add_row_multiple(t, *offender, 1);
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

inline std::size_t matrix_rank(const IntMatrix& a) { return snf(a).rank(); }

/// Inverse of a unimodular matrix; throws std::invalid_argument otherwise.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unimodular_inverse: matrix is not square");
  auto [h, t] = hnf(u);
  if (!(h == IntMatrix::identity(u.rows())))
    throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
  return t;
}

}  // namespace chowfiber
