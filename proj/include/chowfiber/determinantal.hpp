#pragma once

// Determinantal divisors by brute-force minor enumeration (Bareiss minors,
// plain gcds). Independent of normal_form.hpp.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "chowfiber/int_matrix.hpp"

namespace chowfiber {

class OracleSizeLimit : public std::runtime_error {
 public:
  OracleSizeLimit(std::size_t min_dim, std::size_t limit)
      : std::runtime_error("oracle size limit: min dimension " + std::to_string(min_dim) +
                           " exceeds " + std::to_string(limit)) {}
};

inline constexpr std::size_t kOracleDimensionLimit = 8;

/// Determinant of a square matrix (Bareiss, exact).
inline Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
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
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace detail {

// Calls f(indices) for every increasing k-subset of {0..n-1}.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Entry k-1 is the gcd of all k x k minors (0 when they all vanish),
/// for k = 1 .. min(rows, cols).
inline std::vector<Integer> determinantal_divisors(const IntMatrix& a,
                                                   std::size_t limit = kOracleDimensionLimit) {
  const std::size_t n = std::min(a.rows(), a.cols());
  if (n > limit) throw OracleSizeLimit(n, limit);
  std::vector<Integer> out(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Integer g = 0;
    IntMatrix minor(k, k);
    detail::for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      if (g == 1) return;
      detail::for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        if (g == 1) return;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor(i, j) = a(rows[i], cols[j]);
        g = gcd(g, determinant(minor));
      });
    });
    out[k - 1] = g;
  }
  return out;
}

/// Successive quotients d_k / d_{k-1} (d_0 = 1); 0 once the divisors vanish.
inline std::vector<Integer> invariant_factors_from_divisors(const std::vector<Integer>& divisors) {
  std::vector<Integer> out;
  out.reserve(divisors.size());
  Integer previous = 1;
  for (const auto& d : divisors) {
    if (d == 0 || previous == 0) {
      out.emplace_back(0);
      previous = 0;
      continue;
    }
    out.push_back(d / previous);
    previous = d;
  }
  return out;
}

}  // namespace chowfiber
