#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chowfiber/int_matrix.hpp"
#include "chowfiber/normal_form.hpp"

namespace chowfiber {

/// Z^rank (+) Z/f_1 (+) ... (+) Z/f_k with f_i >= 2 and f_i | f_{i+1}.
struct FGAbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_trivial() const { return rank == 0 && invariant_factors.empty(); }
  bool is_finite() const { return rank == 0; }

  /// Order of the torsion subgroup.
  Integer torsion_order() const {
    Integer n = 1;
    for (const auto& f : invariant_factors) n *= f;
    return n;
  }

  /// True when the invariant factors are all >= 2 and form a divisibility chain.
  bool well_formed() const {
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
      if (invariant_factors[i] < 2) return false;
      if (i + 1 < invariant_factors.size() &&
          !mpz_divisible_p(invariant_factors[i + 1].get_mpz_t(), invariant_factors[i].get_mpz_t()))
        return false;
    }
    return true;
  }

  /// Builds the group from a Smith diagonal (units dropped, zeros become free rank).
  static FGAbelianGroup from_smith_diagonal(const IntVector& diagonal, std::size_t ambient_rank) {
    FGAbelianGroup g;
    std::size_t nonzero = 0;
    for (const auto& d : diagonal) {
      if (d == 0) continue;
      ++nonzero;
      if (d != 1) g.invariant_factors.push_back(abs(d));
    }
    g.rank = ambient_rank - nonzero;
    return g;
  }

  friend bool operator==(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    return a.rank == b.rank && a.invariant_factors == b.invariant_factors;
  }
};

/// Z^ambient_rank / column-span(relations), with its Smith coordinates.
struct CokernelPresentation {
  std::size_t ambient_rank = 0;
  IntMatrix relations;
  FGAbelianGroup group;
  // Unimodular u from snf(relations): y = u x are Smith coordinates.
  IntMatrix change_of_basis;
  // Smith diagonal padded with zeros to ambient_rank.
  IntVector smith_diagonal;
  // Indices into Smith coordinates that carry a canonical generator: the
  // torsion slots (diagonal entry >= 2) in order, then the free slots.
  std::vector<std::size_t> generator_slots;
  // ambient_rank x (generator count); column i is an ambient vector mapping
  // to canonical generator i.
  IntMatrix generators;

  std::size_t generator_count() const { return generator_slots.size(); }

  /// Canonical coordinates of the class of an ambient vector; torsion
  /// coordinates are reduced into [0, f_i).
  IntVector coordinates(const IntVector& ambient) const {
    IntVector y = change_of_basis * ambient;
    IntVector out;
    out.reserve(generator_slots.size());
    for (std::size_t slot : generator_slots) {
      Integer c = y[slot];
      if (smith_diagonal[slot] != 0) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), smith_diagonal[slot].get_mpz_t());
      out.push_back(std::move(c));
    }
    return out;
  }

  /// Whether an ambient vector lies in the relation lattice.
  bool is_zero_class(const IntVector& ambient) const {
    IntVector y = change_of_basis * ambient;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const Integer& d = smith_diagonal[i];
      if (d == 0 ? y[i] != 0 : !mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) return false;
    }
    return true;
  }
};

inline CokernelPresentation cokernel(const IntMatrix& a) {
  SmithDecomposition d = snf(a);
  CokernelPresentation p;
  p.ambient_rank = a.rows();
  p.relations = a;
  p.smith_diagonal = IntVector(a.rows());
  IntVector diag = d.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) p.smith_diagonal[i] = diag[i];
  p.group = FGAbelianGroup::from_smith_diagonal(diag, a.rows());

  for (std::size_t i = 0; i < a.rows(); ++i)
    if (p.smith_diagonal[i] >= 2) p.generator_slots.push_back(i);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (p.smith_diagonal[i] == 0) p.generator_slots.push_back(i);

  IntMatrix u_inv = unimodular_inverse(d.u);
  p.generators = IntMatrix(a.rows(), p.generator_slots.size());
  for (std::size_t g = 0; g < p.generator_slots.size(); ++g)
    for (std::size_t i = 0; i < a.rows(); ++i) p.generators(i, g) = u_inv(i, p.generator_slots[g]);
  p.change_of_basis = std::move(d.u);
  return p;
}

/// Columns form a basis of { x in Z^cols : a x = 0 }.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  SmithDecomposition d = snf(a);
  std::size_t r = d.rank();
  return d.v.column_block(r, a.cols() - r);
}

/// Integer coordinates c with basis * c == target, or nullopt when target is
/// not in the lattice spanned by the (independent) columns of basis.
inline std::optional<IntVector> solve_in_lattice(const IntMatrix& basis, const IntVector& target) {
  if (target.size() != basis.rows())
    throw std::invalid_argument("solve_in_lattice: target length does not match basis rows");
  SmithDecomposition d = snf(basis);
  std::size_t r = d.rank();
  if (r != basis.cols()) throw std::invalid_argument("solve_in_lattice: basis columns are dependent");
  IntVector y = d.u * target;
  IntVector z(basis.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(y[i].get_mpz_t(), d.s(i, i).get_mpz_t())) return std::nullopt;
      z[i] = y[i] / d.s(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return d.v * z;
}

}  // namespace chowfiber
