#pragma once

// From a fiber model to the cokernel B(X) of the specialization matrix, the
// induced degree character on it, its kernel B(X)_0 and the index.
//
// B(X)_0 is computed two ways and the results are compared:
//   quotient route: rewrite every specialization column in a basis of the
//                   homomorphisms killed by the fiber class, take the cokernel;
//   kernel route:   kernel of the degree character on the Smith presentation
//                   of B(X).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chowfiber/fiber_model.hpp"
#include "chowfiber/galois.hpp"
#include "chowfiber/lattice.hpp"

namespace chowfiber {

enum class Mode { strict, permissive };

/// Raised in strict mode when validation reports errors.
class InvalidModel : public std::runtime_error {
 public:
  explicit InvalidModel(std::vector<Diagnostic> diagnostics)
      : std::runtime_error("model failed validation"), diagnostics_(std::move(diagnostics)) {}
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Some generator column has nonzero weighted sum, so the degree character
/// does not factor through B(X).
class XiNotDescending : public std::runtime_error {
 public:
  struct Column {
    std::size_t index;  // 0-based column of the specialization matrix
    std::string generator;
    Integer weighted_sum;
  };

  explicit XiNotDescending(std::vector<Column> columns)
      : std::runtime_error(describe(columns)), columns_(std::move(columns)) {}
  const std::vector<Column>& columns() const noexcept { return columns_; }

 private:
  static std::string describe(const std::vector<Column>& cols) {
    std::string s = "degree character does not descend; offending generators:";
    for (const auto& c : cols) s += " " + c.generator + " (" + c.weighted_sum.get_str() + ")";
    return s;
  }
  std::vector<Column> columns_;
};

/// An internal consistency check failed (route disagreement, broken
/// Smith decomposition, ...).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class SpecialCase { irreducible_fiber };

inline const char* special_case_tag(SpecialCase) { return "irreducible-fiber"; }

struct XiBar {
  IntVector values;  // on the canonical generators of B(X), torsion first
  Integer index;     // positive generator of the image
};

struct B0Computation {
  FGAbelianGroup route_quotient;
  FGAbelianGroup route_kernel;

  bool agree() const { return route_quotient == route_kernel; }
};

struct ChowReport {
  std::string model_name;
  FGAbelianGroup b;
  std::optional<FGAbelianGroup> b0;        // unset when validation failed
  IntVector xi_on_generators;              // empty when validation failed
  std::optional<Integer> index;            // unset when validation failed
  std::vector<Diagnostic> diagnostics;
  std::optional<SpecialCase> special_case;
  Hypotheses hypotheses;
  bool formal_only = false;
  std::optional<ExpectedResult> expected;

  friend bool operator==(const ChowReport&, const ChowReport&) = default;
};

/// Cokernel of the specialization matrix.
inline CokernelPresentation compute_b(const FiberModel& m, Mode mode = Mode::strict) {
  if (mode == Mode::strict) {
    auto diags = validate(m);
    if (has_errors(diags)) throw InvalidModel(std::move(diags));
  }
  return cokernel(build_specialization_matrix(m));
}

inline XiBar compute_xi_bar(const FiberModel& m, const CokernelPresentation& p) {
  const WeightVector w = xi_weights(m.orbits);
  const IntMatrix a = build_specialization_matrix(m);
  std::vector<XiNotDescending::Column> bad;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Integer s = dot(w.weights, a.column(j));
    if (s != 0) bad.push_back({j, m.generators[j].name, s});
  }
  if (!bad.empty()) throw XiNotDescending(std::move(bad));

  XiBar xi;
  for (std::size_t g = 0; g < p.generator_count(); ++g) xi.values.push_back(dot(w.weights, p.generators.column(g)));
  xi.index = gcd_of(w.weights);
  return xi;
}

namespace detail {

inline FGAbelianGroup b0_by_quotient(const FiberModel& m) {
  const IntMatrix basis = hom_T_basis(xi_weights(m.orbits));
  const IntMatrix a = build_specialization_matrix(m);
  std::vector<IntVector> coords;
  coords.reserve(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    auto c = solve_in_lattice(basis, a.column(j));
    if (!c) throw InvariantViolation("column " + std::to_string(j + 1) + " is not orthogonal to the fiber class");
    coords.push_back(std::move(*c));
  }
  return cokernel(IntMatrix::from_columns(coords, basis.cols())).group;
}

inline FGAbelianGroup b0_by_kernel(const CokernelPresentation& p, const XiBar& xi) {
  const std::size_t torsion = p.group.invariant_factors.size();
  for (std::size_t g = 0; g < torsion; ++g)
    if (xi.values[g] != 0)
      throw InvariantViolation("degree character is nonzero on a torsion generator");
  IntMatrix on_free(1, p.group.rank);
  for (std::size_t g = 0; g < p.group.rank; ++g) on_free(0, g) = xi.values[torsion + g];
  return FGAbelianGroup{integer_kernel(on_free).cols(), p.group.invariant_factors};
}

}  // namespace detail

/// Both routes to B(X)_0; callers check agree().
inline B0Computation compute_b0(const FiberModel& m) {
  auto diags = validate(m);
  if (has_errors(diags)) throw InvalidModel(std::move(diags));
  CokernelPresentation p = cokernel(build_specialization_matrix(m));
  XiBar xi = compute_xi_bar(m, p);
  return {detail::b0_by_quotient(m), detail::b0_by_kernel(p, xi)};
}

inline bool is_irreducible_fiber(const FiberModel& m) {
  return m.orbits.size() == 1 && m.orbits[0].size == 1 && m.orbits[0].multiplicity == 1;
}

/// Full pipeline. Strict mode throws InvalidModel on validation errors;
/// permissive mode reports the formal cokernel instead. Throws
/// InvariantViolation if the two B(X)_0 routes disagree.
inline ChowReport report(const FiberModel& m, Mode mode = Mode::strict) {
  ChowReport r;
  r.model_name = m.name;
  r.hypotheses = m.hypotheses;
  r.expected = m.expected;
  r.diagnostics = validate(m);
  const bool invalid = has_errors(r.diagnostics);
  if (invalid && mode == Mode::strict) throw InvalidModel(r.diagnostics);

  CokernelPresentation p = cokernel(build_specialization_matrix(m));
  r.b = p.group;
  if (invalid) {
    r.formal_only = true;
    return r;
  }

  XiBar xi = compute_xi_bar(m, p);
  B0Computation b0{detail::b0_by_quotient(m), detail::b0_by_kernel(p, xi)};
  if (!b0.agree())
    throw InvariantViolation("B(X)_0 routes disagree: quotient rank " + std::to_string(b0.route_quotient.rank) +
                             ", kernel rank " + std::to_string(b0.route_kernel.rank));
  if (r.b.rank < 1 || b0.route_kernel.rank + 1 != r.b.rank)
    throw InvariantViolation("rank bookkeeping failed: B(X) rank " + std::to_string(r.b.rank) +
                             ", B(X)_0 rank " + std::to_string(b0.route_kernel.rank));
  r.b0 = b0.route_kernel;
  r.xi_on_generators = std::move(xi.values);
  r.index = xi.index;

  if (is_irreducible_fiber(m)) {
    if (!(r.b == FGAbelianGroup{1, {}}) || !r.b0->is_trivial() || *r.index != 1)
      throw InvariantViolation("irreducible fiber must give B(X) = Z and B(X)_0 = 0");
    r.special_case = SpecialCase::irreducible_fiber;
  }
  return r;
}

}  // namespace chowfiber
