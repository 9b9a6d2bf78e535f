#pragma once

// Frobenius action on the geometric components of the special fiber, its
// orbits (the components over the residue field), the orbit weights
// w_Y = m_Y * |Y| and the lattice of invariant homomorphisms killed by the
// fiber class.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "chowfiber/int_matrix.hpp"
#include "chowfiber/lattice.hpp"

namespace chowfiber {

/// A permutation of a finite ordered set, given by its image list.
class PermutationAction {
 public:
  /// Throws std::invalid_argument unless frobenius is a bijection of ground_set.
  PermutationAction(std::vector<std::string> ground_set, std::vector<std::string> frobenius)
      : ground_(std::move(ground_set)), images_(std::move(frobenius)) {
    if (ground_.empty()) throw std::invalid_argument("permutation action: empty ground set");
    if (images_.size() != ground_.size())
      throw std::invalid_argument("permutation action: image list has " +
                                  std::to_string(images_.size()) + " entries for " +
                                  std::to_string(ground_.size()) + " components");
    for (std::size_t i = 0; i < ground_.size(); ++i)
      if (!index_.emplace(ground_[i], i).second)
        throw std::invalid_argument("permutation action: duplicate component \"" + ground_[i] + "\"");
    std::unordered_set<std::string> seen;
    for (const auto& img : images_) {
      if (!index_.contains(img))
        throw std::invalid_argument("permutation action: image \"" + img + "\" is not a component");
      if (!seen.insert(img).second)
        throw std::invalid_argument("permutation action: \"" + img + "\" is hit twice");
    }
  }

  const std::vector<std::string>& ground_set() const noexcept { return ground_; }
  const std::vector<std::string>& frobenius() const noexcept { return images_; }
  std::size_t size() const noexcept { return ground_.size(); }

  bool contains(const std::string& name) const { return index_.contains(name); }
  std::size_t index_of(const std::string& name) const { return index_.at(name); }
  const std::string& image(const std::string& name) const { return images_[index_.at(name)]; }

  friend bool operator==(const PermutationAction& a, const PermutationAction& b) {
    return a.ground_ == b.ground_ && a.images_ == b.images_;
  }

 private:
  std::vector<std::string> ground_;
  std::vector<std::string> images_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A component of the special fiber over the residue field.
struct ComponentOrbit {
  std::string name;
  std::vector<std::string> members;  // geometric components; empty when only orbit-level data is known
  Integer multiplicity = 1;
  std::size_t size = 1;

  friend bool operator==(const ComponentOrbit&, const ComponentOrbit&) = default;
};

struct WeightVector {
  IntVector weights;
};

/// Frobenius cycles in order of first appearance in the ground set.
inline std::vector<std::vector<std::string>> orbits(const PermutationAction& action) {
  std::vector<std::vector<std::string>> out;
  std::vector<bool> visited(action.size(), false);
  for (std::size_t i = 0; i < action.size(); ++i) {
    if (visited[i]) continue;
    std::vector<std::string> cycle;
    std::size_t j = i;
    while (!visited[j]) {
      visited[j] = true;
      cycle.push_back(action.ground_set()[j]);
      j = action.index_of(action.frobenius()[j]);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

/// Rank of the lattice of Frobenius-invariant homomorphisms Z^S -> Z, which
/// has one basis vector per orbit.
template <typename OrbitList>
std::size_t invariant_hom_rank(const OrbitList& orbit_list) {
  return orbit_list.size();
}

inline WeightVector xi_weights(const std::vector<ComponentOrbit>& orbit_list) {
  WeightVector w;
  w.weights.reserve(orbit_list.size());
  for (const auto& y : orbit_list) w.weights.push_back(y.multiplicity * Integer(static_cast<unsigned long>(y.size)));
  return w;
}

/// Basis (as columns) of the invariant homomorphisms h with sum_Y w_Y h_Y = 0.
inline IntMatrix hom_T_basis(const WeightVector& w) {
  IntMatrix row(1, w.weights.size());
  for (std::size_t j = 0; j < w.weights.size(); ++j) row(0, j) = w.weights[j];
  return integer_kernel(row);
}

}  // namespace chowfiber
