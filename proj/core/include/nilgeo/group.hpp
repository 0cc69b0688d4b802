#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "nilgeo/lie_algebra.hpp"

namespace nilgeo {

/// A group element in exponential coordinates: exp(Σ coords[i] e_i).
struct GroupPoint {
  RatVector coords;
  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;
};

/// Γ = {exp(Σ k_i d_i e_i) : k ∈ Z^n} with positive rational d_i.
struct LatticeSpec {
  RatVector scaling;
};

/// x · y = x + y + ½[x, y]. Throws NotTwoStep.
GroupPoint group_multiply(const LieAlgebra& alg, const GroupPoint& x, const GroupPoint& y);
/// x⁻¹ = −x. Throws NotTwoStep.
GroupPoint group_inverse(const LieAlgebra& alg, const GroupPoint& x);

/// True when p lies in Γ, i.e. every coords[i] / d_i is an integer.
bool in_lattice(const LatticeSpec& spec, const GroupPoint& p);

struct LatticeClosure {
  bool closed = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  ///< first i < j with ½[D e_i, D e_j] ∉ Γ
};

/// Γ is a subgroup iff ½[D e_i, D e_j] ∈ D Z^n for all i < j. Throws
/// NotTwoStep, and SchemaError for a scaling of the wrong length or with a
/// nonpositive entry.
LatticeClosure lattice_closure_check(const LieAlgebra& alg, const LatticeSpec& spec);

}  // namespace nilgeo
