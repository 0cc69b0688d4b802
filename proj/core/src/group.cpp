#include "nilgeo/group.hpp"

#include "nilgeo/error.hpp"

namespace nilgeo {

namespace {

void require_two_step(const LieAlgebra& alg) {
  if (!alg.is_at_most_two_step()) throw Error(ErrorCode::NotTwoStep, "group law needs a 2-step algebra");
}

void require_size(const LieAlgebra& alg, const GroupPoint& x) {
  if (x.coords.size() != alg.dim()) throw Error(ErrorCode::DimensionMismatch, "group point has wrong length");
}

}  // namespace

GroupPoint group_multiply(const LieAlgebra& alg, const GroupPoint& x, const GroupPoint& y) {
  require_two_step(alg);
  require_size(alg, x);
  require_size(alg, y);
  return GroupPoint{x.coords + y.coords + Rat(1, 2) * alg.bracket(x.coords, y.coords)};
}

GroupPoint group_inverse(const LieAlgebra& alg, const GroupPoint& x) {
  require_two_step(alg);
  require_size(alg, x);
  return GroupPoint{-x.coords};
}

bool in_lattice(const LatticeSpec& spec, const GroupPoint& p) {
  if (p.coords.size() != spec.scaling.size()) return false;
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    if (!is_integer(p.coords[i] / spec.scaling[i])) return false;
  return true;
}

LatticeClosure lattice_closure_check(const LieAlgebra& alg, const LatticeSpec& spec) {
  require_two_step(alg);
  const std::size_t n = alg.dim();
  if (spec.scaling.size() != n) throw Error(ErrorCode::SchemaError, "scaling must have one entry per basis vector");
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(spec.scaling[i]) <= 0) throw Error(ErrorCode::SchemaError, "scaling entries must be positive", {i});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const RatVector half = (Rat(1, 2) * spec.scaling[i] * spec.scaling[j]) * alg.bracket_basis(i, j);
      if (!in_lattice(spec, GroupPoint{half})) return LatticeClosure{false, std::make_pair(i, j)};
    }
  return {};
}

}  // namespace nilgeo
