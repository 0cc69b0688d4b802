#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilgeo/matrix.hpp"

namespace nilgeo {

/// One bracket relation [e_i, e_j] = Σ_k coeffs[k] e_k, zero-based indices.
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::map<std::size_t, Rat> coeffs;
};

/// Finite-dimensional real Lie algebra with exact rational structure
/// constants c(i, j, k): [e_i, e_j] = Σ_k c(i, j, k) e_k. Antisymmetry and the
/// Jacobi identity are verified exactly on construction.
class LieAlgebra {
 public:
  /// Missing mirror entries are completed by antisymmetry. A relation given
  /// for both (i, j) and (j, i) must agree up to sign, and [e_i, e_i] must
  /// vanish; otherwise SchemaError. Jacobi failures throw JacobiViolation with
  /// the offending index triple.
  static LieAlgebra from_brackets(std::size_t dim, std::span<const BracketEntry> brackets,
                                  std::vector<std::string> names = {});
  /// Full tensor, index (i * dim + j) * dim + k.
  static LieAlgebra from_tensor(std::size_t dim, RatVector constants, std::vector<std::string> names = {});

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const Rat& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
  const RatVector& tensor() const noexcept { return c_; }

  RatVector bracket(const RatVector& x, const RatVector& y) const;
  RatVector bracket_basis(std::size_t i, std::size_t j) const;
  /// Matrix of y ↦ [x, y].
  RatMatrix ad(const RatVector& x) const;
  RatMatrix ad_basis(std::size_t i) const;

  /// Step s of nilpotency (C^{s+1} = 0), or nullopt when not nilpotent.
  /// The zero bracket has step 1.
  std::optional<int> nilpotency_step() const noexcept { return step_; }
  bool is_nilpotent() const noexcept { return step_.has_value(); }
  /// [[x, y], w] = 0 for all basis triples (abelian counts).
  bool is_at_most_two_step() const noexcept { return step_ && *step_ <= 2; }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 protected:
  LieAlgebra() = default;

 private:
  void validate_and_classify();

  std::size_t dim_ = 0;
  std::vector<std::string> names_;
  RatVector c_;
  std::optional<int> step_;
};

/// A LieAlgebra known to be nilpotent.
class NilLieAlgebra : public LieAlgebra {
 public:
  /// Throws NotNilpotent.
  explicit NilLieAlgebra(LieAlgebra alg);
  int step() const noexcept { return *nilpotency_step(); }
};

/// Validated nilpotent algebra from bracket relations; see
/// LieAlgebra::from_brackets for the antisymmetric completion rule.
NilLieAlgebra from_structure_constants(std::size_t dim, std::span<const BracketEntry> brackets,
                                       std::vector<std::string> names = {});

struct StructureReport {
  RatMatrix center;      ///< basis columns of z(n)
  RatMatrix commutator;  ///< basis columns of C(n) = [n, n]
  std::size_t corank = 0;
  /// 1, 2, ... for nilpotent algebras; nullopt otherwise.
  std::optional<int> step;
  bool commutator_in_center = false;
};

StructureReport structure_report(const LieAlgebra& alg);
RatVector bracket_eval(const LieAlgebra& alg, const RatVector& x, const RatVector& y);

/// Exact nullspace of the stacked ad-operators.
RatMatrix center_basis(const LieAlgebra& alg);
RatMatrix commutator_basis(const LieAlgebra& alg);

LieAlgebra abelian_algebra(std::size_t dim);
/// a × b with a's basis first.
LieAlgebra direct_product(const LieAlgebra& a, const LieAlgebra& b);
/// Structure constants of span(basis) ⊂ gl(n) under the commutator. Throws
/// InvalidBasis when the span is not closed or the matrices are dependent.
LieAlgebra matrix_lie_algebra(const std::vector<RatMatrix>& basis, std::vector<std::string> names = {});
/// K(x, y) = trace(ad x ∘ ad y).
RatMatrix killing_form(const LieAlgebra& alg);

std::vector<std::string> default_names(std::size_t dim, const std::string& prefix = "e");

}  // namespace nilgeo
