#include "nilgeo/lie_algebra.hpp"

#include <utility>

#include "nilgeo/error.hpp"

namespace nilgeo {

std::vector<std::string> default_names(std::size_t dim, const std::string& prefix) {
  std::vector<std::string> names;
  names.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

LieAlgebra LieAlgebra::from_brackets(std::size_t dim, std::span<const BracketEntry> brackets,
                                     std::vector<std::string> names) {
  std::map<std::pair<std::size_t, std::size_t>, RatVector> given;
  for (const auto& entry : brackets) {
    if (entry.i >= dim || entry.j >= dim) {
      throw Error(ErrorCode::SchemaError, "bracket index out of range (dim " + std::to_string(dim) + ")");
    }
    RatVector value(dim, Rat(0));
    for (const auto& [k, coeff] : entry.coeffs) {
      if (k >= dim) throw Error(ErrorCode::SchemaError, "coefficient index out of range");
      value[k] = coeff;
    }
    if (entry.i == entry.j) {
      if (!is_zero(value)) {
        throw Error(ErrorCode::SchemaError, "[e_i, e_i] must vanish", {entry.i, entry.i});
      }
      continue;
    }
    const auto key = std::make_pair(entry.i, entry.j);
    if (auto it = given.find(key); it != given.end() && it->second != value) {
      throw Error(ErrorCode::SchemaError, "bracket given twice with different values", {entry.i, entry.j});
    }
    given[key] = std::move(value);
  }

  RatVector c(dim * dim * dim, Rat(0));
  for (const auto& [key, value] : given) {
    const auto [i, j] = key;
    if (auto mirror = given.find({j, i}); mirror != given.end() && mirror->second != -value) {
      throw Error(ErrorCode::SchemaError, "bracket and its mirror contradict antisymmetry", {i, j});
    }
    for (std::size_t k = 0; k < dim; ++k) {
      c[(i * dim + j) * dim + k] = value[k];
      c[(j * dim + i) * dim + k] = -value[k];
    }
  }
  return from_tensor(dim, std::move(c), std::move(names));
}

LieAlgebra LieAlgebra::from_tensor(std::size_t dim, RatVector constants, std::vector<std::string> names) {
  if (dim == 0) throw Error(ErrorCode::InvalidShape, "Lie algebra dimension must be positive");
  if (constants.size() != dim * dim * dim) {
    throw Error(ErrorCode::InvalidShape, "structure tensor must have dim^3 entries");
  }
  if (names.empty()) names = default_names(dim);
  if (names.size() != dim) throw Error(ErrorCode::SchemaError, "basis name count differs from dim");
  LieAlgebra alg;
  alg.dim_ = dim;
  alg.names_ = std::move(names);
  alg.c_ = std::move(constants);
  alg.validate_and_classify();
  return alg;
}

void LieAlgebra::validate_and_classify() {
  const std::size_t n = dim_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (c(i, j, k) != -c(j, i, k)) {
          throw Error(ErrorCode::SchemaError, "structure constants are not antisymmetric", {i, j, k});
        }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const RatVector jac = bracket(bracket_basis(i, j), unit_vector(n, k)) +
                              bracket(bracket_basis(j, k), unit_vector(n, i)) +
                              bracket(bracket_basis(k, i), unit_vector(n, j));
        if (!is_zero(jac)) throw Error(ErrorCode::JacobiViolation, "Jacobi identity fails", {i, j, k});
      }

  // Lower central series C^1 = n, C^{k+1} = [n, C^k].
  RatMatrix current = RatMatrix::identity(n);
  int step = 0;
  step_.reset();
  while (true) {
    ++step;
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      const RatMatrix adi = ad_basis(i);
      for (std::size_t col = 0; col < current.cols(); ++col) gens.push_back(adi * current.column(col));
    }
    RatMatrix next = column_basis(RatMatrix::from_columns(n, gens));
    if (next.cols() == 0) {
      step_ = step;
      return;
    }
    if (next.cols() == current.cols()) return;
    current = std::move(next);
  }
}

RatVector LieAlgebra::bracket(const RatVector& x, const RatVector& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "bracket argument size");
  RatVector r(dim_, Rat(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(y[j]) == 0) continue;
      const Rat xy = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) {
        const Rat& ck = c(i, j, k);
        if (sgn(ck) != 0) r[k] += xy * ck;
      }
    }
  }
  return r;
}

RatVector LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  RatVector r(dim_);
  for (std::size_t k = 0; k < dim_; ++k) r[k] = c(i, j, k);
  return r;
}

RatMatrix LieAlgebra::ad(const RatVector& x) const {
  RatMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) m.set_column(j, bracket(x, unit_vector(dim_, j)));
  return m;
}

RatMatrix LieAlgebra::ad_basis(std::size_t i) const {
  RatMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
  return m;
}

NilLieAlgebra::NilLieAlgebra(LieAlgebra alg) : LieAlgebra(std::move(alg)) {
  if (!is_nilpotent()) throw Error(ErrorCode::NotNilpotent, "lower central series does not terminate");
}

NilLieAlgebra from_structure_constants(std::size_t dim, std::span<const BracketEntry> brackets,
                                       std::vector<std::string> names) {
  return NilLieAlgebra(LieAlgebra::from_brackets(dim, brackets, std::move(names)));
}

RatMatrix center_basis(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  // Row (j, k), column i: coefficient of e_k in [x, e_j] for x = e_i.
  RatMatrix stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) stacked(j * n + k, i) = alg.c(i, j, k);
  return nullspace(stacked);
}

RatMatrix commutator_basis(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) gens.push_back(alg.bracket_basis(i, j));
  return column_basis(RatMatrix::from_columns(n, gens));
}

StructureReport structure_report(const LieAlgebra& alg) {
  StructureReport report;
  report.center = center_basis(alg);
  report.commutator = commutator_basis(alg);
  report.step = alg.nilpotency_step();
  report.commutator_in_center = true;
  for (std::size_t j = 0; j < report.commutator.cols(); ++j) {
    if (!in_span(report.center, report.commutator.column(j))) report.commutator_in_center = false;
  }
  report.corank = report.center.cols() >= report.commutator.cols()
                      ? report.center.cols() - report.commutator.cols()
                      : 0;
  return report;
}

RatVector bracket_eval(const LieAlgebra& alg, const RatVector& x, const RatVector& y) {
  return alg.bracket(x, y);
}

LieAlgebra abelian_algebra(std::size_t dim) {
  return LieAlgebra::from_tensor(dim, RatVector(dim * dim * dim, Rat(0)));
}

LieAlgebra direct_product(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t na = a.dim();
  const std::size_t n = na + b.dim();
  RatVector c(n * n * n, Rat(0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < na; ++k) c[(i * n + j) * n + k] = a.c(i, j, k);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k) c[((na + i) * n + na + j) * n + na + k] = b.c(i, j, k);
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  // Keep labels unique when both factors use the default e1, e2, ... names.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) {
        names = default_names(n);
        i = n;
        break;
      }
  return LieAlgebra::from_tensor(n, std::move(c), std::move(names));
}

LieAlgebra matrix_lie_algebra(const std::vector<RatMatrix>& basis, std::vector<std::string> names) {
  const std::size_t n = basis.size();
  if (n == 0) throw Error(ErrorCode::InvalidBasis, "empty matrix basis");
  std::vector<RatVector> vecs;
  for (const auto& m : basis) vecs.push_back(m.vec());
  const RatMatrix span = RatMatrix::from_columns(vecs.front().size(), vecs);
  if (!has_independent_columns(span)) throw Error(ErrorCode::InvalidBasis, "matrices are linearly dependent");
  RatVector c(n * n * n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto coeff = solve(span, commutator(basis[i], basis[j]).vec());
      if (!coeff) throw Error(ErrorCode::InvalidBasis, "span is not closed under the commutator", {i, j});
      for (std::size_t k = 0; k < n; ++k) c[(i * n + j) * n + k] = (*coeff)[k];
    }
  return LieAlgebra::from_tensor(n, std::move(c), std::move(names));
}

RatMatrix killing_form(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  std::vector<RatMatrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(alg.ad_basis(i));
  RatMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const RatMatrix prod = ads[i] * ads[j];
      Rat tr = 0;
      for (std::size_t t = 0; t < n; ++t) tr += prod(t, t);
      k(i, j) = tr;
      k(j, i) = tr;
    }
  return k;
}

}  // namespace nilgeo
