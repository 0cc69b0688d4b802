#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "nilgeo/rational.hpp"

namespace nilgeo {

/// Dense exact matrix, row-major. Zero-column matrices are allowed and denote
/// the zero subspace when a matrix is used as a basis (columns = vectors).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }
  static RatMatrix diagonal(const RatVector& d);
  /// Columns must all have length `rows`; `rows` is needed for the empty case.
  static RatMatrix from_columns(std::size_t rows, const std::vector<RatVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector column(std::size_t j) const;
  RatVector row(std::size_t i) const;
  std::vector<RatVector> columns() const;
  void set_column(std::size_t j, const RatVector& v);

  RatMatrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;
  /// Column-major flattening, used when matrices are unknowns or span members.
  RatVector vec() const;

  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rat& s, const RatMatrix& a);
RatVector operator*(const RatMatrix& a, const RatVector& x);

/// [a, b] = ab - ba.
RatMatrix commutator(const RatMatrix& a, const RatMatrix& b);
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b);

struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination over Q.
RowEchelon rref(RatMatrix a);
std::size_t rank(const RatMatrix& a);
/// Basis of {x : a x = 0}, one column per free variable (in increasing
/// free-variable order, free entry = 1).
RatMatrix nullspace(const RatMatrix& a);
/// The pivot columns of `a`, in order: a basis of its column span.
RatMatrix column_basis(const RatMatrix& a);
/// Particular solution with every free variable set to zero, or nullopt.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);
std::optional<RatMatrix> inverse(const RatMatrix& a);
Rat determinant(const RatMatrix& a);

bool has_independent_columns(const RatMatrix& basis);
bool in_span(const RatMatrix& basis, const RatVector& v);
/// span(a) == span(b).
bool same_span(const RatMatrix& a, const RatMatrix& b);
/// Basis of span(a) ∩ span(b), expressed as combinations of a's columns.
RatMatrix intersect(const RatMatrix& a, const RatMatrix& b);
/// Greedily extends `start` by columns of `candidates` (in order) that are
/// not in the running span; returns only the added columns.
RatMatrix greedy_complement(const RatMatrix& start, const RatMatrix& candidates);
/// Coordinates of v in the (independent) basis; nullopt when v ∉ span.
std::optional<RatVector> coordinates(const RatMatrix& basis, const RatVector& v);

}  // namespace nilgeo
