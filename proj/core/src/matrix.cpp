#include "nilgeo/matrix.hpp"

#include <string>

#include "nilgeo/error.hpp"

namespace nilgeo {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

}  // namespace

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::diagonal(const RatVector& d) {
  RatMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<RatVector>& columns) {
  RatMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

RatVector RatMatrix::column(std::size_t j) const {
  RatVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

RatVector RatMatrix::row(std::size_t i) const {
  return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<RatVector> RatMatrix::columns() const {
  std::vector<RatVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

void RatMatrix::set_column(std::size_t j, const RatVector& v) {
  require(v.size() == rows_, "column length " + std::to_string(v.size()) + " != " + std::to_string(rows_));
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool RatMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RatVector RatMatrix::vec() const {
  RatVector v;
  v.reserve(rows_ * cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum shape mismatch");
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference shape mismatch");
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

RatMatrix operator-(const RatMatrix& a) { return Rat(-1) * a; }

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  require(a.cols() == b.rows(), "matrix product shape mismatch");
  RatMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

RatMatrix operator*(const Rat& s, const RatMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

RatVector operator*(const RatMatrix& a, const RatVector& x) {
  require(a.cols() == x.size(), "matrix-vector shape mismatch");
  RatVector r(a.rows(), Rat(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(x[j]) != 0) r[i] += a(i, j) * x[j];
  return r;
}

RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) { return a * b - b * a; }

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
  require(a.rows() == b.rows(), "hstack row mismatch");
  RatMatrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
  require(a.cols() == b.cols(), "vstack column mismatch");
  RatMatrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) r(a.rows() + i, j) = b(i, j);
  }
  return r;
}

RatMatrix block_diagonal(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

RowEchelon rref(RatMatrix a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && sgn(a(p, col)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    }
    const Rat inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || sgn(a(i, col)) == 0) continue;
      const Rat f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }

RatMatrix nullspace(const RatMatrix& a) {
  const auto [r, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector x(a.cols(), Rat(0));
    x[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -r(k, f);
    basis.push_back(std::move(x));
  }
  return RatMatrix::from_columns(a.cols(), basis);
}

RatMatrix column_basis(const RatMatrix& a) {
  const auto pivots = rref(a).pivots;
  RatMatrix b(a.rows(), pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) b.set_column(k, a.column(pivots[k]));
  return b;
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  require(a.rows() == b.size(), "solve: rhs length mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto [r, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols(), Rat(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = r(k, a.cols());
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::InvalidShape, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const auto [r, pivots] = rref(hstack(a, RatMatrix::identity(n)));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

Rat determinant(const RatMatrix& input) {
  if (!input.is_square()) throw Error(ErrorCode::InvalidShape, "determinant of a non-square matrix");
  RatMatrix a = input;
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(a(p, col)) == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(a(i, col)) == 0) continue;
      const Rat f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

bool has_independent_columns(const RatMatrix& basis) { return rank(basis) == basis.cols(); }

bool in_span(const RatMatrix& basis, const RatVector& v) {
  if (basis.cols() == 0) return nilgeo::is_zero(v);
  return solve(basis, v).has_value();
}

bool same_span(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t ra = rank(a);
  return ra == rank(b) && ra == rank(hstack(a, b));
}

RatMatrix intersect(const RatMatrix& a, const RatMatrix& b) {
  require(a.rows() == b.rows(), "intersect: ambient dimension mismatch");
  const RatMatrix ab = column_basis(a);
  const RatMatrix bb = column_basis(b);
  const RatMatrix ker = nullspace(hstack(ab, -bb));
  std::vector<RatVector> out;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    RatVector coeff(ab.cols());
    for (std::size_t i = 0; i < ab.cols(); ++i) coeff[i] = ker(i, k);
    out.push_back(ab * coeff);
  }
  return column_basis(RatMatrix::from_columns(a.rows(), out));
}

RatMatrix greedy_complement(const RatMatrix& start, const RatMatrix& candidates) {
  require(start.rows() == candidates.rows(), "greedy_complement: ambient mismatch");
  RatMatrix running = start;
  std::vector<RatVector> added;
  std::size_t r = rank(running);
  for (std::size_t j = 0; j < candidates.cols(); ++j) {
    RatMatrix trial = hstack(running, RatMatrix::from_columns(start.rows(), {candidates.column(j)}));
    const std::size_t rt = rank(trial);
    if (rt > r) {
      running = std::move(trial);
      r = rt;
      added.push_back(candidates.column(j));
    }
  }
  return RatMatrix::from_columns(start.rows(), added);
}

std::optional<RatVector> coordinates(const RatMatrix& basis, const RatVector& v) {
  if (basis.cols() == 0) {
    if (nilgeo::is_zero(v)) return RatVector{};
    return std::nullopt;
  }
  return solve(basis, v);
}

}  // namespace nilgeo
