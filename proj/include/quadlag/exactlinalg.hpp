#pragma once

// Exact integer and rational linear algebra over GMP.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadlag/errors.hpp"

namespace quadlag {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix. Rows are the natural unit: lattice bases store one
// generator per row.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionMismatch("matrix entry count != rows*cols");
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw DimensionMismatch("ragged matrix literal");
      for (long v : r) m.data_.emplace_back(v);
    }
    return m;
  }

  // `cols` is needed to describe a matrix with no rows.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row(std::size_t i) const {
    auto s = row_span(i);
    return {s.begin(), s.end()};
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  void append_row(const std::vector<T>& r) {
    if (r.size() != cols_) throw DimensionMismatch("appended row has wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_columns(std::span<const std::size_t> idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c < idx.size(); ++c) out(i, c) = (*this)(i, idx[c]);
    return out;
  }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix out(0, cols_);
    for (std::size_t r : idx) out.append_row(row(r));
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

IntVector multiply(const IntMatrix& m, std::span<const Integer> v);
RatVector multiply(const RatMatrix& m, std::span<const Rational> v);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational dot(std::span<const Rational> a, std::span<const Integer> b);

// ---------------------------------------------------------------------------
// Rational elimination.

struct Echelon {
  RatMatrix reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon rref(RatMatrix m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

// Particular solution of m * x = rhs with all free variables set to zero.
std::optional<RatVector> solve(const RatMatrix& m, std::span<const Rational> rhs);

// Unique solution of a square system; nullopt when singular.
std::optional<RatVector> solve_square(RatMatrix m, RatVector rhs);

// Rows form a basis of {x : m * x = 0} over the rationals.
RatMatrix nullspace(const RatMatrix& m);

std::optional<RatMatrix> inverse(const RatMatrix& m);

Integer determinant(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Integer normal forms.

struct HermiteResult {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, H = U * M
};

// Row-style HNF: echelon, positive pivots, entries above each pivot reduced
// into [0, pivot), zero rows last.
HermiteResult hnf(const IntMatrix& m);

bool is_hnf(const IntMatrix& m);

// Saturated basis of {v in Z^cols : m v = 0}, one vector per row, in HNF.
IntMatrix integer_kernel(const IntMatrix& m);

// Elementary divisors d_1 | d_2 | ... (nonzero ones only).
IntVector smith_diagonal(const IntMatrix& m);

Integer gcd_over_basis(std::span<const Integer> values);
Integer gcd_over_basis(std::initializer_list<long> values);

// ---------------------------------------------------------------------------
// Lattices.

// Integer lattice stored as its row HNF basis, so equal lattices compare
// equal bit for bit.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  // Lattice generated by the rows of `generators`.
  static LatticeBasis span(const IntMatrix& generators);
  // Caller guarantees the rows are independent and already in HNF.
  static LatticeBasis from_hnf(IntMatrix basis);
  static LatticeBasis standard(std::size_t d);

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  // Rational coordinates of v with respect to the basis, if v is in the
  // rational span.
  std::optional<RatVector> coordinates(std::span<const Rational> v) const;
  std::optional<RatVector> coordinates(std::span<const Integer> v) const;
  bool contains(std::span<const Integer> v) const;

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

 private:
  IntMatrix basis_;
};

// Lattice with rational generators, stored as (1/denominator) * integer HNF.
class RationalLattice {
 public:
  static RationalLattice span(const RatMatrix& generators);
  std::size_t ambient_dim() const { return scaled_.ambient_dim(); }
  std::size_t rank() const { return scaled_.rank(); }
  RatMatrix basis() const;
  const Integer& denominator() const { return denominator_; }
  const LatticeBasis& scaled() const { return scaled_; }
  // Coordinates of a rational vector against basis(); nullopt if outside span.
  std::optional<RatVector> coordinates(std::span<const Rational> v) const;

  friend bool operator==(const RationalLattice&, const RationalLattice&) = default;

 private:
  Integer denominator_ = 1;
  LatticeBasis scaled_;
};

// Group index [sup : sub] as the product of elementary divisors of the
// coordinate matrix of sub in sup.
Integer snf_index(const LatticeBasis& sub, const LatticeBasis& sup);

// {y : <y, x> in Z for all x in the lattice}. Equals the rows of the inverse
// transpose of the basis matrix.
RationalLattice dual_lattice(const LatticeBasis& lattice);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace quadlag
