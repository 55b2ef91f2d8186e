#pragma once

#include <string>
#include <vector>

#include "entroscope/intpoly.hpp"

namespace entroscope {

/// Dense integer matrix, row-major storage.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  // Throws DomainError on ragged input; `cols` is used when rows is empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix diagonal(const IntVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  std::vector<IntVector> to_rows() const;
  std::vector<IntVector> to_columns() const;

  IntMatrix transpose() const;
  // Columns [c0, c1) and the block rows [r0, r1) x cols [c0, c1).
  IntMatrix columns(std::size_t c0, std::size_t c1) const;
  IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& x);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Int& c, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector a_;
};

// [a | b], same row count.
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix pow(const IntMatrix& a, unsigned k);
// Fraction-free Gaussian elimination.
Int determinant(const IntMatrix& a);
// det(tI - A), monic of degree n (Faddeev-LeVerrier, exact over Z).
IntPoly charpoly(const IntMatrix& a);
// p(A) by Horner.
IntMatrix eval_poly(const IntPoly& p, const IntMatrix& a);

}  // namespace entroscope
