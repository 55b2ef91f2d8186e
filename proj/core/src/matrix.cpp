#include "entroscope/matrix.hpp"

#include "entroscope/errors.hpp"

namespace entroscope {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DomainError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<IntVector> IntMatrix::to_rows() const {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::vector<IntVector> IntMatrix::to_columns() const {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::columns(std::size_t c0, std::size_t c1) const { return block(0, rows_, c0, c1); }

IntMatrix IntMatrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  IntMatrix b(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
  return b;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols_ != x.size()) throw DomainError("matrix-vector dimension mismatch");
  IntVector y(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
  return y;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

IntMatrix operator*(const Int& s, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& x : c.a_) x *= s;
  return c;
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ",";
      s += (*this)(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DomainError("hconcat row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix pow(const IntMatrix& a, unsigned k) {
  if (!a.is_square()) throw DomainError("power of a non-square matrix");
  IntMatrix r = IntMatrix::identity(a.rows());
  IntMatrix b = a;
  while (k) {
    if (k & 1U) r = r * b;
    k >>= 1U;
    if (k) b = b * b;
  }
  return r;
}

Int determinant(const IntMatrix& a) {
  if (!a.is_square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntPoly charpoly(const IntMatrix& a) {
  if (!a.is_square()) throw DomainError("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  IntVector c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    IntMatrix am = a * m;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    Int q = -tr;
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), k);
    c[n - k] = q;
  }
  return IntPoly(std::move(c));
}

IntMatrix eval_poly(const IntPoly& p, const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix r(n, n);
  for (int i = p.degree(); i >= 0; --i) {
    r = r * a;
    const Int& ci = p.coeffs()[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n; ++j) r(j, j) += ci;
  }
  return r;
}

}  // namespace entroscope
