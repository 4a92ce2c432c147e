// SPDX-License-Identifier: Apache-2.0
#pragma once

/// Exact scalar types and dense matrices used by every other module.
///
/// Rationals are always kept in canonical form (positive denominator,
/// coprime numerator and denominator). GMP's C++ classes maintain this
/// invariant for every arithmetic result; values built from a raw
/// numerator/denominator pair go through make_rational(), which
/// canonicalizes.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace micp {

using Integer = mpz_class;
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

/// Base class for all errors raised by the library. The message is the
/// contract: callers and tests match on it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q", "p", or an exact decimal such as "-1.25" or "3e-2".
Rational parse_rational(std::string_view text);

/// Canonical string form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Terminating decimal rendering, if one exists ("3/2" -> "1.5").
bool to_decimal(const Rational& q, std::string& out);

bool is_integer(const Rational& q);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Integer isqrt(const Integer& n);

/// Exact n-th root of a nonnegative rational when it is rational.
bool exact_root(const Rational& q, unsigned n, Rational& root);

Rational dot(const RationalVector& a, const RationalVector& b);
RationalVector to_rational(const IntegerVector& v);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error("matrix data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && data_.empty()) cols_ = r.size();
    if (r.size() != cols_) throw Error("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

RationalMatrix to_rational(const IntegerMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);
RationalVector multiply(const RationalMatrix& a, const RationalVector& x);
RationalMatrix transpose(const RationalMatrix& a);

Rational determinant(const RationalMatrix& a);
Integer determinant(const IntegerMatrix& a);
std::size_t rank(const RationalMatrix& a);

/// Throws Error("singular matrix").
RationalMatrix inverse(const RationalMatrix& a);

/// Basis of {x : a x = 0}; one vector per free column of the RREF.
std::vector<RationalVector> nullspace(const RationalMatrix& a);

/// Some solution of a x = b, if the system is consistent.
bool solve(const RationalMatrix& a, const RationalVector& b, RationalVector& x);

}  // namespace micp
