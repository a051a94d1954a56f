#ifndef BTSURF_MATRIX_HPP_
#define BTSURF_MATRIX_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "btsurf/funcfield.hpp"

namespace btsurf {

/* Dense row-major matrix over Q(t). */
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<ff::RatFunc>& d);
  /* Rows separated by ';', entries by ','; e.g. "t, 0; 0, t^-1". */
  static Matrix parse(std::string_view text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  ff::RatFunc& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const ff::RatFunc& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix scaled(const ff::RatFunc& s) const;
  bool operator==(const Matrix& o) const;

  ff::RatFunc determinant() const;
  ff::RatFunc trace() const;
  /* Throws InputError if singular. */
  Matrix inverse() const;

  void swap_columns(std::size_t i, std::size_t j);
  void swap_rows(std::size_t i, std::size_t j);

  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<ff::RatFunc> a_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace btsurf

#endif  // BTSURF_MATRIX_HPP_
