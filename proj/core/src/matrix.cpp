#include "btsurf/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "btsurf/error.hpp"

namespace btsurf {

using ff::RatFunc;

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFunc(1);
  return m;
}

Matrix Matrix::diagonal(const std::vector<RatFunc>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::parse(std::string_view text) {
  std::vector<std::vector<RatFunc>> rows;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    std::string_view row = text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
    std::vector<RatFunc> entries;
    std::size_t s = 0;
    for (;;) {
      const std::size_t comma = row.find(',', s);
      entries.push_back(RatFunc::parse(row.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s)));
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    rows.push_back(std::move(entries));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw InputError("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product: dimension mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RatFunc& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const RatFunc& y = b(k, j);
        if (!y.is_zero()) out(i, j) += x * y;
      }
    }
  return out;
}

Matrix Matrix::scaled(const RatFunc& s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

void Matrix::swap_columns(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

RatFunc Matrix::determinant() const {
  if (!square()) throw InputError("determinant of non-square matrix");
  Matrix m = *this;
  const std::size_t n = rows_;
  RatFunc det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return RatFunc();
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    const RatFunc inv = m(k, k).inverse();
    for (std::size_t r = k + 1; r < n; ++r) {
      if (m(r, k).is_zero()) continue;
      const RatFunc f = m(r, k) * inv;
      for (std::size_t c = k; c < n; ++c)
        if (!m(k, c).is_zero()) m(r, c) -= f * m(k, c);
    }
  }
  return det;
}

RatFunc Matrix::trace() const {
  RatFunc s;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

Matrix Matrix::inverse() const {
  if (!square()) throw InputError("inverse of non-square matrix");
  const std::size_t n = rows_;
  Matrix m = *this;
  Matrix inv = identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) throw InputError("matrix is singular");
    m.swap_rows(p, k);
    inv.swap_rows(p, k);
    const RatFunc pinv = m(k, k).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      if (!m(k, c).is_zero()) m(k, c) *= pinv;
      if (!inv(k, c).is_zero()) inv(k, c) *= pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || m(r, k).is_zero()) continue;
      const RatFunc f = m(r, k);
      for (std::size_t c = 0; c < n; ++c) {
        if (!m(k, c).is_zero()) m(r, c) -= f * m(k, c);
        if (!inv(k, c).is_zero()) inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ", ";
      os << m(r, c);
    }
  }
  return os;
}

}  // namespace btsurf
