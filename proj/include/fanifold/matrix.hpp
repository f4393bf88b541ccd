// Exact dense integer matrices over arbitrary-precision integers.
//
// Everything downstream (fans, quotients, gluing diagrams) is built on the
// two aliases below; no floating point appears anywhere in the library.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanifold {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Vec = std::vector<Int>;

/// Dense row-major integer matrix. Zero-row and zero-column shapes are legal
/// and show up constantly (rank-0 lattices, empty generator sets).
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative shape");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Mat from_rows(const std::vector<Vec>& rows, int cols) {
    Mat m(int(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (int(rows[i].size()) != cols) throw std::invalid_argument("Mat: ragged rows");
      for (int j = 0; j < cols; ++j) m.at(int(i), j) = rows[i][j];
    }
    return m;
  }

  static Mat from_init(std::initializer_list<std::initializer_list<int>> init) {
    std::vector<Vec> rows;
    std::size_t width = 0;
    for (const auto& r : init) {
      Vec v;
      for (int x : r) v.push_back(x);
      width = v.size();
      rows.push_back(std::move(v));
    }
    return from_rows(rows, int(width));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  Vec row(int r) const {
    Vec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
  }

  std::vector<Vec> row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (int i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat operator*(const Mat& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Int& aik = at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += aik * rhs.at(k, j);
      }
    return out;
  }

  /// Column-vector action x ↦ M·x.
  Vec apply(const Vec& x) const {
    if (int(x.size()) != cols_) throw std::invalid_argument("Mat: shape mismatch in apply");
    Vec out(rows_);
    for (int i = 0; i < rows_; ++i) {
      Int s = 0;
      for (int j = 0; j < cols_; ++j) s += at(i, j) * x[j];
      out[i] = s;
    }
    return out;
  }

  /// Rows of `below` appended under this matrix.
  Mat stacked(const Mat& below) const {
    if (rows_ > 0 && below.rows_ > 0 && cols_ != below.cols_)
      throw std::invalid_argument("Mat: shape mismatch in stack");
    int cols = rows_ > 0 ? cols_ : below.cols_;
    Mat out(rows_ + below.rows_, cols);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows_; ++i)
      for (int j = 0; j < below.cols_; ++j) out.at(rows_ + i, j) = below.at(i, j);
    return out;
  }

  bool is_zero() const {
    for (const Int& x : a_)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const Mat& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
  }
  bool operator!=(const Mat& rhs) const { return !(*this == rhs); }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
      os << (i ? "," : "") << "[";
      for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

inline std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

/// Fraction-free determinant (Bareiss). Square input.
inline Int det(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  int n = m.rows();
  if (n == 0) return 1;
  Mat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

inline bool is_unimodular(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

}  // namespace fanifold
