// Minimal dense/sparse linear algebra for strategy vectors and payoff
// matrices. Everything is double precision and row-major; sizes here are
// small enough (<= a few thousand) that cache-friendly loops beat any
// external dependency.
#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace omd {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(const Vec& a) { return dot(a, a); }

inline double norm2(const Vec& a) { return std::sqrt(squared_norm(a)); }

inline double distance2(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// a += scale * b
inline void axpy(Vec& a, double scale, const Vec& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<int>(rows.size()),
             rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int i = 0;
    for (const auto& r : rows) {
      assert(static_cast<int>(r.size()) == m.cols_);
      int j = 0;
      for (double v : r) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix scaled(double s) const {
    Matrix m = *this;
    for (double& v : m.data_) v *= s;
    return m;
  }

  Matrix negated() const { return scaled(-1.0); }

  // y = M x
  Vec multiply(const Vec& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    Vec y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      const double* row = &data_[static_cast<std::size_t>(i) * cols_];
      double s = 0.0;
      for (int j = 0; j < cols_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }

  // y = M^T x
  Vec multiply_transposed(const Vec& x) const {
    assert(static_cast<int>(x.size()) == rows_);
    Vec y(cols_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      const double* row = &data_[static_cast<std::size_t>(i) * cols_];
      const double xi = x[i];
      if (xi == 0.0) continue;
      for (int j = 0; j < cols_; ++j) y[j] += row[j] * xi;
    }
    return y;
  }

  // x^T M y
  double bilinear(const Vec& x, const Vec& y) const { return dot(x, multiply(y)); }

  double max_abs_entry() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (double v : data_) n += (v != 0.0);
    return n;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Compressed-sparse-row view used to speed up payoff matvecs of the
// sequence-form games, whose matrices are >99% zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_dense(const Matrix& m) {
    SparseMatrix s;
    s.rows_ = m.rows();
    s.cols_ = m.cols();
    s.row_ptr_.assign(m.rows() + 1, 0);
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        if (m(i, j) != 0.0) {
          s.col_.push_back(j);
          s.val_.push_back(m(i, j));
        }
      }
      s.row_ptr_[i + 1] = static_cast<int>(s.col_.size());
    }
    return s;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Vec multiply(const Vec& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    Vec y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += val_[k] * x[col_[k]];
      y[i] = s;
    }
    return y;
  }

  Vec multiply_transposed(const Vec& x) const {
    assert(static_cast<int>(x.size()) == rows_);
    Vec y(cols_, 0.0);
    for (int i = 0; i < rows_; ++i) {
      const double xi = x[i];
      if (xi == 0.0) continue;
      for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) y[col_[k]] += val_[k] * xi;
    }
    return y;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_;
  std::vector<double> val_;
};

}  // namespace omd
