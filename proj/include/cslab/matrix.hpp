#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace cslab {

using Real = double;
using Complex = std::complex<double>;

template <class S> struct scalar_traits {
  static double abs(const S& x) { return std::abs(x); }
  static S conj(const S& x) { return x; }
  static double real(const S& x) { return x; }
};
template <> struct scalar_traits<Complex> {
  static double abs(const Complex& x) { return std::abs(x); }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static double real(const Complex& x) { return x.real(); }
};

/// Dense row-major matrix over double or std::complex<double>.
/// Sizes in this project stay tiny (n <= 8), so everything is direct.
template <class S> class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, S(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative size");
  }
  Matrix(int rows, int cols, std::vector<S> entries) : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != size_t(rows) * cols) throw std::invalid_argument("Matrix: entry count mismatch");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(const S& c) {
    for (auto& x : a_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& c) { return a *= c; }
  friend Matrix operator*(const S& c, Matrix a) { return a *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S aik = a(i, k);
        if (aik == S(0)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  S trace() const {
    if (!square()) throw std::invalid_argument("Matrix: trace of non-square matrix");
    S t(0);
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix conj_transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = scalar_traits<S>::conj((*this)(i, j));
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& x : a_) m = std::max(m, scalar_traits<S>::abs(x));
    return m;
  }

  friend double max_abs_diff(const Matrix& a, const Matrix& b) {
    Matrix d = a;
    d -= b;
    return d.max_abs();
  }

private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  int rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

/// Solves A X = B by LU with partial pivoting. Throws on (near-)singular A.
template <class S> Matrix<S> solve(Matrix<S> a, Matrix<S> b) {
  if (!a.square() || a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const int n = a.rows(), m = b.cols();
  double scale = std::max(a.max_abs(), 1e-300);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = scalar_traits<S>::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = scalar_traits<S>::abs(a(i, k));
      if (v > best) { best = v; piv = i; }
    }
    if (best < 1e-13 * scale) throw std::runtime_error("solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (int j = 0; j < m; ++j) std::swap(b(k, j), b(piv, j));
    }
    for (int i = k + 1; i < n; ++i) {
      S f = a(i, k) / a(k, k);
      if (f == S(0)) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (int j = 0; j < m; ++j) b(i, j) -= f * b(k, j);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    for (int j = 0; j < m; ++j) {
      S s = b(k, j);
      for (int i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
      b(k, j) = s / a(k, k);
    }
  }
  return b;
}

template <class S> Matrix<S> inverse(const Matrix<S>& a) {
  return solve(a, Matrix<S>::identity(a.rows()));
}

/// Determinant by LU, used for the small minors of form evaluation (n <= 4 in practice).
inline double det(Matrix<double> a) {
  if (!a.square()) throw std::invalid_argument("det: non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  double sign = 1.0, d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) { best = std::abs(a(i, k)); piv = i; }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    d *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      double f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return sign * d;
}

/// Real image of a complex matrix: each entry a+bi becomes the 2x2 block [[a,-b],[b,a]].
inline Matrix<double> realify(const Matrix<Complex>& a) {
  Matrix<double> r(2 * a.rows(), 2 * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Complex z = a(i, j);
      r(2 * i, 2 * j) = z.real();
      r(2 * i, 2 * j + 1) = -z.imag();
      r(2 * i + 1, 2 * j) = z.imag();
      r(2 * i + 1, 2 * j + 1) = z.real();
    }
  return r;
}

inline Matrix<Complex> complexify(const Matrix<double>& a) {
  Matrix<Complex> r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = Complex(a(i, j), 0.0);
  return r;
}

} // namespace cslab
