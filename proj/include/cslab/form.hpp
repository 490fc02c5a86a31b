#pragma once

#include <cstdlib>
#include <utility>

#include "cslab/matrix.hpp"
#include "cslab/multi_index.hpp"

namespace cslab {

/// A degree-p exterior form at a point with k x k' matrix coefficients,
/// stored densely over the C(d,p) increasing index tuples of the base
/// directions {0..d-1}. Degree-0 values are plain matrices. A form whose
/// degree exceeds the base dimension is the zero form (it has no stored
/// coefficients).
///
/// Values are immutable in spirit: every operation returns a fresh form.
template <class S> class Form {
public:
  Form() = default;
  Form(int base_dim, int degree, int rows, int cols)
      : dim_(base_dim), degree_(degree), rows_(rows), cols_(cols) {
    if (base_dim < 0 || base_dim > kMaxDim) throw std::invalid_argument("Form: base dimension out of range");
    if (degree < 0) throw std::invalid_argument("Form: negative degree");
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("Form: non-positive matrix shape");
    coeffs_.assign(size_t(binomial(base_dim, degree)), Matrix<S>(rows, cols));
  }

  static Form scalar_zero(int base_dim, int degree) { return Form(base_dim, degree, 1, 1); }

  static Form constant(int base_dim, Matrix<S> m) {
    Form f(base_dim, 0, m.rows(), m.cols());
    f.coeffs_[0] = std::move(m);
    return f;
  }

  int base_dim() const { return dim_; }
  int degree() const { return degree_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int coeff_count() const { return int(coeffs_.size()); }

  Matrix<S>& coeff(int rank) { return coeffs_[size_t(rank)]; }
  const Matrix<S>& coeff(int rank) const { return coeffs_[size_t(rank)]; }
  Matrix<S>& coeff(const IndexTuple& t) { return coeffs_[size_t(tuple_rank(dim_, t))]; }
  const Matrix<S>& coeff(const IndexTuple& t) const { return coeffs_[size_t(tuple_rank(dim_, t))]; }

  double max_abs() const {
    double m = 0;
    for (const auto& c : coeffs_) m = std::max(m, c.max_abs());
    return m;
  }

  bool same_structure(const Form& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && rows_ == o.rows_ && cols_ == o.cols_;
  }

private:
  int dim_ = 0, degree_ = 0, rows_ = 1, cols_ = 1;
  std::vector<Matrix<S>> coeffs_;
};

/// Concatenation product: degree adds, matrix coefficients multiply, with
/// shuffle signs. A total degree beyond the base dimension yields the zero
/// form of that degree (it is zero as a form, so this is not an error).
template <class S> Form<S> wedge(const Form<S>& u, const Form<S>& v) {
  if (u.base_dim() != v.base_dim()) throw std::invalid_argument("wedge: base dimension mismatch");
  if (u.cols() != v.rows()) throw std::invalid_argument("wedge: matrix shape mismatch");
  const int d = u.base_dim(), p = u.degree(), q = v.degree();
  Form<S> out(d, p + q, u.rows(), v.cols());
  if (p + q > d) return out;
  const auto& ti = index_tuples(d, p);
  const auto& tj = index_tuples(d, q);
  for (std::size_t a = 0; a < ti.size(); ++a) {
    for (std::size_t b = 0; b < tj.size(); ++b) {
      if (!tuples_disjoint(ti[a], tj[b])) continue;
      const int sign = shuffle_sign(ti[a], tj[b]);
      Matrix<S> prod = u.coeff(int(a)) * v.coeff(int(b));
      if (sign < 0) prod *= S(-1);
      out.coeff(merge_tuples(ti[a], tj[b])) += prod;
    }
  }
  return out;
}

/// Coefficient-wise matrix trace; result has shape (1,1) and the same degree.
template <class S> Form<S> trace(const Form<S>& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("trace: non-square coefficients");
  Form<S> out(u.base_dim(), u.degree(), 1, 1);
  for (int r = 0; r < u.coeff_count(); ++r) out.coeff(r)(0, 0) = u.coeff(r).trace();
  return out;
}

template <class S> Form<S> linear_combine(const S& c1, const Form<S>& u, const S& c2, const Form<S>& v) {
  if (!u.same_structure(v)) throw std::invalid_argument("linear_combine: structure mismatch");
  Form<S> out(u.base_dim(), u.degree(), u.rows(), u.cols());
  for (int r = 0; r < u.coeff_count(); ++r) out.coeff(r) = u.coeff(r) * c1 + v.coeff(r) * c2;
  return out;
}

template <class S> Form<S> scaled(const Form<S>& u, const S& c) {
  Form<S> out = u;
  for (int r = 0; r < u.coeff_count(); ++r) out.coeff(r) *= c;
  return out;
}

/// Alternating multilinear evaluation: sum over increasing tuples of
/// coeff * det of the corresponding p x p minor of the vector matrix.
template <class S>
Matrix<S> eval_on_vectors(const Form<S>& u, const std::vector<std::vector<double>>& vectors) {
  const int d = u.base_dim(), p = u.degree();
  if (int(vectors.size()) != p) throw std::invalid_argument("eval_on_vectors: wrong vector count");
  for (const auto& v : vectors)
    if (int(v.size()) != d) throw std::invalid_argument("eval_on_vectors: wrong vector dimension");
  Matrix<S> acc(u.rows(), u.cols());
  const auto& tuples = index_tuples(d, p);
  for (std::size_t r = 0; r < tuples.size(); ++r) {
    Matrix<double> minor(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) minor(i, j) = vectors[size_t(j)][size_t(tuples[r][i])];
    const double dmin = det(minor);
    if (dmin == 0.0) continue;
    acc += u.coeff(int(r)) * S(dmin);
  }
  return acc;
}

template <class S> double max_abs_diff(const Form<S>& a, const Form<S>& b) {
  if (!a.same_structure(b)) throw std::invalid_argument("max_abs_diff: structure mismatch");
  double m = 0;
  for (int r = 0; r < a.coeff_count(); ++r) m = std::max(m, max_abs_diff(a.coeff(r), b.coeff(r)));
  return m;
}

inline Form<double> realify(const Form<Complex>& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("realify: non-square coefficients");
  Form<double> out(u.base_dim(), u.degree(), 2 * u.rows(), 2 * u.cols());
  for (int r = 0; r < u.coeff_count(); ++r) out.coeff(r) = realify(u.coeff(r));
  return out;
}

inline Form<Complex> complexify(const Form<double>& u) {
  Form<Complex> out(u.base_dim(), u.degree(), u.rows(), u.cols());
  for (int r = 0; r < u.coeff_count(); ++r) out.coeff(r) = complexify(u.coeff(r));
  return out;
}

} // namespace cslab
