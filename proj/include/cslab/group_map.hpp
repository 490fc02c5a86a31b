#pragma once

#include "cslab/chart.hpp"
#include "cslab/field.hpp"

namespace cslab {

/// A smooth family of invertible matrices over a chart, with a mandatory
/// analytic first-derivative channel (finite differences are never the
/// default for group-valued maps; all built-in maps have closed-form
/// derivatives).
template <class S> struct GroupMapField {
  int dim = 0; // chart dimension
  int n = 0;   // matrix size
  std::function<Matrix<S>(const Point&)> g;
  std::function<std::vector<Matrix<S>>(const Point&)> dg; // one matrix per axis
};

/// mu = g^{-1} dg as a degree-1 matrix form field; coefficient on axis s is
/// g(x)^{-1} * d_s g(x).
template <class S> FormField<S> maurer_cartan(const GroupMapField<S>& G) {
  if (!G.dg) throw std::runtime_error("maurer_cartan: analytic derivative channel missing");
  FieldShape sh{G.dim, 1, G.n, G.n};
  auto g = G.g;
  auto dg = G.dg;
  const int dim = G.dim, n = G.n;
  auto value = [g, dg, dim, n](const Point& x) {
    const Matrix<S> gx = g(x);
    const auto dgx = dg(x);
    Form<S> out(dim, 1, n, n);
    for (int s = 0; s < dim; ++s) out.coeff(s) = solve(gx, dgx[size_t(s)]);
    return out;
  };
  return FormField<S>::make(sh, std::move(value));
}

/// dg g^{-1} as a degree-1 field (the other logarithmic differential),
/// used by the gauge-change identity.
template <class S> FormField<S> right_log_differential(const GroupMapField<S>& G) {
  if (!G.dg) throw std::runtime_error("right_log_differential: analytic derivative channel missing");
  FieldShape sh{G.dim, 1, G.n, G.n};
  auto g = G.g;
  auto dg = G.dg;
  const int dim = G.dim, n = G.n;
  auto value = [g, dg, dim, n](const Point& x) {
    const Matrix<S> ginv = inverse(g(x));
    const auto dgx = dg(x);
    Form<S> out(dim, 1, n, n);
    for (int s = 0; s < dim; ++s) out.coeff(s) = dgx[size_t(s)] * ginv;
    return out;
  };
  return FormField<S>::make(sh, std::move(value));
}

/// Matrix exponential by scaling and squaring with a plain Taylor series;
/// the matrices here are tiny and well-scaled.
template <class S> Matrix<S> matrix_exp(const Matrix<S>& a) {
  if (!a.square()) throw std::invalid_argument("matrix_exp: non-square matrix");
  const int n = a.rows();
  int squarings = 0;
  double norm = a.max_abs();
  Matrix<S> b = a;
  while (norm > 0.5) {
    b *= S(0.5);
    norm *= 0.5;
    ++squarings;
  }
  Matrix<S> result = Matrix<S>::identity(n);
  Matrix<S> term = Matrix<S>::identity(n);
  for (int k = 1; k <= 20; ++k) {
    term = term * b;
    term *= S(1.0 / k);
    result += term;
    if (term.max_abs() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

template <class S> Matrix<S> scaled_matrix(Matrix<S> a, const S& c) {
  a *= c;
  return a;
}

/// Group map x -> exp(f(x) G0) for a scalar analytic f and fixed generator
/// G0; since G0 commutes with the exponential, dg_s = G0 g d_s f.
template <class S>
GroupMapField<S> one_parameter_group_map(int dim, const Matrix<S>& generator, const TrigPoly<S>& f) {
  GroupMapField<S> G;
  G.dim = dim;
  G.n = generator.rows();
  auto gen = generator;
  G.g = [gen, f](const Point& x) { return matrix_exp(scaled_matrix(gen, f.eval(x))); };
  G.dg = [gen, f, dim](const Point& x) {
    const Matrix<S> gx = matrix_exp(scaled_matrix(gen, f.eval(x)));
    std::vector<Matrix<S>> out;
    out.reserve(size_t(dim));
    for (int s = 0; s < dim; ++s) {
      Matrix<S> m = gen * gx;
      m *= f.partial(s).eval(x);
      out.push_back(std::move(m));
    }
    return out;
  };
  return G;
}

/// Polar retraction Phi_s(A) = (A A^T)^{-s/2} A for invertible real A.
/// Phi_0 = A; Phi_1 is the orthogonal polar factor.
Matrix<double> polar_retract(const Matrix<double>& a, double s);

/// Cyclic Jacobi eigendecomposition of a symmetric matrix: returns Q and the
/// eigenvalues with B = Q diag(lambda) Q^T. Tolerance 1e-13 on off-diagonals,
/// capped at 100 sweeps.
void jacobi_symmetric_eig(Matrix<double> b, Matrix<double>& q, std::vector<double>& lambda);

} // namespace cslab
