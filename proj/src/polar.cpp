#include "cslab/group_map.hpp"

#include <cmath>
#include <stdexcept>

namespace cslab {

void jacobi_symmetric_eig(Matrix<double> b, Matrix<double>& q, std::vector<double>& lambda) {
  if (!b.square()) throw std::invalid_argument("jacobi_symmetric_eig: non-square matrix");
  const int n = b.rows();
  q = Matrix<double>::identity(n);
  const double scale = std::max(b.max_abs(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(b(i, j)));
    if (off <= 1e-13 * scale) {
      lambda.assign(size_t(n), 0.0);
      for (int i = 0; i < n; ++i) lambda[size_t(i)] = b(i, i);
      return;
    }
    for (int p = 0; p < n; ++p) {
      for (int r = p + 1; r < n; ++r) {
        if (std::abs(b(p, r)) <= 1e-18 * scale) continue;
        const double theta = 0.5 * std::atan2(2.0 * b(p, r), b(r, r) - b(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          const double bkp = b(k, p), bkr = b(k, r);
          b(k, p) = c * bkp - s * bkr;
          b(k, r) = s * bkp + c * bkr;
        }
        for (int k = 0; k < n; ++k) {
          const double bpk = b(p, k), brk = b(r, k);
          b(p, k) = c * bpk - s * brk;
          b(r, k) = s * bpk + c * brk;
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
    }
  }
  throw std::runtime_error("jacobi_symmetric_eig: no convergence within 100 sweeps");
}

Matrix<double> polar_retract(const Matrix<double>& a, double s) {
  if (!a.square()) throw std::invalid_argument("polar_retract: non-square matrix");
  const Matrix<double> b = a * a.transpose();
  Matrix<double> q;
  std::vector<double> lambda;
  jacobi_symmetric_eig(b, q, lambda);
  const int n = a.rows();
  double lmin = lambda.empty() ? 0.0 : lambda[0];
  for (double l : lambda) lmin = std::min(lmin, l);
  if (lmin <= 1e-14 * std::max(b.max_abs(), 1e-300))
    throw std::runtime_error("polar_retract: matrix is singular");
  Matrix<double> d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = std::pow(lambda[size_t(i)], -s / 2.0);
  return q * d * q.transpose() * a;
}

} // namespace cslab
