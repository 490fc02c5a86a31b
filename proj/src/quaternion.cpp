#include "cslab/quaternion.hpp"

#include <stdexcept>

namespace cslab {

Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
  return {
      p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
      p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
      p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
      p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
  };
}

Quaternion quat_conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }

Quaternion quat_inverse(const Quaternion& q) {
  const double n2 = q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
  if (n2 == 0.0) throw std::invalid_argument("quat_inverse: zero quaternion");
  return quat_conj(q) * (1.0 / n2);
}

Quaternion quat_exp_imaginary(const Quaternion& v, double t) {
  if (std::abs(v.a) > 1e-14) throw std::invalid_argument("quat_exp_imaginary: quaternion not imaginary");
  const double n = std::sqrt(v.b * v.b + v.c * v.c + v.d * v.d);
  if (n == 0.0) return Quaternion::one();
  const double ang = n * t;
  const double s = std::sin(ang) / n;
  return {std::cos(ang), v.b * s, v.c * s, v.d * s};
}

Matrix<double> rep_real(const Quaternion& q) {
  // columns: conj(q), i conj(q), j conj(q), k conj(q) in the basis (1,i,j,k)
  const double a = q.a, b = q.b, c = q.c, d = q.d;
  return Matrix<double>(4, 4,
                        {
                            a, b, c, d,     //
                            -b, a, -d, c,   //
                            -c, d, a, -b,   //
                            -d, -c, b, a,   //
                        });
}

Matrix<Complex> rep_complex(const Quaternion& q) {
  const Complex w1(q.a, q.b), w2(q.c, q.d);
  Matrix<Complex> m(2, 2);
  m(0, 0) = std::conj(w1);
  m(0, 1) = std::conj(w2);
  m(1, 0) = -w2;
  m(1, 1) = w1;
  return m;
}

Matrix<double> adjoint(const Quaternion& q) {
  if (!q.unit_norm(1e-9)) throw std::invalid_argument("adjoint: quaternion is not unit-norm");
  const Quaternion cols[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  Matrix<double> m(3, 3);
  for (int j = 0; j < 3; ++j) {
    const Quaternion r = quat_mul(quat_mul(q, cols[j]), quat_conj(q));
    m(0, j) = r.b;
    m(1, j) = r.c;
    m(2, j) = r.d;
  }
  return m;
}

Matrix<double> adjoint_differential(const Quaternion& q, const Quaternion& qdot) {
  const Quaternion cols[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  Matrix<double> m(3, 3);
  for (int j = 0; j < 3; ++j) {
    const Quaternion r = quat_mul(quat_mul(qdot, cols[j]), quat_conj(q)) +
                         quat_mul(quat_mul(q, cols[j]), quat_conj(qdot));
    m(0, j) = r.b;
    m(1, j) = r.c;
    m(2, j) = r.d;
  }
  return m;
}

Matrix<double> ad_matrix(ImaginaryUnit v) {
  switch (v) {
    case ImaginaryUnit::I:
      return Matrix<double>(3, 3, {0, 0, 0, 0, 0, -2, 0, 2, 0});
    case ImaginaryUnit::J:
      return Matrix<double>(3, 3, {0, 0, 2, 0, 0, 0, -2, 0, 0});
    case ImaginaryUnit::K:
      return Matrix<double>(3, 3, {0, -2, 0, 2, 0, 0, 0, 0, 0});
  }
  throw std::invalid_argument("ad_matrix: bad unit");
}

} // namespace cslab
