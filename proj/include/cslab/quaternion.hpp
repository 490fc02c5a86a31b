#pragma once

#include <cmath>

#include "cslab/matrix.hpp"

namespace cslab {

/// A quaternion a + bi + cj + dk, identified with (a,b,c,d) in R^4.
struct Quaternion {
  double a = 0, b = 0, c = 0, d = 0;

  static Quaternion one() { return {1, 0, 0, 0}; }
  static Quaternion i() { return {0, 1, 0, 0}; }
  static Quaternion j() { return {0, 0, 1, 0}; }
  static Quaternion k() { return {0, 0, 0, 1}; }

  double norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }
  bool unit_norm(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }

  Quaternion operator+(const Quaternion& q) const { return {a + q.a, b + q.b, c + q.c, d + q.d}; }
  Quaternion operator-(const Quaternion& q) const { return {a - q.a, b - q.b, c - q.c, d - q.d}; }
  Quaternion operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
};

/// Hamilton product.
Quaternion quat_mul(const Quaternion& p, const Quaternion& q);
Quaternion quat_conj(const Quaternion& q);
Quaternion quat_inverse(const Quaternion& q);

/// exp of a purely imaginary quaternion times t: axis-angle closed form.
Quaternion quat_exp_imaginary(const Quaternion& v, double t);

/// Matrix of v -> v * conj(q) on R^4 in the basis (1, i, j, k). For |q| = 1
/// this lands in SO(4).
Matrix<double> rep_real(const Quaternion& q);

/// Matrix of v -> v * conj(q) on C^2 in the basis (1, j), identifying
/// z1 + z2 j with (z1, z2). For |q| = 1 this lands in SU(2).
Matrix<Complex> rep_complex(const Quaternion& q);

/// Rotation induced on span{i,j,k} by v -> q v q^{-1}; requires |q| = 1.
Matrix<double> adjoint(const Quaternion& q);

/// Derivative of the adjoint along a curve through q with velocity qdot:
/// v -> qdot v conj(q) + q v conj(qdot), restricted to span{i,j,k}.
Matrix<double> adjoint_differential(const Quaternion& q, const Quaternion& qdot);

enum class ImaginaryUnit { I, J, K };

/// The Lie-algebra matrices of the double cover on span{i,j,k}; exact
/// integer entries (0, +-2).
Matrix<double> ad_matrix(ImaginaryUnit v);

} // namespace cslab
