#pragma once

#include "cslab/chart.hpp"
#include "cslab/group_map.hpp"
#include "cslab/quaternion.hpp"

namespace cslab {

/// A scalar function with a closed-form gradient, the minimal analytic data
/// the geometric constructions need.
struct ScalarWithGradient {
  int dim = 0;
  std::function<double(const Point&)> value;
  std::function<std::vector<double>(const Point&)> gradient;
};

ScalarWithGradient from_trig_poly(const TrigPoly<double>& f);

/// The scalar function as a 0-form field with a one-level analytic channel.
FormField<double> scalar_field(const ScalarWithGradient& f);

// ---------------------------------------------------------------------------
// The 3-sphere in Hopf coordinates

/// (eta, xi1, xi2) in (0, pi/2) x [0, 2pi)^2, embedded as the unit quaternion
/// cos(eta) e^{i xi1} + sin(eta) e^{i xi2} j. The xi axes are periodic. The
/// orientation sign is calibrated once so that the left-invariant frame
/// (I, J, K) is positively oriented; in these coordinates that makes the
/// chart itself negatively oriented.
Chart hopf_chart();

Quaternion hopf_point(const Point& x);
std::array<Quaternion, 3> hopf_partials(const Point& x);

/// Global frame of left-invariant fields I_q = qi, J_q = qj, K_q = qk, as
/// ambient R^4 column vectors.
Matrix<double> left_invariant_frame_ambient(const Point& x);

/// The same frame in chart components (closed form; singular only at the
/// chart-boundary coordinate degeneracies).
Matrix<double> left_invariant_frame_chart(const Point& x);

/// Round volume form, normalized against the (I,J,K) orientation:
/// vol(I,J,K) = +1, i.e. coefficient -sin(eta)cos(eta) on d(eta,xi1,xi2).
FormField<double> round_volume_form();

/// Ambient-first-coordinate volume convention used for calibration tests:
/// vol(v1,v2,v3) = det(q, v1, v2, v3).
double outward_volume_coefficient(const Point& x);

// ---------------------------------------------------------------------------
// Lens spaces

struct LensParams {
  int p = 2, q1 = 1, q2 = 1;
};

/// Fundamental domain of the cyclic quotient as the slab xi1 in [0, 2pi/p):
/// the deck group acts by Hopf-angle translations, and gcd(q1, p) = 1 makes
/// the slab a fundamental domain. Throws if a rotation parameter shares a
/// factor with p (the action would not be free).
Cycle3 lens_cycle(const LensParams& params);

// ---------------------------------------------------------------------------
// Group-valued maps with closed-form derivatives

/// q -> matrix of v -> v conj(q) on R^4; lands in SO(4).
GroupMapField<double> sphere_right_rep_real();

/// q -> matrix of v -> v conj(q^{-1}); the section-style embedding with the
/// opposite orientation on the image.
GroupMapField<double> sphere_right_rep_real_inverse();

/// q -> matrix of v -> v conj(q) on C^2; lands in SU(2).
GroupMapField<Complex> sphere_right_rep_complex();

/// q -> rotation q v q^{-1} on span{i,j,k}; the 2:1 cover of SO(3).
GroupMapField<double> sphere_adjoint();

/// SO(3)-valued gauge map rotating the (J, K)-plane by the angle theta(x),
/// fixing the first frame direction.
GroupMapField<double> so2_gauge_map(const ScalarWithGradient& theta, int total_rank = 3);

/// A smooth scalar on the sphere: a trig polynomial in the ambient R^4
/// coordinates composed with the embedding (chart-coordinate expressions
/// would not descend through the coordinate degeneracies).
ScalarWithGradient ambient_scalar_on_sphere(const TrigPoly<double>& ambient);

/// Seeded smooth scalar on the sphere with bounded coefficients.
ScalarWithGradient random_sphere_scalar(std::mt19937_64& rng, int max_terms = 3);

} // namespace cslab
