#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "cslab/field.hpp"
#include "cslab/group_map.hpp"

namespace cslab {

// Normalization constants, kept as expressions of pi so nothing drifts.
inline double pi_sq() { return std::numbers::pi * std::numbers::pi; }
inline double inv_16pi2() { return 1.0 / (16.0 * pi_sq()); }
inline double inv_48pi2() { return 1.0 / (48.0 * pi_sq()); }
inline double inv_8pi2() { return 1.0 / (8.0 * pi_sq()); }
inline double inv_24pi2() { return 1.0 / (24.0 * pi_sq()); }

/// A connection d + omega in a chosen frame.
template <class S> struct Connection {
  FormField<S> omega; // degree 1, shape n x n
  std::string frame_tag;
};

template <class S> Connection<S> make_connection(FormField<S> omega, std::string frame_tag = {}) {
  if (omega.shape().degree != 1 || omega.shape().rows != omega.shape().cols)
    throw std::invalid_argument("Connection: omega must be a square degree-1 field");
  return Connection<S>{std::move(omega), std::move(frame_tag)};
}

/// Curvature 2-form Omega = d omega + omega^2.
template <class S> FormField<S> curvature(const Connection<S>& c, const DiffSpec& spec) {
  const FormField<S> dw = exterior_derivative(c.omega, spec);
  return linear_combine(S(1), dw, S(1), wedge(c.omega, c.omega));
}

namespace detail {
template <class S> constexpr double cs_normalization() { return 0.0; }
template <> inline double cs_normalization<double>() { return -inv_16pi2(); }
template <> inline double cs_normalization<Complex>() { return -inv_8pi2(); }

/// Shared assembly of the Chern-Simons 3-form:
///   norm * tr(omega d omega + 2/3 omega^3),
/// evaluated together with the equivalent norm * tr(omega Omega - 1/3 omega^3)
/// as a pointwise cross-check (they must agree to 1e-9).
template <class S> FormField<S> cs_generic(const Connection<S>& c, const DiffSpec& spec) {
  const FormField<S> omega = c.omega;
  const FieldShape osh = omega.shape();
  FieldShape sh{osh.dim, 3, 1, 1};
  const S norm = S(cs_normalization<S>());
  const FormField<S> dw = exterior_derivative(omega, spec);

  auto value = [omega, dw, norm, sh](const Point& x) {
    const Form<S> w = omega.value(x);
    const Form<S> dwx = dw.value(x);
    const Form<S> w2 = wedge(w, w);
    const Form<S> w3 = wedge(w2, w);
    const Form<S> t_wdw = trace(wedge(w, dwx));
    const Form<S> t_w3 = trace(w3);
    Form<S> primary = linear_combine(norm, t_wdw, norm * S(2.0 / 3.0), t_w3);
    // alternate description through the curvature
    const Form<S> omega2 = linear_combine(S(1), dwx, S(1), w2);
    const Form<S> t_wOmega = trace(wedge(w, omega2));
    const Form<S> variant = linear_combine(norm, t_wOmega, norm * S(-1.0 / 3.0), t_w3);
    if (max_abs_diff(primary, variant) > 1e-9)
      throw std::runtime_error("cs_form: the two descriptions of the form disagree beyond 1e-9");
    return primary;
  };

  if (omega.has_analytic() && spec.backend == DiffSpec::Analytic) {
    FormField<S> tree = scaled(
        linear_combine(S(1), trace(wedge(omega, dw)), S(2.0 / 3.0),
                       trace(wedge(wedge(omega, omega), omega))),
        norm);
    auto chan = [tree](int axis) { return tree.partial(axis); };
    return FormField<S>::make_analytic(sh, std::move(value), std::move(chan));
  }
  return FormField<S>::make(sh, std::move(value));
}
} // namespace detail

/// Chern-Simons 3-form of a real connection: -1/16pi^2 tr(w dw + 2/3 w^3).
inline FormField<double> cs_form(const Connection<double>& c, const DiffSpec& spec) {
  return detail::cs_generic<double>(c, spec);
}

/// Complex Chern-Simons 3-form: -1/8pi^2 tr_C(w dw + 2/3 w^3).
inline FormField<Complex> cs_form_complex(const Connection<Complex>& c, const DiffSpec& spec) {
  return detail::cs_generic<Complex>(c, spec);
}

/// First Pontryagin 4-form -1/16pi^2 tr(Omega^2); equals d(cs_form).
template <class S> FormField<S> pontryagin(const Connection<S>& c, const DiffSpec& spec) {
  const FormField<S> omega2 = curvature(c, spec);
  return scaled(trace(wedge(omega2, omega2)), S(-inv_16pi2()));
}

/// omega' = a^{-1} omega a + a^{-1} da.
template <class S> Connection<S> gauge_transform(const Connection<S>& c, const GroupMapField<S>& a) {
  if (c.omega.shape().rows != a.n) throw std::invalid_argument("gauge_transform: shape mismatch");
  const FormField<S> omega = c.omega;
  auto g = a.g;
  auto dg = a.dg;
  const FieldShape sh = omega.shape();
  auto value = [omega, g, dg, sh](const Point& x) {
    const Matrix<S> ax = g(x);
    const Matrix<S> ainv = inverse(ax);
    const auto dax = dg(x);
    const Form<S> w = omega.value(x);
    Form<S> out(sh.dim, 1, sh.rows, sh.cols);
    for (int s = 0; s < sh.dim; ++s) out.coeff(s) = ainv * w.coeff(s) * ax + ainv * dax[size_t(s)];
    return out;
  };
  return Connection<S>{FormField<S>::make(sh, std::move(value)), c.frame_tag + "'"};
}

/// Residual of the gauge-change identity for the Chern-Simons form:
///   cs(w') - cs(w) - 1/48pi^2 tr((a^{-1}da)^3) - 1/16pi^2 d tr(da a^{-1} w);
/// identically zero as a 3-form. (The sign of the exact term is forced by
/// the coordinate conventions of wedge and d used throughout; the w = 0
/// special case cs(a^{-1}da) = 1/48pi^2 tr((a^{-1}da)^3) anchors the cubic
/// term.)
inline FormField<double> gauge_change_defect(const Connection<double>& c, const GroupMapField<double>& a,
                                             const DiffSpec& spec) {
  const Connection<double> transformed = gauge_transform(c, a);
  const FormField<double> cs1 = cs_form(transformed, spec);
  const FormField<double> cs0 = cs_form(c, spec);
  const FormField<double> mu = maurer_cartan(a);
  const FormField<double> cubic = trace(wedge(wedge(mu, mu), mu));
  const FormField<double> exact =
      exterior_derivative(trace(wedge(right_log_differential(a), c.omega)), spec);
  FormField<double> defect = linear_combine(1.0, cs1, -1.0, cs0);
  defect = linear_combine(1.0, defect, -inv_48pi2(), cubic);
  defect = linear_combine(1.0, defect, -inv_16pi2(), exact);
  return defect;
}

/// Residual of the Maurer-Cartan structure equation (flatness of g^{-1}dg).
/// For the left logarithmic differential and the coordinate conventions used
/// here it reads d mu + mu^2 = 0.
template <class S> FormField<S> structure_equation_defect(const GroupMapField<S>& g, const DiffSpec& spec) {
  const FormField<S> mu = maurer_cartan(g);
  return linear_combine(S(1), exterior_derivative(mu, spec), S(1), wedge(mu, mu));
}

/// Connection on a direct sum written in block form [[w1, A], [B, w2]].
template <class S> struct BlockConnection {
  FormField<S> omega1, omega2; // n1 x n1, n2 x n2
  FormField<S> a, b;           // n1 x n2, n2 x n1
};

template <class S> void validate_blocks(const BlockConnection<S>& b) {
  const int n1 = b.omega1.shape().rows, n2 = b.omega2.shape().rows;
  const int d = b.omega1.shape().dim;
  auto expect = [d](const FieldShape& sh, int r, int c, const char* what) {
    if (sh.dim != d || sh.degree != 1 || sh.rows != r || sh.cols != c)
      throw std::invalid_argument(std::string("BlockConnection: bad shape for ") + what);
  };
  expect(b.omega1.shape(), n1, n1, "omega1");
  expect(b.omega2.shape(), n2, n2, "omega2");
  expect(b.a.shape(), n1, n2, "A");
  expect(b.b.shape(), n2, n1, "B");
}

/// Assembled (n1+n2) x (n1+n2) connection form.
template <class S> Connection<S> block_sum(const BlockConnection<S>& blocks) {
  validate_blocks(blocks);
  const int n1 = blocks.omega1.shape().rows, n2 = blocks.omega2.shape().rows;
  const int d = blocks.omega1.shape().dim;
  FieldShape sh{d, 1, n1 + n2, n1 + n2};
  auto value = [blocks, n1, n2, d, sh](const Point& x) {
    const Form<S> w1 = blocks.omega1.value(x), w2 = blocks.omega2.value(x);
    const Form<S> A = blocks.a.value(x), B = blocks.b.value(x);
    Form<S> out(d, 1, n1 + n2, n1 + n2);
    for (int s = 0; s < d; ++s) {
      auto& m = out.coeff(s);
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) m(i, j) = w1.coeff(s)(i, j);
      for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) m(n1 + i, n1 + j) = w2.coeff(s)(i, j);
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) m(i, n1 + j) = A.coeff(s)(i, j);
      for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n1; ++j) m(n1 + i, j) = B.coeff(s)(i, j);
    }
    return out;
  };
  if (blocks.omega1.has_analytic() && blocks.omega2.has_analytic() && blocks.a.has_analytic() &&
      blocks.b.has_analytic()) {
    auto chan = [blocks](int axis) {
      BlockConnection<S> db{blocks.omega1.partial(axis), blocks.omega2.partial(axis),
                            blocks.a.partial(axis), blocks.b.partial(axis)};
      return block_sum(db).omega;
    };
    return Connection<S>{FormField<S>::make_analytic(sh, std::move(value), std::move(chan)), "block"};
  }
  return Connection<S>{FormField<S>::make(sh, std::move(value)), "block"};
}

/// Off-diagonal curvature blocks:
///   Omega12 = dA + w1 A + A w2,  Omega21 = dB + B w1 + w2 B.
template <class S>
std::pair<FormField<S>, FormField<S>> off_diagonal_curvature(const BlockConnection<S>& blocks,
                                                             const DiffSpec& spec) {
  validate_blocks(blocks);
  FormField<S> om12 = exterior_derivative(blocks.a, spec);
  om12 = linear_combine(S(1), om12, S(1), wedge(blocks.omega1, blocks.a));
  om12 = linear_combine(S(1), om12, S(1), wedge(blocks.a, blocks.omega2));
  FormField<S> om21 = exterior_derivative(blocks.b, spec);
  om21 = linear_combine(S(1), om21, S(1), wedge(blocks.b, blocks.omega1));
  om21 = linear_combine(S(1), om21, S(1), wedge(blocks.omega2, blocks.b));
  return {om12, om21};
}

/// Residual of the block additivity identity,
///   cs(block) - cs(w1) - cs(w2) + norm (tr[A Omega21] + tr[B Omega12]),
/// identically zero with no constraint on the blocks. Additivity of the
/// invariant is the Omega12 = Omega21 = 0 corollary.
template <class S> FormField<S> block_cs_defect(const BlockConnection<S>& blocks, const DiffSpec& spec) {
  validate_blocks(blocks);
  const Connection<S> whole = block_sum(blocks);
  const FormField<S> cs_whole = detail::cs_generic<S>(whole, spec);
  const FormField<S> cs1 = detail::cs_generic<S>(Connection<S>{blocks.omega1, "1"}, spec);
  const FormField<S> cs2 = detail::cs_generic<S>(Connection<S>{blocks.omega2, "2"}, spec);
  const auto [om12, om21] = off_diagonal_curvature(blocks, spec);
  const S norm = S(-detail::cs_normalization<S>()); // +1/16pi^2 real, +1/8pi^2 complex
  FormField<S> defect = linear_combine(S(1), cs_whole, S(-1), cs1);
  defect = linear_combine(S(1), defect, S(-1), cs2);
  defect = linear_combine(S(1), defect, norm, trace(wedge(blocks.a, om21)));
  defect = linear_combine(S(1), defect, norm, trace(wedge(blocks.b, om12)));
  return defect;
}

/// omega (+) 0_k: the stable extension by a trivial connection in the
/// extending frame.
template <class S> Connection<S> stable_extend(const Connection<S>& c, int extra_rank) {
  if (extra_rank < 0) throw std::invalid_argument("stable_extend: negative rank");
  if (extra_rank == 0) return c;
  const int n = c.omega.shape().rows, d = c.omega.shape().dim;
  BlockConnection<S> blocks{
      c.omega,
      zero_field<S>({d, 1, extra_rank, extra_rank}),
      zero_field<S>({d, 1, n, extra_rank}),
      zero_field<S>({d, 1, extra_rank, n}),
  };
  Connection<S> out = block_sum(blocks);
  out.frame_tag = c.frame_tag + "+0";
  return out;
}

/// Per-cycle stand-in for the residue class modulo integral forms.
struct ModZValue {
  double raw = 0.0;
  double reduced = 0.0; // in [-1/2, 1/2)
  long long nearest_int = 0;
};

inline ModZValue reduce_mod_Z(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("reduce_mod_Z: non-finite input");
  ModZValue v;
  v.raw = x;
  v.nearest_int = (long long)std::floor(x + 0.5);
  v.reduced = x - double(v.nearest_int);
  return v;
}

} // namespace cslab
