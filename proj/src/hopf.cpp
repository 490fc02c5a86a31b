#include "cslab/hopf.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace cslab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
} // namespace

ScalarWithGradient from_trig_poly(const TrigPoly<double>& f) {
  ScalarWithGradient s;
  s.dim = f.dim();
  std::vector<TrigPoly<double>> grads;
  grads.reserve(size_t(f.dim()));
  for (int a = 0; a < f.dim(); ++a) grads.push_back(f.partial(a));
  s.value = [f](const Point& x) { return f.eval(x); };
  s.gradient = [grads](const Point& x) {
    std::vector<double> g(grads.size());
    for (std::size_t a = 0; a < grads.size(); ++a) g[a] = grads[a].eval(x);
    return g;
  };
  return s;
}

FormField<double> scalar_field(const ScalarWithGradient& f) {
  FieldShape sh{f.dim, 0, 1, 1};
  auto value = [f](const Point& x) {
    Form<double> out(f.dim, 0, 1, 1);
    out.coeff(0)(0, 0) = f.value(x);
    return out;
  };
  auto partial = [f, sh](int axis) {
    auto pval = [f, axis, sh](const Point& x) {
      Form<double> out(sh.dim, 0, 1, 1);
      out.coeff(0)(0, 0) = f.gradient(x)[size_t(axis)];
      return out;
    };
    return FormField<double>::make(sh, std::move(pval));
  };
  return FormField<double>::make_analytic(sh, std::move(value), std::move(partial));
}

Quaternion hopf_point(const Point& x) {
  const double ce = std::cos(x[0]), se = std::sin(x[0]);
  return {ce * std::cos(x[1]), ce * std::sin(x[1]), se * std::cos(x[2]), se * std::sin(x[2])};
}

std::array<Quaternion, 3> hopf_partials(const Point& x) {
  const double ce = std::cos(x[0]), se = std::sin(x[0]);
  const double c1 = std::cos(x[1]), s1 = std::sin(x[1]);
  const double c2 = std::cos(x[2]), s2 = std::sin(x[2]);
  return {
      Quaternion{-se * c1, -se * s1, ce * c2, ce * s2},
      Quaternion{-ce * s1, ce * c1, 0.0, 0.0},
      Quaternion{0.0, 0.0, -se * s2, se * c2},
  };
}

Chart hopf_chart() {
  Chart c;
  c.dim = 3;
  c.domain = {Interval{0.0, std::numbers::pi / 2.0}, Interval{0.0, two_pi}, Interval{0.0, two_pi}};
  c.periodic = {false, true, true};
  c.orientation_sign = -1; // calibrated: (I,J,K) positively oriented
  Embedding e;
  e.ambient_dim = 4;
  e.value = [](const Point& x) {
    const Quaternion q = hopf_point(x);
    return Point{q.a, q.b, q.c, q.d};
  };
  e.jacobian = [](const Point& x) {
    const auto dq = hopf_partials(x);
    Matrix<double> J(4, 3);
    for (int s = 0; s < 3; ++s) {
      J(0, s) = dq[size_t(s)].a;
      J(1, s) = dq[size_t(s)].b;
      J(2, s) = dq[size_t(s)].c;
      J(3, s) = dq[size_t(s)].d;
    }
    return J;
  };
  c.embedding = std::move(e);
  return c;
}

Matrix<double> left_invariant_frame_ambient(const Point& x) {
  const Quaternion q = hopf_point(x);
  const Quaternion cols[3] = {quat_mul(q, Quaternion::i()), quat_mul(q, Quaternion::j()),
                              quat_mul(q, Quaternion::k())};
  Matrix<double> m(4, 3);
  for (int j = 0; j < 3; ++j) {
    m(0, j) = cols[j].a;
    m(1, j) = cols[j].b;
    m(2, j) = cols[j].c;
    m(3, j) = cols[j].d;
  }
  return m;
}

Matrix<double> left_invariant_frame_chart(const Point& x) {
  // I = d_xi1 - d_xi2
  // J = cos(phi) d_eta + tan(eta) sin(phi) d_xi1 + cot(eta) sin(phi) d_xi2
  // K = -sin(phi) d_eta + tan(eta) cos(phi) d_xi1 + cot(eta) cos(phi) d_xi2
  // with phi = xi1 - xi2.
  const double eta = x[0], phi = x[1] - x[2];
  const double t = std::tan(eta), ct = 1.0 / t;
  const double cp = std::cos(phi), sp = std::sin(phi);
  Matrix<double> m(3, 3);
  m(0, 0) = 0.0;
  m(1, 0) = 1.0;
  m(2, 0) = -1.0;
  m(0, 1) = cp;
  m(1, 1) = t * sp;
  m(2, 1) = ct * sp;
  m(0, 2) = -sp;
  m(1, 2) = t * cp;
  m(2, 2) = ct * cp;
  return m;
}

FormField<double> round_volume_form() {
  // -sin(eta)cos(eta) = -sin(2 eta)/2 on the single top tuple
  Term<double> t;
  t.coeff = -0.5;
  t.factors.resize(3);
  t.factors[0] = Factor{Factor::Sin, 0, 2.0, 0.0};
  TrigPoly<double> c(3, {t});
  return analytic_field<double>({3, 3, 1, 1}, {{c}});
}

double outward_volume_coefficient(const Point& x) {
  const Quaternion q = hopf_point(x);
  const auto dq = hopf_partials(x);
  Matrix<double> m(4, 4);
  const Quaternion cols[4] = {q, dq[0], dq[1], dq[2]};
  for (int j = 0; j < 4; ++j) {
    m(0, j) = cols[j].a;
    m(1, j) = cols[j].b;
    m(2, j) = cols[j].c;
    m(3, j) = cols[j].d;
  }
  return det(m);
}

Cycle3 lens_cycle(const LensParams& params) {
  if (params.p < 1) throw std::invalid_argument("lens_cycle: p must be >= 1");
  if (std::gcd(params.q1, params.p) != 1 || std::gcd(params.q2, params.p) != 1)
    throw std::invalid_argument("lens_cycle: rotation parameters must be coprime to p");
  Cycle3 c = full_cycle(hopf_chart());
  c.restriction[1] = Interval{0.0, two_pi / params.p};
  c.multiplicity = 1.0;
  return c;
}

// ---------------------------------------------------------------------------
// Group maps

namespace {
template <class S, class Rep>
GroupMapField<S> sphere_map(int n, Rep rep) {
  GroupMapField<S> G;
  G.dim = 3;
  G.n = n;
  G.g = [rep](const Point& x) { return rep.at(hopf_point(x)); };
  G.dg = [rep](const Point& x) {
    const Quaternion q = hopf_point(x);
    const auto dq = hopf_partials(x);
    std::vector<Matrix<S>> out;
    out.reserve(3);
    for (int s = 0; s < 3; ++s) out.push_back(rep.differential(q, dq[size_t(s)]));
    return out;
  };
  return G;
}

struct RealRep {
  Matrix<double> at(const Quaternion& q) const { return rep_real(q); }
  Matrix<double> differential(const Quaternion&, const Quaternion& dq) const { return rep_real(dq); }
};
struct RealRepInverse {
  Matrix<double> at(const Quaternion& q) const { return rep_real(quat_conj(q)); }
  Matrix<double> differential(const Quaternion&, const Quaternion& dq) const {
    return rep_real(quat_conj(dq));
  }
};
struct ComplexRep {
  Matrix<Complex> at(const Quaternion& q) const { return rep_complex(q); }
  Matrix<Complex> differential(const Quaternion&, const Quaternion& dq) const { return rep_complex(dq); }
};
struct AdjointRep {
  Matrix<double> at(const Quaternion& q) const { return adjoint(q); }
  Matrix<double> differential(const Quaternion& q, const Quaternion& dq) const {
    return adjoint_differential(q, dq);
  }
};
} // namespace

GroupMapField<double> sphere_right_rep_real() { return sphere_map<double>(4, RealRep{}); }
GroupMapField<double> sphere_right_rep_real_inverse() { return sphere_map<double>(4, RealRepInverse{}); }
GroupMapField<Complex> sphere_right_rep_complex() { return sphere_map<Complex>(2, ComplexRep{}); }
GroupMapField<double> sphere_adjoint() { return sphere_map<double>(3, AdjointRep{}); }

GroupMapField<double> so2_gauge_map(const ScalarWithGradient& theta, int total_rank) {
  if (total_rank < 3) throw std::invalid_argument("so2_gauge_map: rank must be >= 3");
  GroupMapField<double> G;
  G.dim = theta.dim;
  G.n = total_rank;
  const int n = total_rank;
  G.g = [theta, n](const Point& x) {
    const double t = theta.value(x);
    Matrix<double> a = Matrix<double>::identity(n);
    a(1, 1) = std::cos(t);
    a(1, 2) = -std::sin(t);
    a(2, 1) = std::sin(t);
    a(2, 2) = std::cos(t);
    return a;
  };
  G.dg = [theta, n](const Point& x) {
    const double t = theta.value(x);
    const auto grad = theta.gradient(x);
    std::vector<Matrix<double>> out;
    out.reserve(grad.size());
    for (double gs : grad) {
      Matrix<double> m(n, n);
      m(1, 1) = -std::sin(t) * gs;
      m(1, 2) = -std::cos(t) * gs;
      m(2, 1) = std::cos(t) * gs;
      m(2, 2) = -std::sin(t) * gs;
      out.push_back(std::move(m));
    }
    return out;
  };
  return G;
}

ScalarWithGradient ambient_scalar_on_sphere(const TrigPoly<double>& ambient) {
  if (ambient.dim() != 4) throw std::invalid_argument("ambient_scalar_on_sphere: expected 4 variables");
  ScalarWithGradient s;
  s.dim = 3;
  std::vector<TrigPoly<double>> grads;
  for (int a = 0; a < 4; ++a) grads.push_back(ambient.partial(a));
  s.value = [ambient](const Point& x) {
    const Quaternion q = hopf_point(x);
    return ambient.eval({q.a, q.b, q.c, q.d});
  };
  s.gradient = [grads](const Point& x) {
    const Quaternion q = hopf_point(x);
    const auto dq = hopf_partials(x);
    const Point amb{q.a, q.b, q.c, q.d};
    std::vector<double> g(3, 0.0);
    for (int s_ = 0; s_ < 3; ++s_) {
      const Quaternion& v = dq[size_t(s_)];
      const double comps[4] = {v.a, v.b, v.c, v.d};
      double acc = 0.0;
      for (int m = 0; m < 4; ++m) acc += grads[size_t(m)].eval(amb) * comps[m];
      g[size_t(s_)] = acc;
    }
    return g;
  };
  return s;
}

ScalarWithGradient random_sphere_scalar(std::mt19937_64& rng, int max_terms) {
  RandomFieldOptions opt;
  opt.max_terms = max_terms;
  opt.max_freq = 2;
  const TrigPoly<double> ambient = random_trig_poly<double>(rng, 4, opt);
  return ambient_scalar_on_sphere(ambient);
}

} // namespace cslab
