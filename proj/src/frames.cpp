#include "cslab/frames.hpp"

#include <cmath>

namespace cslab {

namespace {

Matrix<double> fd_matrix_partial(const std::function<Matrix<double>(const Point&)>& f, int axis,
                                 const Point& x, const DiffSpec& spec) {
  auto central = [&](double h) {
    Point xp = x, xm = x;
    xp[size_t(axis)] += h;
    xm[size_t(axis)] -= h;
    Matrix<double> d = f(xp) - f(xm);
    d *= 1.0 / (2.0 * h);
    return d;
  };
  if (!spec.richardson) return central(spec.step);
  Matrix<double> d1 = central(spec.step);
  Matrix<double> d2 = central(spec.step / 2.0);
  d2 *= 4.0 / 3.0;
  d1 *= 1.0 / 3.0;
  return d2 - d1;
}

std::vector<Matrix<double>> metric_partials(const MetricField& g, const Point& x, const DiffSpec& spec,
                                            int dim) {
  if (g.dg) return g.dg(x);
  if (spec.backend == DiffSpec::Analytic)
    throw std::runtime_error("levi_civita_form: metric has no analytic channel");
  std::vector<Matrix<double>> out;
  out.reserve(size_t(dim));
  for (int s = 0; s < dim; ++s) out.push_back(fd_matrix_partial(g.g, s, x, spec));
  return out;
}

/// Generalized cross product in R^4: the vector c with c . v = det(v,t1,t2,t3).
std::vector<double> normal4(const Matrix<double>& tangents) {
  std::vector<double> c(4, 0.0);
  for (int alpha = 0; alpha < 4; ++alpha) {
    Matrix<double> m(4, 4);
    for (int r = 0; r < 4; ++r) {
      m(r, 0) = (r == alpha) ? 1.0 : 0.0;
      for (int j = 0; j < 3; ++j) m(r, j + 1) = tangents(r, j);
    }
    c[size_t(alpha)] = det(m);
  }
  double n = 0.0;
  for (double v : c) n += v * v;
  n = std::sqrt(n);
  if (n < 1e-12) throw std::runtime_error("hypersurface frame: degenerate tangent space");
  for (double& v : c) v /= n;
  return c;
}

Point interior_sample(const Chart& chart, int i) {
  Point x(size_t(chart.dim));
  // a few fixed interior points, away from the box boundary
  const double fr[5] = {0.31, 0.57, 0.73, 0.44, 0.62};
  for (int a = 0; a < chart.dim; ++a) {
    const Interval& box = chart.domain[size_t(a)];
    x[size_t(a)] = box.lo + box.length() * fr[(i + a) % 5];
  }
  return x;
}

} // namespace

MetricField constant_metric(int n, Matrix<double> g0) {
  MetricField m;
  m.n = n;
  m.g = [g0](const Point&) { return g0; };
  m.dg = [n](const Point& x) {
    return std::vector<Matrix<double>>(x.size(), Matrix<double>(n, n));
  };
  return m;
}

MetricField conformal_scale(const MetricField& base, const ScalarWithGradient& f, double t) {
  MetricField m;
  m.n = base.n;
  auto bg = base.g;
  m.g = [bg, f, t](const Point& x) {
    Matrix<double> g = bg(x);
    g *= std::exp(2.0 * t * f.value(x));
    return g;
  };
  if (base.dg) {
    auto bdg = base.dg;
    m.dg = [bg, bdg, f, t](const Point& x) {
      const double scale = std::exp(2.0 * t * f.value(x));
      const auto grad = f.gradient(x);
      const Matrix<double> g = bg(x);
      auto parts = bdg(x);
      for (std::size_t s = 0; s < parts.size(); ++s) {
        parts[s] *= scale;
        Matrix<double> extra = g;
        extra *= 2.0 * t * grad[s] * scale;
        parts[s] += extra;
      }
      return parts;
    };
  }
  return m;
}

Frame to_chart_frame(const Frame& frame, const Chart& chart) {
  if (!frame.ambient) return frame;
  if (!chart.embedding) throw std::invalid_argument("to_chart_frame: chart has no embedding");
  Frame out;
  out.rank = frame.rank;
  out.ambient = false;
  auto comps = frame.comps;
  auto jac = chart.embedding->jacobian;
  out.comps = [comps, jac](const Point& x) {
    const Matrix<double> J = jac(x);
    const Matrix<double> Jt = J.transpose();
    return solve(Jt * J, Jt * comps(x));
  };
  return out;
}

Matrix<double> gram_schmidt(const Matrix<double>& cols) {
  const int n = cols.rows(), k = cols.cols();
  Matrix<double> q = cols;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < j; ++i) {
      double dot = 0.0;
      for (int r = 0; r < n; ++r) dot += q(r, i) * q(r, j);
      for (int r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
    }
    double norm = 0.0;
    for (int r = 0; r < n; ++r) norm += q(r, j) * q(r, j);
    norm = std::sqrt(norm);
    if (norm < 1e-10) throw std::runtime_error("gram_schmidt: rank-deficient columns");
    for (int r = 0; r < n; ++r) q(r, j) /= norm;
  }
  return q;
}

Frame hopf_frame_chart() {
  Frame f;
  f.rank = 3;
  f.ambient = false;
  f.comps = [](const Point& x) { return left_invariant_frame_chart(x); };
  return f;
}

Frame hopf_frame_ambient() {
  Frame f;
  f.rank = 3;
  f.ambient = true;
  f.comps = [](const Point& x) { return left_invariant_frame_ambient(x); };
  return f;
}

FormField<double> levi_civita_form(const MetricField& g, const Frame& frame, const Chart& chart,
                                   const DiffSpec& spec) {
  spec.validate();
  const int d = chart.dim, n = g.n;
  if (frame.rank != n || n != d)
    throw std::invalid_argument("levi_civita_form: frame must span the tangent bundle (n = d)");
  const Frame cf = to_chart_frame(frame, chart);
  auto comps = cf.comps;
  MetricField metric = g;
  auto value = [comps, metric, spec, d, n](const Point& x) {
    const Matrix<double> E = comps(x);
    const Matrix<double> Einv = inverse(E);
    const Matrix<double> G = metric.g(x);
    const Matrix<double> Ginv = inverse(G);
    const auto dG = metric_partials(metric, x, spec, d);

    std::vector<Matrix<double>> dE;
    dE.reserve(size_t(d));
    for (int s = 0; s < d; ++s) dE.push_back(fd_matrix_partial(comps, s, x, spec));

    // directional derivatives of the metric along the frame
    std::vector<Matrix<double>> Eg(size_t(n), Matrix<double>(n, n));
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < d; ++s) {
        Matrix<double> m = dG[size_t(s)];
        m *= E(s, i);
        Eg[size_t(i)] += m;
      }

    // frame brackets, expressed back in the frame
    std::vector<std::vector<std::vector<double>>> c(size_t(n),
        std::vector<std::vector<double>>(size_t(n), std::vector<double>(size_t(n), 0.0)));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Matrix<double> br(d, 1);
        for (int s = 0; s < d; ++s) {
          double acc = 0.0;
          for (int t = 0; t < d; ++t) acc += E(t, i) * dE[size_t(t)](s, j) - E(t, j) * dE[size_t(t)](s, i);
          br(s, 0) = acc;
        }
        const Matrix<double> coords = Einv * br;
        for (int m = 0; m < n; ++m) {
          c[size_t(i)][size_t(j)][size_t(m)] = coords(m, 0);
          c[size_t(j)][size_t(i)][size_t(m)] = -coords(m, 0);
        }
      }

    auto g_bracket = [&](int i, int j, int k) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m) acc += c[size_t(i)][size_t(j)][size_t(m)] * G(m, k);
      return acc;
    };

    // Koszul: 2 g(nabla_{E_i} E_j, E_k)
    std::vector<Matrix<double>> gamma(size_t(n), Matrix<double>(n, n)); // gamma[i](k,j)
    for (int i = 0; i < n; ++i) {
      Matrix<double> rhs(n, n); // rhs(j,k)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          rhs(j, k) = Eg[size_t(i)](j, k) + Eg[size_t(j)](i, k) - Eg[size_t(k)](i, j) +
                      g_bracket(i, j, k) - g_bracket(i, k, j) - g_bracket(j, k, i);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) acc += Ginv(k, m) * rhs(j, m);
          gamma[size_t(i)](k, j) = 0.5 * acc;
        }
    }

    // omega(d_s) = sum_i Einv(i,s) omega(E_i)
    Form<double> out(d, 1, n, n);
    for (int s = 0; s < d; ++s)
      for (int i = 0; i < n; ++i) {
        Matrix<double> m = gamma[size_t(i)];
        m *= Einv(i, s);
        out.coeff(s) += m;
      }
    return out;
  };
  return FormField<double>::make({d, 1, n, n}, std::move(value));
}

FormField<double> induced_hypersurface_connection(const Chart& chart, const Frame& ambient_frame,
                                                  const DiffSpec& spec) {
  spec.validate();
  if (!chart.embedding) throw std::invalid_argument("induced_hypersurface_connection: chart has no embedding");
  const int d = chart.dim, n = ambient_frame.rank;
  const int N = chart.embedding->ambient_dim;
  if (!ambient_frame.ambient || n != d || N != d + 1)
    throw std::invalid_argument("induced_hypersurface_connection: expected an ambient tangent frame on a hypersurface");
  auto comps = ambient_frame.comps;
  auto jac = chart.embedding->jacobian;

  // tangency pre-check on interior sample points
  for (int sample = 0; sample < 5; ++sample) {
    const Point x = interior_sample(chart, sample);
    const auto nrm = normal4(jac(x));
    const Matrix<double> E = comps(x);
    for (int j = 0; j < n; ++j) {
      double dot = 0.0, len = 0.0;
      for (int r = 0; r < N; ++r) {
        dot += nrm[size_t(r)] * E(r, j);
        len += E(r, j) * E(r, j);
      }
      if (std::abs(dot) > 1e-8 * std::max(std::sqrt(len), 1e-12))
        throw std::invalid_argument("induced_hypersurface_connection: frame is not tangent to the image");
    }
  }

  auto value = [comps, jac, spec, d, n, N](const Point& x) {
    const Matrix<double> E = comps(x);
    const auto nrm = normal4(jac(x));
    Matrix<double> G(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int r = 0; r < N; ++r) acc += E(r, i) * E(r, j);
        G(i, j) = acc;
      }
    Form<double> out(d, 1, n, n);
    for (int s = 0; s < d; ++s) {
      const Matrix<double> dE = fd_matrix_partial(comps, s, x, spec);
      Matrix<double> M(n, n); // M(i,j) = <E_i, P D_s E_j>
      for (int j = 0; j < n; ++j) {
        double ndot = 0.0;
        for (int r = 0; r < N; ++r) ndot += nrm[size_t(r)] * dE(r, j);
        for (int i = 0; i < n; ++i) {
          double acc = 0.0;
          for (int r = 0; r < N; ++r) acc += E(r, i) * (dE(r, j) - ndot * nrm[size_t(r)]);
          M(i, j) = acc;
        }
      }
      out.coeff(s) = solve(G, M);
    }
    return out;
  };
  return FormField<double>::make({d, 1, n, n}, std::move(value));
}

FormField<double> koszul_conformal_variation(const ScalarWithGradient& f, const MetricField& g,
                                             const Frame& frame, const Chart& chart) {
  const int d = chart.dim, n = g.n;
  if (frame.rank != n || n != d)
    throw std::invalid_argument("koszul_conformal_variation: frame must span the tangent bundle");
  const Frame cf = to_chart_frame(frame, chart);
  auto comps = cf.comps;
  MetricField metric = g;
  auto value = [comps, metric, f, d, n](const Point& x) {
    const Matrix<double> E = comps(x);
    const Matrix<double> Einv = inverse(E);
    const Matrix<double> G = metric.g(x);
    const Matrix<double> Ginv = inverse(G);
    const auto grad = f.gradient(x);

    // directional derivatives E_i(f) and the gradient in frame components
    std::vector<double> Ef(size_t(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < d; ++s) Ef[size_t(i)] += E(s, i) * grad[size_t(s)];
    std::vector<double> gradf(size_t(n), 0.0);
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m) gradf[size_t(k)] += Ginv(k, m) * Ef[size_t(m)];

    std::vector<Matrix<double>> dot(size_t(n), Matrix<double>(n, n)); // dot[i](k,j)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double v = 0.0;
          if (k == j) v += Ef[size_t(i)];
          if (k == i) v += Ef[size_t(j)];
          v -= G(i, j) * gradf[size_t(k)];
          dot[size_t(i)](k, j) = v;
        }

    Form<double> out(d, 1, n, n);
    for (int s = 0; s < d; ++s)
      for (int i = 0; i < n; ++i) {
        Matrix<double> m = dot[size_t(i)];
        m *= Einv(i, s);
        out.coeff(s) += m;
      }
    return out;
  };
  return FormField<double>::make({d, 1, n, n}, std::move(value));
}

} // namespace cslab
