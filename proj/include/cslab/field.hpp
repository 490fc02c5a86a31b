#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "cslab/analytic.hpp"
#include "cslab/form.hpp"

namespace cslab {

struct FieldShape {
  int dim = 0;    // chart dimension
  int degree = 0; // form degree
  int rows = 1, cols = 1;

  bool operator==(const FieldShape&) const = default;
};

/// Differentiation settings for exterior derivatives and other numerical
/// derivative chains. Central differences are Richardson-extrapolated by
/// default (effective O(h^4)); the analytic backend uses the field's own
/// partial channel and fails if it is absent.
struct DiffSpec {
  enum Backend { Analytic, CentralFD } backend = CentralFD;
  double step = 1e-5;
  bool richardson = true;

  void validate() const {
    if (step < 1e-8 || step > 1e-2) throw std::invalid_argument("DiffSpec: step outside [1e-8, 1e-2]");
  }
};

inline DiffSpec analytic_spec() { return DiffSpec{DiffSpec::Analytic, 1e-5, true}; }
inline DiffSpec fd_spec(double step = 1e-5, bool richardson = true) {
  return DiffSpec{DiffSpec::CentralFD, step, richardson};
}

template <class S> class FormField;

template <class S> struct FieldImpl {
  FieldShape shape;
  std::function<Form<S>(const Point&)> value;
  // Analytic channel: exact partial-derivative field along one axis.
  // Null when the field only supports finite differences.
  std::function<FormField<S>(int)> partial;
};

/// A chart-indexed smooth family of Form values. Evaluation functions are
/// pure and re-entrant by contract; fields are cheap shared handles.
template <class S> class FormField {
public:
  FormField() = default;
  explicit FormField(std::shared_ptr<const FieldImpl<S>> impl) : impl_(std::move(impl)) {}

  static FormField make(FieldShape shape, std::function<Form<S>(const Point&)> value) {
    auto impl = std::make_shared<FieldImpl<S>>();
    impl->shape = shape;
    impl->value = std::move(value);
    return FormField(std::move(impl));
  }

  static FormField make_analytic(FieldShape shape, std::function<Form<S>(const Point&)> value,
                                 std::function<FormField<S>(int)> partial) {
    auto impl = std::make_shared<FieldImpl<S>>();
    impl->shape = shape;
    impl->value = std::move(value);
    impl->partial = std::move(partial);
    return FormField(std::move(impl));
  }

  bool valid() const { return impl_ != nullptr; }
  const FieldShape& shape() const { return impl_->shape; }
  bool has_analytic() const { return impl_ && bool(impl_->partial); }

  Form<S> value(const Point& x) const { return impl_->value(x); }

  FormField partial(int axis) const {
    if (!has_analytic()) throw std::runtime_error("FormField: analytic derivative channel missing");
    return impl_->partial(axis);
  }

private:
  std::shared_ptr<const FieldImpl<S>> impl_;
};

// ---------------------------------------------------------------------------
// Constructors from analytic scalar data

/// FormField whose coefficient entries are TrigPoly scalars. The analytic
/// channel differentiates entries exactly, to any order.
template <class S>
FormField<S> analytic_field(FieldShape shape, std::vector<std::vector<TrigPoly<S>>> entries) {
  const auto& tuples = index_tuples(shape.dim, shape.degree);
  if (entries.size() != tuples.size()) throw std::invalid_argument("analytic_field: coefficient count mismatch");
  auto value = [shape, entries](const Point& x) {
    Form<S> f(shape.dim, shape.degree, shape.rows, shape.cols);
    for (int r = 0; r < f.coeff_count(); ++r)
      for (int i = 0; i < shape.rows; ++i)
        for (int j = 0; j < shape.cols; ++j)
          f.coeff(r)(i, j) = entries[size_t(r)][size_t(i * shape.cols + j)].eval(x);
    return f;
  };
  auto partial = [shape, entries](int axis) {
    std::vector<std::vector<TrigPoly<S>>> de(entries.size());
    for (std::size_t r = 0; r < entries.size(); ++r) {
      de[r].reserve(entries[r].size());
      for (const auto& e : entries[r]) de[r].push_back(e.partial(axis));
    }
    return analytic_field<S>(shape, std::move(de));
  };
  return FormField<S>::make_analytic(shape, std::move(value), std::move(partial));
}

template <class S> FormField<S> constant_field(int dim, int degree, Form<S> f0) {
  FieldShape sh{dim, degree, f0.rows(), f0.cols()};
  auto zero_partial = [sh](int) {
    return constant_field<S>(sh.dim, sh.degree, Form<S>(sh.dim, sh.degree, sh.rows, sh.cols));
  };
  return FormField<S>::make_analytic(sh, [f0](const Point&) { return f0; }, zero_partial);
}

template <class S> FormField<S> zero_field(FieldShape sh) {
  return constant_field<S>(sh.dim, sh.degree, Form<S>(sh.dim, sh.degree, sh.rows, sh.cols));
}

// ---------------------------------------------------------------------------
// Pointwise combinators. Each one propagates the analytic channel via the
// Leibniz rule when every operand carries it.

template <class S> FormField<S> wedge(const FormField<S>& u, const FormField<S>& v) {
  if (u.shape().dim != v.shape().dim) throw std::invalid_argument("wedge: chart dimension mismatch");
  if (u.shape().cols != v.shape().rows) throw std::invalid_argument("wedge: matrix shape mismatch");
  FieldShape sh{u.shape().dim, u.shape().degree + v.shape().degree, u.shape().rows, v.shape().cols};
  auto value = [u, v](const Point& x) { return wedge(u.value(x), v.value(x)); };
  if (u.has_analytic() && v.has_analytic()) {
    auto partial = [u, v](int axis) {
      return linear_combine(S(1), wedge(u.partial(axis), v), S(1), wedge(u, v.partial(axis)));
    };
    return FormField<S>::make_analytic(sh, std::move(value), std::move(partial));
  }
  return FormField<S>::make(sh, std::move(value));
}

template <class S>
FormField<S> linear_combine(const S& c1, const FormField<S>& u, const S& c2, const FormField<S>& v) {
  if (!(u.shape() == v.shape())) throw std::invalid_argument("linear_combine: shape mismatch");
  FieldShape sh = u.shape();
  auto value = [c1, u, c2, v](const Point& x) { return linear_combine(c1, u.value(x), c2, v.value(x)); };
  if (u.has_analytic() && v.has_analytic()) {
    auto partial = [c1, u, c2, v](int axis) {
      return linear_combine(c1, u.partial(axis), c2, v.partial(axis));
    };
    return FormField<S>::make_analytic(sh, std::move(value), std::move(partial));
  }
  return FormField<S>::make(sh, std::move(value));
}

template <class S> FormField<S> scaled(const FormField<S>& u, const S& c) {
  FieldShape sh = u.shape();
  auto value = [u, c](const Point& x) { return scaled(u.value(x), c); };
  if (u.has_analytic()) {
    auto partial = [u, c](int axis) { return scaled(u.partial(axis), c); };
    return FormField<S>::make_analytic(sh, std::move(value), std::move(partial));
  }
  return FormField<S>::make(sh, std::move(value));
}

template <class S> FormField<S> trace(const FormField<S>& u) {
  if (u.shape().rows != u.shape().cols) throw std::invalid_argument("trace: non-square coefficients");
  FieldShape sh{u.shape().dim, u.shape().degree, 1, 1};
  auto value = [u](const Point& x) { return trace(u.value(x)); };
  if (u.has_analytic()) {
    auto partial = [u](int axis) { return trace(u.partial(axis)); };
    return FormField<S>::make_analytic(sh, std::move(value), std::move(partial));
  }
  return FormField<S>::make(sh, std::move(value));
}

inline FormField<double> realify(const FormField<Complex>& u) {
  if (u.shape().rows != u.shape().cols) throw std::invalid_argument("realify: non-square coefficients");
  FieldShape sh{u.shape().dim, u.shape().degree, 2 * u.shape().rows, 2 * u.shape().cols};
  auto value = [u](const Point& x) { return realify(u.value(x)); };
  if (u.has_analytic()) {
    auto partial = [u](int axis) { return realify(u.partial(axis)); };
    return FormField<double>::make_analytic(sh, std::move(value), std::move(partial));
  }
  return FormField<double>::make(sh, std::move(value));
}

inline FormField<Complex> complexify(const FormField<double>& u) {
  FieldShape sh = {u.shape().dim, u.shape().degree, u.shape().rows, u.shape().cols};
  auto value = [u](const Point& x) { return complexify(u.value(x)); };
  if (u.has_analytic()) {
    auto partial = [u](int axis) { return complexify(u.partial(axis)); };
    return FormField<Complex>::make_analytic(sh, std::move(value), std::move(partial));
  }
  return FormField<Complex>::make(sh, std::move(value));
}

// ---------------------------------------------------------------------------
// Finite differences and the exterior derivative

template <class S> Form<S> fd_partial(const FormField<S>& F, int axis, const Point& x, const DiffSpec& spec) {
  spec.validate();
  auto central = [&](double h) {
    Point xp = x, xm = x;
    xp[size_t(axis)] += h;
    xm[size_t(axis)] -= h;
    return linear_combine(S(1.0 / (2.0 * h)), F.value(xp), S(-1.0 / (2.0 * h)), F.value(xm));
  };
  if (!spec.richardson) return central(spec.step);
  Form<S> d1 = central(spec.step);
  Form<S> d2 = central(spec.step / 2.0);
  return linear_combine(S(4.0 / 3.0), d2, S(-1.0 / 3.0), d1);
}

/// Partial-derivative values along every axis, per the requested backend.
template <class S>
std::vector<Form<S>> partials_at(const FormField<S>& F, const Point& x, const DiffSpec& spec) {
  const int d = F.shape().dim;
  std::vector<Form<S>> out;
  out.reserve(size_t(d));
  if (spec.backend == DiffSpec::Analytic) {
    for (int s = 0; s < d; ++s) out.push_back(F.partial(s).value(x));
  } else {
    for (int s = 0; s < d; ++s) out.push_back(fd_partial(F, s, x, spec));
  }
  return out;
}

namespace detail {
template <class S>
Form<S> assemble_exterior_derivative(const FieldShape& sh, const std::vector<Form<S>>& parts) {
  Form<S> out(sh.dim, sh.degree + 1, sh.rows, sh.cols);
  const auto& big = index_tuples(sh.dim, sh.degree + 1);
  for (std::size_t r = 0; r < big.size(); ++r) {
    const IndexTuple& K = big[r];
    for (std::size_t t = 0; t < K.size(); ++t) {
      IndexTuple rest = K;
      rest.erase(rest.begin() + long(t));
      const Matrix<S>& m = parts[size_t(K[t])].coeff(rest);
      if (t % 2 == 0)
        out.coeff(int(r)) += m;
      else
        out.coeff(int(r)) -= m;
    }
  }
  return out;
}
} // namespace detail

/// Exterior derivative. With the analytic backend the result keeps an
/// analytic channel (d and coefficient partials commute), so repeated
/// derivatives of analytic fields stay exact.
template <class S> FormField<S> exterior_derivative(const FormField<S>& F, const DiffSpec& spec) {
  spec.validate();
  const FieldShape in = F.shape();
  if (in.degree >= in.dim) {
    // the derivative of a top-degree form is the zero form one degree up
    return zero_field<S>({in.dim, in.degree + 1, in.rows, in.cols});
  }
  FieldShape sh{in.dim, in.degree + 1, in.rows, in.cols};
  if (spec.backend == DiffSpec::Analytic) {
    if (!F.has_analytic()) throw std::runtime_error("exterior_derivative: analytic channel missing");
    std::vector<FormField<S>> parts;
    parts.reserve(size_t(in.dim));
    for (int s = 0; s < in.dim; ++s) parts.push_back(F.partial(s));
    auto value = [in, parts](const Point& x) {
      std::vector<Form<S>> vals;
      vals.reserve(parts.size());
      for (const auto& p : parts) vals.push_back(p.value(x));
      return detail::assemble_exterior_derivative<S>(in, vals);
    };
    // partials commute with the coefficient assembly: partial_s(dF) = d(partial_s F)
    auto chan = [F, spec](int axis) { return exterior_derivative(F.partial(axis), spec); };
    return FormField<S>::make_analytic(sh, std::move(value), std::move(chan));
  }
  auto value = [F, in, spec](const Point& x) {
    auto parts = partials_at(F, x, spec);
    return detail::assemble_exterior_derivative<S>(in, parts);
  };
  return FormField<S>::make(sh, std::move(value));
}

// ---------------------------------------------------------------------------
// Chart maps and pullback

/// A smooth map between charts with a Jacobian channel.
struct ChartMap {
  int dim_in = 0, dim_out = 0;
  std::function<Point(const Point&)> value;
  std::function<Matrix<double>(const Point&)> jacobian; // dim_out x dim_in
};

inline ChartMap fd_jacobian_map(int dim_in, int dim_out, std::function<Point(const Point&)> value,
                                double step = 1e-6) {
  ChartMap m;
  m.dim_in = dim_in;
  m.dim_out = dim_out;
  m.value = value;
  m.jacobian = [dim_in, dim_out, value, step](const Point& x) {
    Matrix<double> J(dim_out, dim_in);
    for (int s = 0; s < dim_in; ++s) {
      Point xp = x, xm = x;
      xp[size_t(s)] += step;
      xm[size_t(s)] -= step;
      const Point fp = value(xp), fm = value(xm);
      for (int i = 0; i < dim_out; ++i) J(i, s) = (fp[size_t(i)] - fm[size_t(i)]) / (2.0 * step);
    }
    return J;
  };
  return m;
}

/// (phi^* F)(x) on vectors v_i equals F(phi(x)) on J_phi(x) v_i.
template <class S> FormField<S> pullback(const FormField<S>& F, const ChartMap& phi) {
  if (F.shape().dim != phi.dim_out) throw std::invalid_argument("pullback: dimension mismatch");
  FieldShape sh{phi.dim_in, F.shape().degree, F.shape().rows, F.shape().cols};
  auto value = [F, phi, sh](const Point& x) {
    const Form<S> fy = F.value(phi.value(x));
    const Matrix<double> J = phi.jacobian(x);
    Form<S> out(sh.dim, sh.degree, sh.rows, sh.cols);
    const int p = sh.degree;
    const auto& ti = index_tuples(sh.dim, p);
    const auto& tj = index_tuples(F.shape().dim, p);
    for (std::size_t a = 0; a < ti.size(); ++a) {
      for (std::size_t b = 0; b < tj.size(); ++b) {
        Matrix<double> minor(p, p);
        for (int r = 0; r < p; ++r)
          for (int c = 0; c < p; ++c) minor(r, c) = J(tj[b][size_t(r)], ti[a][size_t(c)]);
        const double dmin = det(minor);
        if (dmin == 0.0) continue;
        out.coeff(int(a)) += fy.coeff(int(b)) * S(dmin);
      }
    }
    return out;
  };
  return FormField<S>::make(sh, std::move(value));
}

} // namespace cslab
