#pragma once

#include <array>
#include <functional>
#include <numeric>
#include <optional>

#include "cslab/field.hpp"

namespace cslab {

struct Interval {
  double lo = 0.0, hi = 1.0;
  double length() const { return hi - lo; }
};

/// Optional embedding of a chart into R^N, with an analytic Jacobian.
struct Embedding {
  int ambient_dim = 0;
  std::function<Point(const Point&)> value;
  std::function<Matrix<double>(const Point&)> jacobian; // N x d
};

/// A parametrized open-box domain. Evaluation exactly on the boundary is the
/// caller's responsibility; quadrature nodes are interior by construction.
struct Chart {
  int dim = 0;
  std::vector<Interval> domain;
  std::vector<bool> periodic;
  int orientation_sign = +1;
  std::optional<Embedding> embedding;
};

/// A 3-dimensional integration cycle: a chart with the integration domain
/// restricted to a sub-box (fundamental domain) and a covering multiplicity.
struct Cycle3 {
  Chart chart;
  std::array<Interval, 3> restriction;
  double multiplicity = 1.0;
};

inline Cycle3 full_cycle(const Chart& chart, double multiplicity = 1.0) {
  if (chart.dim != 3) throw std::invalid_argument("full_cycle: chart dimension must be 3");
  if (multiplicity <= 0.0) throw std::invalid_argument("full_cycle: multiplicity must be positive");
  Cycle3 c;
  c.chart = chart;
  for (int i = 0; i < 3; ++i) c.restriction[size_t(i)] = chart.domain[size_t(i)];
  c.multiplicity = multiplicity;
  return c;
}

struct QuadratureSpec {
  int order_per_axis = 16;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Deterministic pairwise summation in fixed index order.
template <class S> S pairwise_sum(std::vector<S>& v) {
  if (v.empty()) return S(0);
  std::size_t n = v.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2 == 1) {
      v[half] = v[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return v[0];
}

namespace detail {
struct AxisRule {
  std::vector<double> nodes, weights;
};

/// Per-axis rule: uniform midpoint on periodic axes that span their full
/// period (spectrally accurate there), Gauss-Legendre otherwise. A restricted
/// periodic axis (e.g. a lens fundamental-domain slab) is treated as
/// non-periodic.
inline AxisRule axis_rule(const Interval& box, bool periodic_full, int m) {
  AxisRule r;
  r.nodes.resize(size_t(m));
  r.weights.resize(size_t(m));
  const double len = box.length();
  if (periodic_full) {
    for (int i = 0; i < m; ++i) {
      r.nodes[size_t(i)] = box.lo + (i + 0.5) * len / m;
      r.weights[size_t(i)] = len / m;
    }
  } else {
    std::vector<double> xs, ws;
    gauss_legendre(m, xs, ws);
    for (int i = 0; i < m; ++i) {
      r.nodes[size_t(i)] = box.lo + 0.5 * len * (xs[size_t(i)] + 1.0);
      r.weights[size_t(i)] = 0.5 * len * ws[size_t(i)];
    }
  }
  return r;
}
} // namespace detail

/// Integral of a scalar 3-form field over a 3-cycle:
/// multiplicity x orientation_sign x quadrature sum of the (0,1,2)-coefficient.
/// Node ordering and the pairwise reduction are fixed, so results are
/// bit-stable run to run.
template <class S> S integrate3(const FormField<S>& F, const Cycle3& cycle, const QuadratureSpec& quad) {
  if (cycle.chart.dim != 3) throw std::invalid_argument("integrate3: chart dimension must be 3");
  if (F.shape().dim != 3) throw std::invalid_argument("integrate3: field/chart dimension mismatch");
  if (F.shape().degree != 3) throw std::invalid_argument("integrate3: integrand degree must be 3");
  if (F.shape().rows != 1 || F.shape().cols != 1)
    throw std::invalid_argument("integrate3: integrand must be scalar-valued");
  if (quad.order_per_axis < 2) throw std::invalid_argument("integrate3: order_per_axis must be >= 2");
  if (cycle.multiplicity <= 0.0) throw std::invalid_argument("integrate3: multiplicity must be positive");

  const int m = quad.order_per_axis;
  std::array<detail::AxisRule, 3> rules;
  for (int a = 0; a < 3; ++a) {
    const Interval& box = cycle.restriction[size_t(a)];
    const Interval& dom = cycle.chart.domain[size_t(a)];
    if (box.lo < dom.lo - 1e-12 || box.hi > dom.hi + 1e-12)
      throw std::invalid_argument("integrate3: restriction outside chart domain");
    const bool full = cycle.chart.periodic[size_t(a)] && std::abs(box.length() - dom.length()) < 1e-12;
    rules[size_t(a)] = detail::axis_rule(box, full, m);
  }

  std::vector<S> contributions;
  contributions.reserve(size_t(m) * m * m);
  Point x(3);
  for (int i = 0; i < m; ++i) {
    x[0] = rules[0].nodes[size_t(i)];
    for (int j = 0; j < m; ++j) {
      x[1] = rules[1].nodes[size_t(j)];
      for (int k = 0; k < m; ++k) {
        x[2] = rules[2].nodes[size_t(k)];
        const double w = rules[0].weights[size_t(i)] * rules[1].weights[size_t(j)] * rules[2].weights[size_t(k)];
        contributions.push_back(F.value(x).coeff(0)(0, 0) * S(w));
      }
    }
  }
  S total = pairwise_sum(contributions);
  return total * S(cycle.multiplicity * double(cycle.chart.orientation_sign));
}

} // namespace cslab
