#pragma once

#include <random>

#include "cslab/chart.hpp"
#include "cslab/field.hpp"

namespace cslab {

/// Open box (-1,1)^d, the fuzz-suite playground.
inline Chart box_chart(int dim) {
  Chart c;
  c.dim = dim;
  c.domain.assign(size_t(dim), Interval{-1.0, 1.0});
  c.periodic.assign(size_t(dim), false);
  return c;
}

/// Flat 3-torus [0,2pi)^3; integer-frequency trig fields live on it globally,
/// which makes it the natural closed manifold for Stokes-type checks.
inline Chart torus_chart() {
  Chart c;
  c.dim = 3;
  c.domain.assign(3, Interval{0.0, 2.0 * 3.141592653589793238462643383279502884});
  c.periodic.assign(3, true);
  return c;
}

/// Seeded random field with trig-polynomial entries (coefficients bounded
/// by 1) and a full analytic channel.
template <class S>
FormField<S> random_form_field(std::mt19937_64& rng, FieldShape shape, const RandomFieldOptions& opt = {}) {
  const auto& tuples = index_tuples(shape.dim, shape.degree);
  std::vector<std::vector<TrigPoly<S>>> entries(tuples.size());
  for (auto& per : entries) {
    per.reserve(size_t(shape.rows * shape.cols));
    for (int e = 0; e < shape.rows * shape.cols; ++e) per.push_back(random_trig_poly<S>(rng, shape.dim, opt));
  }
  return analytic_field<S>(shape, std::move(entries));
}

/// Uniform random interior point of a chart, away from the boundary on
/// non-periodic axes.
inline Point random_chart_point(std::mt19937_64& rng, const Chart& chart, double margin = 0.05) {
  Point x(size_t(chart.dim));
  for (int a = 0; a < chart.dim; ++a) {
    const Interval& box = chart.domain[size_t(a)];
    const double pad = chart.periodic[size_t(a)] ? 0.0 : margin * box.length();
    std::uniform_real_distribution<double> u(box.lo + pad, box.hi - pad);
    x[size_t(a)] = u(rng);
  }
  return x;
}

} // namespace cslab
