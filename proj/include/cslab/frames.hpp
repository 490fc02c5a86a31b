#pragma once

#include "cslab/chart.hpp"
#include "cslab/hopf.hpp"

namespace cslab {

/// Global frame of a bundle over a chart: a full-column-rank matrix of
/// components per point, either in the chart basis (d x n) or in the
/// coordinates of the chart's ambient embedding (N x n).
struct Frame {
  int rank = 0;
  bool ambient = false;
  std::function<Matrix<double>(const Point&)> comps;
};

/// Metric components in a given frame; symmetric positive definite per point.
/// dg is the optional analytic channel (one matrix per chart axis).
struct MetricField {
  int n = 0;
  std::function<Matrix<double>(const Point&)> g;
  std::function<std::vector<Matrix<double>>(const Point&)> dg;
};

MetricField constant_metric(int n, Matrix<double> g0);

/// e^{2tf} g with exact partials whenever g carries them.
MetricField conformal_scale(const MetricField& base, const ScalarWithGradient& f, double t);

/// Chart-basis components of a frame; ambient frames are converted through
/// the embedding Jacobian by least squares (exact on tangent vectors).
Frame to_chart_frame(const Frame& frame, const Chart& chart);

/// Euclidean Gram-Schmidt over the columns, in fixed column order.
Matrix<double> gram_schmidt(const Matrix<double>& cols);

/// Left-invariant orthonormal frame (I, J, K) on the Hopf chart, in chart
/// components.
Frame hopf_frame_chart();

/// The same frame in ambient R^4 components.
Frame hopf_frame_ambient();

/// Connection 1-form of the Levi-Civita connection of g in the given frame,
/// assembled from the Koszul formula. Frame components are differentiated by
/// central differences with the spec's step; the metric uses its analytic
/// channel when present (and must have one if the analytic backend is
/// requested).
FormField<double> levi_civita_form(const MetricField& g, const Frame& frame, const Chart& chart,
                                   const DiffSpec& spec);

/// Connection induced on a hypersurface by projecting the flat ambient
/// derivative: omega^i_j(d_s) = <E^i, P D_s E_j> with P the tangential
/// projection and E^i the dual frame of the induced metric. The frame must
/// be tangent to the image (checked on interior sample points).
FormField<double> induced_hypersurface_connection(const Chart& chart, const Frame& ambient_frame,
                                                  const DiffSpec& spec);

/// Closed-form first variation of the Levi-Civita connection under the
/// conformal family e^{2tf} g at t = 0:
///   (d/dt) nabla_U V = U(f) V + V(f) U - g(U,V) grad f.
FormField<double> koszul_conformal_variation(const ScalarWithGradient& f, const MetricField& g,
                                             const Frame& frame, const Chart& chart);

} // namespace cslab
