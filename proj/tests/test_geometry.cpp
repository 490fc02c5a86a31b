#include "doctest.h"

#include <numbers>

#include "cslab/frames.hpp"
#include "test_support.hpp"

using namespace cslab;
using namespace cslab::testing;

namespace {
constexpr double kPi = std::numbers::pi;

Point random_sphere_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ueta(0.1, 1.45), uxi(0.0, 6.28);
  return {ueta(rng), uxi(rng), uxi(rng)};
}
} // namespace

TEST_SUITE("geometry") {

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  double total = 0.0, x10 = 0.0;
  for (int i = 0; i < 6; ++i) {
    total += w[size_t(i)];
    x10 += w[size_t(i)] * std::pow(x[size_t(i)], 10);
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13)); // degree 10 < 2*6
  for (double xi : x) CHECK(std::abs(xi) < 1.0);
}

TEST_CASE("hopf chart embedding") {
  // eta = pi/4, xi = 0 lands on (1 + j)/sqrt(2)
  const Quaternion q = hopf_point({kPi / 4.0, 0.0, 0.0});
  CHECK(q.a == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(q.c == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(q.b == 0.0);
  CHECK(q.d == 0.0);
  std::mt19937_64 rng(301);
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_sphere_point(rng);
    CHECK(std::abs(hopf_point(x).norm() - 1.0) < 1e-14);
  }
}

TEST_CASE("round volume integrates to 2 pi^2 and is positively oriented") {
  const double v = integrate3(round_volume_form(), full_cycle(hopf_chart()), QuadratureSpec{16});
  CHECK(std::abs(v - 2.0 * kPi * kPi) < 1e-10);
  CHECK(v > 0.0);
}

TEST_CASE("volume form matches the outward-normal-first determinant convention") {
  std::mt19937_64 rng(302);
  const FormField<double> vol = round_volume_form();
  for (int i = 0; i < 50; ++i) {
    const Point x = random_sphere_point(rng);
    CHECK(vol.value(x).coeff(0)(0, 0) ==
          doctest::Approx(outward_volume_coefficient(x)).epsilon(1e-12));
  }
}

TEST_CASE("left-invariant frame") {
  // at q = 1 the columns are i, j, k
  const Matrix<double> at_one = left_invariant_frame_ambient({0.0, 0.0, 0.0});
  Matrix<double> expect(4, 3);
  expect(1, 0) = expect(2, 1) = expect(3, 2) = 1.0;
  CHECK(max_abs_diff(at_one, expect) < 1e-15);

  std::mt19937_64 rng(303);
  for (int i = 0; i < 50; ++i) {
    const Point x = random_sphere_point(rng);
    const Matrix<double> E = left_invariant_frame_ambient(x);
    // orthonormal columns (the embedding-induced metric Gram matrix is Id)
    CHECK(max_abs_diff(E.transpose() * E, Matrix<double>::identity(3)) < 1e-13);
    // left invariance through the quaternion product oracle
    const Quaternion q0 = hopf_point(x);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Quaternion q1{u(rng), u(rng), u(rng), u(rng)};
    q1 = q1 * (1.0 / q1.norm());
    const Quaternion units[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    for (int c = 0; c < 3; ++c) {
      const Quaternion translated = quat_mul(quat_mul(q1, q0), units[c]);
      const Quaternion pushed =
          quat_mul(q1, Quaternion{E(0, c), E(1, c), E(2, c), E(3, c)});
      CHECK((translated - pushed).norm() < 1e-13);
    }
  }
}

TEST_CASE("chart components of the frame invert the embedding Jacobian") {
  std::mt19937_64 rng(304);
  const Chart chart = hopf_chart();
  for (int i = 0; i < 30; ++i) {
    const Point x = random_sphere_point(rng);
    const Matrix<double> J = chart.embedding->jacobian(x);
    CHECK(max_abs_diff(J * left_invariant_frame_chart(x), left_invariant_frame_ambient(x)) < 1e-12);
  }
}

TEST_CASE("lens cycles scale the volume") {
  const FormField<double> vol = round_volume_form();
  const QuadratureSpec quad{16};
  CHECK(std::abs(integrate3(vol, lens_cycle({1, 1, 1}), quad) - 2.0 * kPi * kPi) < 1e-10);
  CHECK(std::abs(integrate3(vol, lens_cycle({2, 1, 1}), quad) - kPi * kPi) < 1e-10);
  CHECK(std::abs(integrate3(vol, lens_cycle({5, 1, 2}), quad) - 2.0 * kPi * kPi / 5.0) < 1e-10);
  CHECK_THROWS_AS((void)lens_cycle({4, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS((void)lens_cycle({6, 3, 2}), std::invalid_argument);
}

TEST_CASE("integral of an exact form over a closed manifold vanishes") {
  std::mt19937_64 rng(305);
  const DiffSpec spec = analytic_spec();
  for (int t = 0; t < 5; ++t) {
    const FormField<double> g2 = random_form_field<double>(rng, {3, 2, 1, 1});
    const double v = integrate3(exterior_derivative(g2, spec), full_cycle(torus_chart()), QuadratureSpec{16});
    CHECK(std::abs(v) < 1e-8);
  }
}

TEST_CASE("quadrature convergence of the artifact integrands") {
  const FormField<double> mu3 =
      trace(wedge(wedge(maurer_cartan(sphere_right_rep_real()), maurer_cartan(sphere_right_rep_real())),
                  maurer_cartan(sphere_right_rep_real())));
  const Cycle3 cycle = full_cycle(hopf_chart());
  const double a12 = integrate3(mu3, cycle, QuadratureSpec{12});
  const double a24 = integrate3(mu3, cycle, QuadratureSpec{24});
  CHECK(std::abs(a12 - a24) < 1e-9);
  const double v12 = integrate3(round_volume_form(), cycle, QuadratureSpec{12});
  const double v24 = integrate3(round_volume_form(), cycle, QuadratureSpec{24});
  CHECK(std::abs(v12 - v24) < 1e-9);
}

TEST_CASE("integrate3 contract errors") {
  std::mt19937_64 rng(306);
  const FormField<double> two_form = random_form_field<double>(rng, {3, 2, 1, 1});
  CHECK_THROWS_AS((void)integrate3(two_form, full_cycle(hopf_chart()), QuadratureSpec{8}),
                  std::invalid_argument);
  const FormField<double> matrix_valued = random_form_field<double>(rng, {3, 3, 2, 2});
  CHECK_THROWS_AS((void)integrate3(matrix_valued, full_cycle(hopf_chart()), QuadratureSpec{8}),
                  std::invalid_argument);
  Cycle3 bad = full_cycle(hopf_chart());
  bad.restriction[0] = Interval{-1.0, 1.0};
  const FormField<double> vol = round_volume_form();
  CHECK_THROWS_AS((void)integrate3(vol, bad, QuadratureSpec{8}), std::invalid_argument);
  Cycle3 nonpos = full_cycle(hopf_chart());
  nonpos.multiplicity = 0.0;
  CHECK_THROWS_AS((void)integrate3(vol, nonpos, QuadratureSpec{8}), std::invalid_argument);
}

TEST_CASE("levi_civita_form on the round sphere reproduces the structure constants") {
  // oracle: nabla_X Y = [X,Y]/2 for the bi-invariant metric, so in the frame
  // (I,J,K) the connection matrices are half the bracket tables, computed
  // here from quaternion products
  const Quaternion units[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  Matrix<double> expected[3] = {Matrix<double>(3, 3), Matrix<double>(3, 3), Matrix<double>(3, 3)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Quaternion comm =
          quat_mul(units[i], units[j]) - quat_mul(units[j], units[i]);
      expected[i](0, j) = 0.5 * comm.b;
      expected[i](1, j) = 0.5 * comm.c;
      expected[i](2, j) = 0.5 * comm.d;
    }

  const MetricField metric = constant_metric(3, Matrix<double>::identity(3));
  const FormField<double> omega = levi_civita_form(metric, hopf_frame_chart(), hopf_chart(), fd_spec());
  std::mt19937_64 rng(307);
  for (int t = 0; t < 10; ++t) {
    const Point x = random_sphere_point(rng);
    const Form<double> w = omega.value(x);
    const Matrix<double> E = left_invariant_frame_chart(x);
    for (int i = 0; i < 3; ++i) {
      const std::vector<std::vector<double>> col{{E(0, i), E(1, i), E(2, i)}};
      CHECK(max_abs_diff(eval_on_vectors(w, col), expected[i]) < 1e-8);
    }
  }
}

TEST_CASE("levi_civita_form of the Euclidean metric in the coordinate frame vanishes") {
  Frame coord;
  coord.rank = 3;
  coord.ambient = false;
  coord.comps = [](const Point&) { return Matrix<double>::identity(3); };
  const MetricField metric = constant_metric(3, Matrix<double>::identity(3));
  const FormField<double> omega = levi_civita_form(metric, coord, box_chart(3), fd_spec());
  std::mt19937_64 rng(308);
  for (int t = 0; t < 10; ++t)
    CHECK(omega.value(random_chart_point(rng, box_chart(3))).max_abs() < 1e-12);
}

TEST_CASE("levi_civita_form is metric and torsion-free for a conformal metric") {
  std::mt19937_64 rng(309);
  const ScalarWithGradient f = random_sphere_scalar(rng);
  const MetricField metric = conformal_scale(constant_metric(3, Matrix<double>::identity(3)), f, 1.0);
  const Chart chart = hopf_chart();
  const Frame frame = hopf_frame_chart();
  const DiffSpec spec = fd_spec();
  const FormField<double> omega = levi_civita_form(metric, frame, chart, spec);
  for (int t = 0; t < 10; ++t) {
    const Point x = random_sphere_point(rng);
    const Matrix<double> E = left_invariant_frame_chart(x);
    const Form<double> w = omega.value(x);
    Matrix<double> gamma[3] = {Matrix<double>(3, 3), Matrix<double>(3, 3), Matrix<double>(3, 3)};
    for (int i = 0; i < 3; ++i) {
      const std::vector<std::vector<double>> col{{E(0, i), E(1, i), E(2, i)}};
      gamma[i] = eval_on_vectors(w, col); // gamma[i](k,j) = Gamma^k_{ij}
    }
    const Matrix<double> G = metric.g(x);
    // metric compatibility: E_k(g_ij) = sum_m Gamma^m_{ki} g_mj + Gamma^m_{kj} g_im,
    // left side by a finite difference along the frame direction
    const double h = 1e-5;
    for (int k = 0; k < 3; ++k) {
      Point xp = x, xm = x;
      for (int s = 0; s < 3; ++s) {
        xp[size_t(s)] += h * E(s, k);
        xm[size_t(s)] -= h * E(s, k);
      }
      Matrix<double> dG = metric.g(xp) - metric.g(xm);
      dG *= 1.0 / (2.0 * h);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double rhs = 0.0;
          for (int m = 0; m < 3; ++m) rhs += gamma[k](m, i) * G(m, j) + gamma[k](m, j) * G(i, m);
          CHECK(std::abs(dG(i, j) - rhs) < 1e-6);
        }
    }
    // torsion-free: Gamma^m_{ij} - Gamma^m_{ji} equals the bracket coordinates
    const double hb = 1e-5;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        Matrix<double> br(3, 1);
        for (int s = 0; s < 3; ++s) {
          double acc = 0.0;
          for (int tdir = 0; tdir < 3; ++tdir) {
            Point xp = x, xm = x;
            xp[size_t(tdir)] += hb;
            xm[size_t(tdir)] -= hb;
            const Matrix<double> Ep = left_invariant_frame_chart(xp);
            const Matrix<double> Em = left_invariant_frame_chart(xm);
            acc += E(tdir, i) * (Ep(s, j) - Em(s, j)) / (2.0 * hb) -
                   E(tdir, j) * (Ep(s, i) - Em(s, i)) / (2.0 * hb);
          }
          br(s, 0) = acc;
        }
        const Matrix<double> coords = solve(E, br);
        for (int m = 0; m < 3; ++m)
          CHECK(std::abs(gamma[i](m, j) - gamma[j](m, i) - coords(m, 0)) < 1e-6);
      }
  }
}

TEST_CASE("constant conformal factors leave the connection unchanged") {
  // f constant: the Koszul variation has no gradient terms, and scaling a
  // metric by a constant does not move its Levi-Civita connection
  ScalarWithGradient f;
  f.dim = 3;
  f.value = [](const Point&) { return 0.37; };
  f.gradient = [](const Point&) { return std::vector<double>(3, 0.0); };
  const MetricField metric = constant_metric(3, Matrix<double>::identity(3));
  const Chart chart = hopf_chart();
  const Frame frame = hopf_frame_chart();
  const FormField<double> wdot = koszul_conformal_variation(f, metric, frame, chart);
  const double dt = 1e-4;
  const FormField<double> wp = levi_civita_form(conformal_scale(metric, f, dt), frame, chart, fd_spec());
  const FormField<double> wm = levi_civita_form(conformal_scale(metric, f, -dt), frame, chart, fd_spec());
  const FormField<double> wdot_fd = linear_combine(1.0 / (2 * dt), wp, -1.0 / (2 * dt), wm);
  std::mt19937_64 rng(313);
  for (int t = 0; t < 10; ++t) {
    const Point x = random_sphere_point(rng);
    CHECK(wdot.value(x).max_abs() < 1e-14);
    CHECK(wdot_fd.value(x).max_abs() < 1e-6);
  }
}

TEST_CASE("group-map derivative channels agree with finite differences of the map") {
  // the analytic dg channel is mandatory for group maps; this pins it to the
  // O(h^2) agreement the field contract asks for
  const GroupMapField<double> G = sphere_adjoint();
  std::mt19937_64 rng(314);
  const double h = 1e-5;
  for (int t = 0; t < 10; ++t) {
    const Point x = random_sphere_point(rng);
    const auto dg = G.dg(x);
    for (int s = 0; s < 3; ++s) {
      Point xp = x, xm = x;
      xp[size_t(s)] += h;
      xm[size_t(s)] -= h;
      Matrix<double> fd = G.g(xp) - G.g(xm);
      fd *= 1.0 / (2.0 * h);
      CHECK(max_abs_diff(fd, dg[size_t(s)]) < 1e-9);
    }
  }
}

TEST_CASE("induced hypersurface connection equals the Levi-Civita connection on the sphere") {
  const Chart chart = hopf_chart();
  const FormField<double> induced = induced_hypersurface_connection(chart, hopf_frame_ambient(), fd_spec());
  const MetricField metric = constant_metric(3, Matrix<double>::identity(3));
  const FormField<double> lc = levi_civita_form(metric, hopf_frame_chart(), chart, fd_spec());
  std::mt19937_64 rng(310);
  for (int t = 0; t < 20; ++t) {
    const Point x = random_sphere_point(rng);
    CHECK(max_abs_diff(induced.value(x), lc.value(x)) < 1e-6);
  }
}

TEST_CASE("flat hyperplane slice with a constant frame has zero connection form") {
  Chart c = box_chart(3);
  Embedding e;
  e.ambient_dim = 4;
  e.value = [](const Point& x) { return Point{x[0], x[1], x[2], 0.5}; };
  e.jacobian = [](const Point&) {
    Matrix<double> J(4, 3);
    J(0, 0) = J(1, 1) = J(2, 2) = 1.0;
    return J;
  };
  c.embedding = e;
  Frame frame;
  frame.rank = 3;
  frame.ambient = true;
  frame.comps = [](const Point&) {
    Matrix<double> E(4, 3);
    E(0, 0) = E(1, 1) = E(2, 2) = 1.0;
    return E;
  };
  const FormField<double> omega = induced_hypersurface_connection(c, frame, fd_spec());
  std::mt19937_64 rng(311);
  for (int t = 0; t < 10; ++t)
    CHECK(omega.value(random_chart_point(rng, box_chart(3))).max_abs() < 1e-12);
}

TEST_CASE("ellipsoid connection is compatible with the induced metric") {
  // the Gram-Schmidt frame is orthonormal for the induced metric, so
  // compatibility reads omega + omega^T = 0
  const std::array<double, 4> axes{1.0, 1.1, 1.2, 1.3};
  Chart c = hopf_chart();
  {
    const Embedding base = *c.embedding;
    Embedding e;
    e.ambient_dim = 4;
    e.value = [base, axes](const Point& x) {
      Point q = base.value(x);
      for (int i = 0; i < 4; ++i) q[size_t(i)] /= axes[size_t(i)];
      return q;
    };
    e.jacobian = [base, axes](const Point& x) {
      Matrix<double> J = base.jacobian(x);
      for (int i = 0; i < 4; ++i)
        for (int s = 0; s < 3; ++s) J(i, s) /= axes[size_t(i)];
      return J;
    };
    c.embedding = e;
  }
  Frame frame;
  frame.rank = 3;
  frame.ambient = true;
  frame.comps = [axes](const Point& x) {
    Matrix<double> E = left_invariant_frame_ambient(x);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) E(i, j) /= axes[size_t(i)];
    return gram_schmidt(E);
  };
  const FormField<double> omega = induced_hypersurface_connection(c, frame, fd_spec());
  std::mt19937_64 rng(312);
  for (int t = 0; t < 20; ++t) {
    const Point x = random_sphere_point(rng);
    const Form<double> w = omega.value(x);
    for (int s = 0; s < 3; ++s)
      CHECK(max_abs_diff(w.coeff(s), scaled_matrix(w.coeff(s).transpose(), -1.0)) < 1e-5);
  }
}

TEST_CASE("a non-tangent frame is rejected") {
  const Chart chart = hopf_chart();
  Frame bad;
  bad.rank = 3;
  bad.ambient = true;
  bad.comps = [](const Point& x) {
    Matrix<double> E = left_invariant_frame_ambient(x);
    const Quaternion q = hopf_point(x);
    E(0, 0) += 0.3 * q.a; // push a normal component into the first column
    E(1, 0) += 0.3 * q.b;
    E(2, 0) += 0.3 * q.c;
    E(3, 0) += 0.3 * q.d;
    return E;
  };
  CHECK_THROWS_AS((void)induced_hypersurface_connection(chart, bad, fd_spec()), std::invalid_argument);
}

TEST_CASE("gram_schmidt rejects rank-deficient columns") {
  Matrix<double> cols(3, 2);
  cols(0, 0) = 1.0;
  cols(0, 1) = 2.0; // second column parallel to the first
  CHECK_THROWS_AS((void)gram_schmidt(cols), std::runtime_error);
}

} // TEST_SUITE
