#pragma once

#include <random>

#include "cslab/form.hpp"
#include "cslab/random_fields.hpp"

namespace cslab::testing {

template <class S> Matrix<S> random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix<S> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if constexpr (std::is_same_v<S, Complex>)
        m(i, j) = Complex(u(rng), u(rng));
      else
        m(i, j) = u(rng);
    }
  return m;
}

template <class S> Form<S> random_form(std::mt19937_64& rng, int dim, int degree, int rows, int cols) {
  Form<S> f(dim, degree, rows, cols);
  for (int r = 0; r < f.coeff_count(); ++r) f.coeff(r) = random_matrix<S>(rng, rows, cols);
  return f;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(static_cast<size_t>(dim), 0.0);
  for (auto& x : v) x = u(rng);
  return v;
}

inline std::vector<std::vector<double>> random_vectors(std::mt19937_64& rng, int count, int dim) {
  std::vector<std::vector<double>> vs;
  vs.reserve(size_t(count));
  for (int i = 0; i < count; ++i) vs.push_back(random_vector(rng, dim));
  return vs;
}

} // namespace cslab::testing
