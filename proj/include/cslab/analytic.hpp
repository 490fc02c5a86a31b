#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cslab/matrix.hpp"

namespace cslab {

using Point = std::vector<double>;

/// One separable factor of a term: 1, t^n, cos(a t + phi) or sin(a t + phi).
/// The family is closed under differentiation, which is all the analytic
/// channel needs; there is no symbolic simplification.
struct Factor {
  enum Kind { One, Power, Cos, Sin } kind = One;
  int exponent = 0;
  double freq = 0.0, phase = 0.0;

  double eval(double t) const {
    switch (kind) {
      case One: return 1.0;
      case Power: {
        double v = 1.0;
        for (int i = 0; i < exponent; ++i) v *= t;
        return v;
      }
      case Cos: return std::cos(freq * t + phase);
      case Sin: return std::sin(freq * t + phase);
    }
    return 1.0;
  }
};

template <class S> struct Term {
  S coeff{};
  std::vector<Factor> factors; // one per axis

  double shape_eval(const Point& x) const {
    double v = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) v *= factors[i].eval(x[i]);
    return v;
  }
};

/// Scalar function R^dim -> S given as a sum of separable trig/power terms.
/// partial() is exact and returns another TrigPoly, so derivatives of any
/// order stay available.
template <class S> class TrigPoly {
public:
  TrigPoly() = default;
  explicit TrigPoly(int dim) : dim_(dim) {}
  TrigPoly(int dim, std::vector<Term<S>> terms) : dim_(dim), terms_(std::move(terms)) {}

  static TrigPoly constant(int dim, S c) {
    Term<S> t;
    t.coeff = c;
    t.factors.assign(size_t(dim), Factor{});
    return TrigPoly(dim, {t});
  }

  int dim() const { return dim_; }
  const std::vector<Term<S>>& terms() const { return terms_; }

  S eval(const Point& x) const {
    S acc(0);
    for (const auto& t : terms_) acc += t.coeff * S(t.shape_eval(x));
    return acc;
  }

  TrigPoly partial(int axis) const {
    std::vector<Term<S>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      const Factor& f = t.factors[size_t(axis)];
      Term<S> dt = t;
      switch (f.kind) {
        case Factor::One:
          continue;
        case Factor::Power:
          if (f.exponent == 0) continue;
          dt.coeff = t.coeff * S(double(f.exponent));
          dt.factors[size_t(axis)].exponent = f.exponent - 1;
          if (dt.factors[size_t(axis)].exponent == 0) dt.factors[size_t(axis)] = Factor{};
          break;
        case Factor::Cos:
          dt.coeff = t.coeff * S(-f.freq);
          dt.factors[size_t(axis)].kind = Factor::Sin;
          break;
        case Factor::Sin:
          dt.coeff = t.coeff * S(f.freq);
          dt.factors[size_t(axis)].kind = Factor::Cos;
          break;
      }
      out.push_back(std::move(dt));
    }
    return TrigPoly(dim_, std::move(out));
  }

  TrigPoly& operator+=(const TrigPoly& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
  }

private:
  int dim_ = 0;
  std::vector<Term<S>> terms_;
};

namespace rng_detail {
template <class S> S random_coeff(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return S(u(rng));
}
template <> inline Complex random_coeff<Complex>(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng), im = u(rng);
  return Complex(re, im);
}
} // namespace rng_detail

struct RandomFieldOptions {
  int max_terms = 2;
  int max_freq = 2;       // integer frequencies keep [0,2pi]-periodic charts honest
  bool use_powers = false; // powers up to 2 for "polynomial" fields on box charts
};

/// Seeded random trig polynomial with coefficients bounded by 1.
template <class S>
TrigPoly<S> random_trig_poly(std::mt19937_64& rng, int dim, const RandomFieldOptions& opt = {}) {
  std::uniform_int_distribution<int> nterms(1, opt.max_terms);
  std::uniform_int_distribution<int> kind(0, opt.use_powers ? 3 : 2);
  std::uniform_int_distribution<int> freq(1, opt.max_freq);
  std::uniform_int_distribution<int> expo(1, 2);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  std::vector<Term<S>> terms;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Term<S> term;
    term.coeff = rng_detail::random_coeff<S>(rng);
    term.factors.resize(size_t(dim));
    for (int a = 0; a < dim; ++a) {
      Factor f;
      switch (kind(rng)) {
        case 0: f.kind = Factor::One; break;
        case 1:
          f.kind = Factor::Cos;
          f.freq = double(freq(rng));
          f.phase = phase(rng);
          break;
        case 2:
          f.kind = Factor::Sin;
          f.freq = double(freq(rng));
          f.phase = phase(rng);
          break;
        default:
          f.kind = Factor::Power;
          f.exponent = expo(rng);
          break;
      }
      term.factors[size_t(a)] = f;
    }
    terms.push_back(std::move(term));
  }
  return TrigPoly<S>(dim, std::move(terms));
}

} // namespace cslab
